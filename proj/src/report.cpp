#include "derivclust/report.hpp"

#include <cstdio>
#include <ostream>

#include "derivclust/textio.hpp"

namespace derivclust {

namespace {

std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

nlohmann::ordered_json precision_json(const std::optional<double>& p) {
  return p ? nlohmann::ordered_json(round_sig9(*p)) : nlohmann::ordered_json(nullptr);
}

nlohmann::ordered_json config_json(const ExperimentConfig& cfg) {
  nlohmann::ordered_json out;
  out["method"] = std::string(to_string(cfg.method));
  out["k"] = cfg.k;
  out["runs"] = cfg.runs;
  out["normalize"] = cfg.normalize;
  out["sample_per_class"] =
      cfg.sample_per_class ? nlohmann::ordered_json(*cfg.sample_per_class) : nlohmann::ordered_json(nullptr);
  out["min_freq"] = cfg.min_freq;
  out["min_type_count"] = cfg.min_type_count;
  out["seed"] = cfg.seed;
  return out;
}

nlohmann::ordered_json exclusions_json(const ExclusionReport& ex) {
  nlohmann::ordered_json out;
  out["missing_embedding"] = ex.missing_embedding;
  out["low_frequency"] = ex.low_frequency;
  out["unmapped"] = ex.unmapped;
  return out;
}

void add_context(nlohmann::ordered_json& out, const ReportContext& ctx) {
  out["format"] = "derivclust report v1";
  if (ctx.timestamp) out["generated_at"] = *ctx.timestamp;
  out["config"] = config_json(ctx.config);
  out["items"] = ctx.items;
  if (ctx.exclusions) out["exclusions"] = exclusions_json(*ctx.exclusions);
}

void write_row(std::ostream& out, const AggregateReport& report, const std::string& run, double cls,
               double h, double c, double v, double a) {
  out << to_string(report.method) << '\t' << report.k << '\t' << run << '\t' << fixed(cls, 1) << '\t'
      << percent(h) << '\t' << percent(c) << '\t' << percent(v) << '\t' << percent(a) << '\n';
}

}  // namespace

double round_sig9(double value) { return *parse_real(format_real(value)); }

std::string percent(double fraction) { return fixed(100.0 * fraction, 2); }

nlohmann::ordered_json eval_json(const EvalReport& report) {
  nlohmann::ordered_json out;
  out["h"] = round_sig9(report.h);
  out["c"] = round_sig9(report.c);
  out["v"] = round_sig9(report.v);
  out["accuracy"] = round_sig9(report.accuracy);
  out["cls"] = report.cls_assigned;
  auto& per_class = out["per_class"] = nlohmann::ordered_json::object();
  for (const auto& [cls, score] : report.per_class) {
    per_class[cls] = {{"precision", precision_json(score.precision)},
                      {"recall", round_sig9(score.recall)}};
  }
  return out;
}

nlohmann::ordered_json aggregate_json(const AggregateReport& report) {
  nlohmann::ordered_json out;
  out["method"] = std::string(to_string(report.method));
  out["k"] = report.k;
  out["h"] = round_sig9(report.h);
  out["c"] = round_sig9(report.c);
  out["v"] = round_sig9(report.v);
  out["accuracy"] = round_sig9(report.accuracy);
  out["cls"] = round_sig9(report.cls_assigned);
  auto& per_class = out["per_class"] = nlohmann::ordered_json::object();
  for (const auto& [cls, agg] : report.per_class) {
    per_class[cls] = {{"precision", precision_json(agg.precision)},
                      {"precision_runs", agg.precision_runs},
                      {"recall", round_sig9(agg.recall)}};
  }
  auto& runs = out["per_run"] = nlohmann::ordered_json::array();
  for (const auto& run : report.runs) runs.push_back(eval_json(run));
  return out;
}

nlohmann::ordered_json report_json(const AggregateReport& report, const ReportContext& ctx) {
  nlohmann::ordered_json out;
  add_context(out, ctx);
  const auto body = aggregate_json(report);
  for (const auto& [key, value] : body.items()) out[key] = value;
  return out;
}

nlohmann::ordered_json sweep_json(std::span<const AggregateReport> reports, const ReportContext& ctx) {
  nlohmann::ordered_json out;
  add_context(out, ctx);
  auto& sweep = out["sweep"] = nlohmann::ordered_json::array();
  for (const auto& report : reports) sweep.push_back(aggregate_json(report));
  return out;
}

void write_report_tsv(std::ostream& out, std::span<const AggregateReport> reports) {
  out << stage_header("report") << '\n';
  out << "method\tk\trun\tcls\tH\tC\tV\tA\n";
  for (const auto& report : reports) {
    for (std::size_t r = 0; r < report.runs.size(); ++r) {
      const auto& run = report.runs[r];
      write_row(out, report, std::to_string(r), static_cast<double>(run.cls_assigned), run.h, run.c, run.v,
                run.accuracy);
    }
    write_row(out, report, "mean", report.cls_assigned, report.h, report.c, report.v, report.accuracy);
  }
}

void write_class_tsv(std::ostream& out, const AggregateReport& report) {
  out << stage_header("classes") << '\n';
  out << "class\tprecision\trecall\n";
  for (const auto& [cls, agg] : report.per_class) {
    out << cls << '\t' << (agg.precision ? percent(*agg.precision) : std::string("-")) << '\t'
        << percent(agg.recall) << '\n';
  }
}

void write_exclusions_tsv(std::ostream& out, const ExclusionReport& excluded, std::size_t kept) {
  out << stage_header("exclusions") << '\n';
  out << "reason\tcount\n";
  out << "kept\t" << kept << '\n';
  out << "missing embedding\t" << excluded.missing_embedding << '\n';
  out << "low frequency\t" << excluded.low_frequency << '\n';
  out << "unmapped\t" << excluded.unmapped << '\n';
}

}  // namespace derivclust
