#include "derivclust/pipeline.hpp"

#include <ctime>
#include <istream>
#include <ostream>
#include <set>

#include "derivclust/error.hpp"
#include "derivclust/report.hpp"
#include "derivclust/textio.hpp"
#include "derivclust/utf8.hpp"

namespace derivclust {

namespace {

DerivPair pair_from_fields(std::size_t line_no, std::span<const std::string_view> f) {
  if (f[4] != "0" && f[4] != "1") throw ParseError(line_no, "degenerate flag must be 0 or 1");
  auto pair = make_pair(std::string(f[0]), std::string(f[1]), std::string(f[2]), std::string(f[3]));
  if (pair.degenerate != (f[4] == "1")) throw ParseError(line_no, "degenerate flag disagrees with the lemmata");
  return pair;
}

void write_pair_columns(std::ostream& out, const DerivPair& p) {
  out << p.parent_lemma << '\t' << p.child_lemma << '\t' << p.parent_pos << '\t' << p.child_pos << '\t'
      << (p.degenerate ? 1 : 0);
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

void write_pairs(std::ostream& out, const std::vector<DerivPair>& pairs) {
  out << stage_header("pairs") << '\n';
  for (const auto& p : pairs) {
    write_pair_columns(out, p);
    out << '\n';
  }
}

std::vector<DerivPair> read_pairs(std::istream& in) {
  expect_stage_header(in, "pairs");
  std::vector<DerivPair> pairs;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = utf8::split(line, '\t');
    if (fields.size() != 5) throw ParseError(line_no, "expected 5 tab-separated columns");
    pairs.push_back(pair_from_fields(line_no, fields));
  }
  return pairs;
}

void write_annotated(std::ostream& out, const std::vector<AnnotatedPair>& rows) {
  out << stage_header("signatures") << '\n';
  for (const auto& row : rows) {
    write_pair_columns(out, row.pair);
    out << '\t' << row.signature << '\t' << row.cls << '\n';
  }
}

std::vector<AnnotatedPair> read_annotated(std::istream& in) {
  expect_stage_header(in, "signatures");
  std::vector<AnnotatedPair> rows;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = utf8::split(line, '\t');
    if (fields.size() != 7) throw ParseError(line_no, "expected 7 tab-separated columns");
    if (fields[6].empty()) throw ParseError(line_no, "empty class");
    rows.push_back({pair_from_fields(line_no, fields), std::string(fields[5]), std::string(fields[6])});
  }
  return rows;
}

std::vector<AnnotatedPair> annotate_pairs(const std::vector<DerivPair>& pairs, const ClassMap& map,
                                          std::size_t min_type_count, const FrequencyTable* freq,
                                          double min_freq, SignatureSummary* summary) {
  const auto frequent = [&](const std::string& lemma) {
    const auto it = freq->find(lemma);
    return it != freq->end() && it->second >= min_freq;
  };
  std::vector<DerivPair> counted;
  counted.reserve(pairs.size());
  std::size_t frequency_filtered = 0;
  for (const auto& p : pairs) {
    if (freq != nullptr && (!frequent(p.parent_lemma) || !frequent(p.child_lemma))) {
      ++frequency_filtered;
      continue;
    }
    counted.push_back(p);
  }
  auto all = count_types(counted);
  auto kept = filter_types(all, min_type_count);

  std::vector<AnnotatedPair> rows;
  rows.reserve(pairs.size());
  for (const auto& p : pairs) {
    if (p.degenerate) {
      rows.push_back({p, std::string(kEmptySignature), std::string(kUnmappedClass)});
      continue;
    }
    const auto sig = signature(p);
    auto rendered = sig.render();
    const bool frequent_type = !sig.irregular && kept.counts.contains(rendered);
    std::string cls = frequent_type ? assign_class(sig, map) : std::string(kUnmappedClass);
    rows.push_back({p, std::move(rendered), std::move(cls)});
  }
  if (summary != nullptr) *summary = {std::move(all), std::move(kept), frequency_filtered};
  return rows;
}

ExtractSummary cmd_extract_pairs(const std::string& network_path, const std::string& out_path) {
  auto in = open_input(network_path);
  const auto network = parse_network(in);
  const auto pairs = extract_pairs(network);
  auto out = open_output(out_path);
  write_pairs(out, pairs);
  if (!out) throw IoError("failed writing '" + out_path + "'");
  return {network.node_count(), network.relation_count()};
}

SignatureSummary cmd_signatures(const std::string& pairs_path, const std::string& classmap_path,
                                std::size_t min_type_count, const std::string& out_path,
                                const std::optional<std::string>& freq_path, double min_freq) {
  auto pairs_in = open_input(pairs_path);
  const auto pairs = read_pairs(pairs_in);
  auto map_in = open_input(classmap_path);
  const auto map = load_class_map(map_in);
  std::optional<FrequencyTable> freq;
  if (freq_path) {
    auto freq_in = open_input(*freq_path);
    freq = load_frequencies(freq_in);
  }
  SignatureSummary summary;
  const auto rows = annotate_pairs(pairs, map, min_type_count, freq ? &*freq : nullptr, min_freq, &summary);
  auto out = open_output(out_path);
  write_annotated(out, rows);
  if (!out) throw IoError("failed writing '" + out_path + "'");
  return summary;
}

AggregateReport cmd_evaluate(const EvaluateInputs& inputs, const RunOptions& opts) {
  auto config_in = open_input(inputs.config_path);
  auto cfg = parse_experiment_config(config_in);
  if (opts.seed) cfg.seed = *opts.seed;
  cfg.threads = opts.threads;

  ReportContext ctx;
  std::optional<DiffDataset> data;
  if (inputs.dataset_path) {
    if (inputs.annotated_path || inputs.embeddings_path || inputs.freq_path) {
      throw DataError("--dataset cannot be combined with --pairs, --embeddings or --freq");
    }
    auto in = open_input(*inputs.dataset_path);
    auto raw = read_diff_dataset(in);
    data = cfg.normalize ? normalize_rows(raw) : std::move(raw);
  } else {
    if (!inputs.annotated_path || !inputs.embeddings_path) {
      throw DataError("evaluate needs --pairs and --embeddings, or --dataset");
    }
    auto pairs_in = open_input(*inputs.annotated_path);
    const auto rows = read_annotated(pairs_in);
    auto emb_in = open_input(*inputs.embeddings_path);
    auto table = load_embeddings_text(emb_in).table;
    if (cfg.normalize) table = normalize(table);
    std::optional<FrequencyTable> freq;
    if (inputs.freq_path) {
      auto freq_in = open_input(*inputs.freq_path);
      freq = load_frequencies(freq_in);
    }
    std::vector<DerivPair> pairs;
    std::vector<std::string> classes;
    for (const auto& row : rows) {
      pairs.push_back(row.pair);
      classes.push_back(row.cls);
    }
    auto built = build_diffs(pairs, classes, table, freq ? &*freq : nullptr, static_cast<double>(cfg.min_freq));
    ctx.exclusions = built.excluded;
    data = std::move(built.data);
  }
  if (data->empty()) throw DataError("no items left to cluster");

  ctx.config = cfg;
  ctx.items = data->size();
  if (opts.timestamp) ctx.timestamp = utc_timestamp();

  std::vector<AggregateReport> reports;
  nlohmann::ordered_json json;
  if (inputs.sweep.empty()) {
    reports.push_back(run_experiment(*data, cfg));
    json = report_json(reports.front(), ctx);
  } else {
    reports = sweep_clusters(*data, cfg, inputs.sweep);
    json = sweep_json(reports, ctx);
  }

  const auto& prefix = inputs.out_prefix;
  {
    auto out = open_output(prefix + ".json");
    out << json.dump(2) << '\n';
  }
  {
    auto out = open_output(prefix + ".tsv");
    write_report_tsv(out, reports);
  }
  {
    auto out = open_output(prefix + ".classes.tsv");
    write_class_tsv(out, reports.front());
  }
  if (ctx.exclusions) {
    auto out = open_output(prefix + ".exclusions.tsv");
    write_exclusions_tsv(out, *ctx.exclusions, data->size());
  }
  return reports.front();
}

void cmd_gen_synthetic(const SyntheticParams& params, const std::string& out_path) {
  const auto data = gen_synthetic(params);
  auto out = open_output(out_path);
  write_diff_dataset(out, data);
  if (!out) throw IoError("failed writing '" + out_path + "'");
}

}  // namespace derivclust
