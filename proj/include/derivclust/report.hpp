#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include "json.hpp"

#include "derivclust/embeddings.hpp"
#include "derivclust/experiment.hpp"
#include "derivclust/metrics.hpp"

namespace derivclust {

// Reals are rounded to 9 significant digits before serialization.
double round_sig9(double value);

// "61.59" for 0.61588...
std::string percent(double fraction);

nlohmann::ordered_json eval_json(const EvalReport& report);
nlohmann::ordered_json aggregate_json(const AggregateReport& report);

struct ReportContext {
  ExperimentConfig config;
  std::size_t items = 0;
  std::optional<ExclusionReport> exclusions;
  std::optional<std::string> timestamp;
};

// Top-level object with the mean h, c, v, accuracy, cls and per_class of the
// run, the config, per-run reports and exclusion counts.
nlohmann::ordered_json report_json(const AggregateReport& report, const ReportContext& ctx);
nlohmann::ordered_json sweep_json(std::span<const AggregateReport> reports, const ReportContext& ctx);

// Table rows "method k cls H C V A" in percent, one per run plus the mean.
void write_report_tsv(std::ostream& out, std::span<const AggregateReport> reports);

// Mean per-class precision and recall in percent; "-" marks an undefined precision.
void write_class_tsv(std::ostream& out, const AggregateReport& report);

void write_exclusions_tsv(std::ostream& out, const ExclusionReport& excluded, std::size_t kept);

}  // namespace derivclust
