#include "derivclust/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "derivclust/error.hpp"

namespace derivclust {

std::size_t ContingencyTable::class_total(std::size_t cls) const {
  std::size_t sum = 0;
  for (std::size_t k = 0; k < clusters; ++k) sum += at(cls, k);
  return sum;
}

std::size_t ContingencyTable::cluster_total(std::size_t cluster) const {
  std::size_t sum = 0;
  for (std::size_t c = 0; c < classes(); ++c) sum += at(c, cluster);
  return sum;
}

ContingencyTable contingency(std::span<const std::string> classes, const ClusterAssignment& assignment) {
  if (classes.size() != assignment.labels.size()) {
    throw DataError("got " + std::to_string(classes.size()) + " class labels for " +
                    std::to_string(assignment.labels.size()) + " cluster labels");
  }
  ContingencyTable table;
  const std::set<std::string> distinct(classes.begin(), classes.end());
  table.class_labels.assign(distinct.begin(), distinct.end());
  table.clusters = assignment.k;
  table.counts.assign(table.classes() * table.clusters, 0);
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const auto label = assignment.labels[i];
    if (label >= assignment.k) {
      throw DataError("cluster label " + std::to_string(label) + " outside [0, " +
                      std::to_string(assignment.k) + ")");
    }
    const auto row = static_cast<std::size_t>(
        std::lower_bound(table.class_labels.begin(), table.class_labels.end(), classes[i]) -
        table.class_labels.begin());
    ++table.counts[row * table.clusters + label];
  }
  table.total = classes.size();
  return table;
}

namespace {

// H(rows | cols) and H(rows) for a counts matrix given by an accessor.
template <typename At>
std::pair<double, double> conditional_entropy(std::size_t rows, std::size_t cols, double total, At at) {
  double conditional = 0;
  for (std::size_t col = 0; col < cols; ++col) {
    double col_total = 0;
    for (std::size_t r = 0; r < rows; ++r) col_total += static_cast<double>(at(r, col));
    for (std::size_t r = 0; r < rows; ++r) {
      const auto n = static_cast<double>(at(r, col));
      if (n > 0) conditional -= n / total * std::log(n / col_total);
    }
  }
  double marginal = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    double row_total = 0;
    for (std::size_t col = 0; col < cols; ++col) row_total += static_cast<double>(at(r, col));
    if (row_total > 0) marginal -= row_total / total * std::log(row_total / total);
  }
  return {conditional, marginal};
}

}  // namespace

HomogeneityCompleteness homogeneity_completeness_v(const ContingencyTable& table) {
  if (table.total == 0) throw DataError("contingency table is empty");
  const auto total = static_cast<double>(table.total);
  const auto [h_c_given_k, h_c] = conditional_entropy(
      table.classes(), table.clusters, total, [&](std::size_t c, std::size_t k) { return table.at(c, k); });
  const auto [h_k_given_c, h_k] = conditional_entropy(
      table.clusters, table.classes(), total, [&](std::size_t k, std::size_t c) { return table.at(c, k); });

  HomogeneityCompleteness out;
  out.homogeneity = h_c == 0 ? 1.0 : std::clamp(1.0 - h_c_given_k / h_c, 0.0, 1.0);
  out.completeness = h_k == 0 ? 1.0 : std::clamp(1.0 - h_k_given_c / h_k, 0.0, 1.0);
  const double sum = out.homogeneity + out.completeness;
  out.v_measure = sum == 0 ? 0.0 : 2.0 * out.homogeneity * out.completeness / sum;
  return out;
}

MajorityMapping majority_accuracy(const ContingencyTable& table) {
  MajorityMapping out;
  out.cluster_to_class.assign(table.clusters, std::nullopt);
  std::size_t correct = 0;
  std::set<std::size_t> assigned;
  for (std::size_t k = 0; k < table.clusters; ++k) {
    std::size_t best = 0;
    std::size_t best_count = 0;
    // Rows are sorted, so strict '>' keeps the smallest label on ties.
    for (std::size_t c = 0; c < table.classes(); ++c) {
      if (table.at(c, k) > best_count) {
        best_count = table.at(c, k);
        best = c;
      }
    }
    if (best_count == 0) continue;
    out.cluster_to_class[k] = best;
    assigned.insert(best);
    correct += best_count;
  }
  out.cls_assigned = assigned.size();
  out.accuracy = table.total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(table.total);
  return out;
}

std::map<std::string, ClassScore> per_class_pr(const ContingencyTable& table,
                                               const MajorityMapping& mapping) {
  std::map<std::string, ClassScore> out;
  for (std::size_t c = 0; c < table.classes(); ++c) {
    std::size_t predicted = 0;
    std::size_t correct = 0;
    for (std::size_t k = 0; k < table.clusters; ++k) {
      if (mapping.cluster_to_class[k] != c) continue;
      predicted += table.cluster_total(k);
      correct += table.at(c, k);
    }
    ClassScore score;
    if (predicted > 0) score.precision = static_cast<double>(correct) / static_cast<double>(predicted);
    const auto truth = table.class_total(c);
    score.recall = truth == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(truth);
    out.emplace(table.class_labels[c], score);
  }
  return out;
}

EvalReport evaluate(std::span<const std::string> classes, const ClusterAssignment& assignment) {
  const auto table = contingency(classes, assignment);
  const auto hcv = homogeneity_completeness_v(table);
  const auto majority = majority_accuracy(table);
  return {hcv.homogeneity, hcv.completeness, hcv.v_measure, majority.accuracy, majority.cls_assigned,
          per_class_pr(table, majority)};
}

}  // namespace derivclust
