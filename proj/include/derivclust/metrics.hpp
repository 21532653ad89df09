#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "derivclust/cluster.hpp"

namespace derivclust {

// Joint class x cluster counts. Class rows are sorted lexicographically.
struct ContingencyTable {
  std::vector<std::string> class_labels;
  std::size_t clusters = 0;
  std::vector<std::size_t> counts;  // row-major, classes x clusters
  std::size_t total = 0;

  std::size_t classes() const { return class_labels.size(); }
  std::size_t at(std::size_t cls, std::size_t cluster) const { return counts[cls * clusters + cluster]; }
  std::size_t class_total(std::size_t cls) const;
  std::size_t cluster_total(std::size_t cluster) const;
};

// Throws DataError on length mismatch or a label outside [0, k).
ContingencyTable contingency(std::span<const std::string> classes, const ClusterAssignment& assignment);

struct HomogeneityCompleteness {
  double homogeneity = 0;
  double completeness = 0;
  double v_measure = 0;
};

// Natural-log entropies; h = 1 when there is one class, c = 1 when one cluster
// is used. Throws DataError on an empty table.
HomogeneityCompleteness homogeneity_completeness_v(const ContingencyTable& table);

struct MajorityMapping {
  double accuracy = 0;
  std::size_t cls_assigned = 0;
  // Class row for each cluster; empty clusters map to nothing.
  std::vector<std::optional<std::size_t>> cluster_to_class;
};

// Each non-empty cluster votes for its most frequent class; ties go to the
// lexicographically smallest class label.
MajorityMapping majority_accuracy(const ContingencyTable& table);

struct ClassScore {
  // Unset when no item was predicted as this class.
  std::optional<double> precision;
  double recall = 0;
};

std::map<std::string, ClassScore> per_class_pr(const ContingencyTable& table,
                                               const MajorityMapping& mapping);

struct EvalReport {
  double h = 0;
  double c = 0;
  double v = 0;
  double accuracy = 0;
  std::size_t cls_assigned = 0;
  std::map<std::string, ClassScore> per_class;
};

EvalReport evaluate(std::span<const std::string> classes, const ClusterAssignment& assignment);

}  // namespace derivclust
