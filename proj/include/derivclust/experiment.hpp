#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "derivclust/cluster.hpp"
#include "derivclust/embeddings.hpp"
#include "derivclust/metrics.hpp"

namespace derivclust {

// agg is Ward over Euclidean distances, agg_cos Ward over cosine distances and
// agg_cos_avg average linkage over cosine distances.
enum class Method { kmeans, agg, agg_cos, agg_cos_avg, random, pos };

std::string_view to_string(Method method);
Method parse_method(std::string_view name);

struct ExperimentConfig {
  Method method = Method::kmeans;
  std::size_t k = 21;
  std::size_t runs = 10;
  bool normalize = true;
  std::optional<std::size_t> sample_per_class;
  std::size_t min_freq = 5;
  std::size_t min_type_count = 250;
  std::uint64_t seed = 0;
  // Not part of the config file; set from the command line.
  unsigned threads = 1;
};

// Flat `key = value` lines; '#' starts a comment line. Unknown or repeated keys
// and bad values throw DataError naming the key.
ExperimentConfig parse_experiment_config(std::istream& in);
void write_experiment_config(std::ostream& out, const ExperimentConfig& cfg);

// Run r uses seed + r. Sampling draws from 2 * run_seed + 1, clustering from 2 * run_seed.
constexpr std::uint64_t run_seed(std::uint64_t seed, std::size_t run) { return seed + run; }
constexpr std::uint64_t sampling_seed(std::uint64_t run_seed) { return run_seed * 2 + 1; }
constexpr std::uint64_t clustering_seed(std::uint64_t run_seed) { return run_seed * 2; }

// Exactly per_class items of every class, drawn without replacement and kept in
// their original order. Throws DataError naming a class that is too small.
DiffDataset balanced_sample(const DiffDataset& data, std::size_t per_class, std::uint64_t seed);

// One invocation of the configured method.
ClusterAssignment run_method(const DiffDataset& data, const ExperimentConfig& cfg, std::uint64_t seed);

struct ClassAggregate {
  // Mean over the runs in which the class was predicted at all.
  std::optional<double> precision;
  std::size_t precision_runs = 0;
  double recall = 0;
};

struct AggregateReport {
  Method method = Method::kmeans;
  std::size_t k = 0;
  std::vector<EvalReport> runs;
  double h = 0;
  double c = 0;
  double v = 0;
  double accuracy = 0;
  double cls_assigned = 0;
  std::map<std::string, ClassAggregate> per_class;
};

AggregateReport aggregate(Method method, std::size_t k, std::vector<EvalReport> runs);

// Clusters `data` as given; vector normalization happens when the data is built.
AggregateReport run_experiment(const DiffDataset& data, const ExperimentConfig& cfg);

inline constexpr std::array<std::size_t, 5> kDefaultSweep{15, 20, 21, 22, 25};

std::vector<AggregateReport> sweep_clusters(const DiffDataset& data, const ExperimentConfig& cfg,
                                            std::span<const std::size_t> ks);

struct SyntheticParams {
  std::size_t n_classes = 21;
  std::size_t per_class = 250;
  std::size_t dim = 64;
  double sigma = 0.05;
  std::uint64_t seed = 0;
  // Each item is scaled by a factor drawn log-uniformly from [scale_min, scale_max].
  double scale_min = 1.0;
  double scale_max = 1.0;
};

// Unit class directions with pairwise cosine <= 0.5 plus isotropic Gaussian
// noise. Class i is labelled "class00", "class01", ... and carries the i-th of
// eight POS pairs, cycling.
DiffDataset gen_synthetic(const SyntheticParams& params);

}  // namespace derivclust
