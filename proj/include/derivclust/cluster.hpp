#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "derivclust/embeddings.hpp"

namespace derivclust {

// Read-only row-major matrix view.
struct PointView {
  std::span<const double> values;
  std::size_t dim = 1;

  std::size_t size() const { return dim == 0 ? 0 : values.size() / dim; }
  std::span<const double> row(std::size_t i) const { return values.subspan(i * dim, dim); }
};

inline PointView points_of(const DiffDataset& data) { return {data.values(), data.dim()}; }

struct ClusterAssignment {
  std::vector<std::size_t> labels;
  std::size_t k = 0;
  // Within-cluster sum of squared distances to cluster means (k-means only).
  std::optional<double> inertia;
};

struct KMeansConfig {
  std::size_t k = 21;
  std::size_t max_iter = 300;
  // Stop once an iteration improves inertia by at most tol * previous inertia.
  double tol = 1e-6;
  std::uint64_t seed = 0;
  std::size_t restarts = 1;
  unsigned threads = 1;
};

// Per-restart inertia after every assignment step.
struct KMeansTrace {
  std::vector<std::vector<double>> inertia;
};

// Lloyd iterations from k-means++ seeds; the restart with the lowest inertia wins.
// Ties in nearest-centroid assignment go to the lowest centroid index. A centroid
// left without points is moved onto the point farthest from its own centroid.
ClusterAssignment kmeans(PointView points, const KMeansConfig& cfg, KMeansTrace* trace = nullptr);
ClusterAssignment kmeans(const DiffDataset& data, const KMeansConfig& cfg);

double squared_euclidean(std::span<const double> a, std::span<const double> b);
// 1 - cos(a, b); both vectors must be nonzero.
double cosine_distance(std::span<const double> a, std::span<const double> b);

enum class Metric { euclidean, cosine };
enum class Linkage { ward, average };

std::string_view to_string(Metric metric);
std::string_view to_string(Linkage linkage);

inline constexpr std::size_t kDefaultAggCap = 50'000;

struct AggConfig {
  std::size_t k = 21;
  Metric metric = Metric::euclidean;
  Linkage linkage = Linkage::ward;
  std::size_t max_items = kDefaultAggCap;
  unsigned threads = 1;
};

// One merge of two clusters, each named by its smallest item index.
struct Merge {
  std::size_t a = 0;
  std::size_t b = 0;
  double height = 0;
  std::size_t size = 0;
};

// n - 1 merges in ascending height order (stable for equal heights).
struct Dendrogram {
  std::size_t n = 0;
  std::vector<Merge> merges;
};

// Nearest-neighbour-chain agglomeration with Lance-Williams updates. Ward runs
// over squared Euclidean distances, or over cosine distances for the cosine
// metric; average linkage runs over plain Euclidean or cosine distances.
// Throws DataError above cfg.max_items or for a zero vector under cosine.
Dendrogram linkage_tree(PointView points, const AggConfig& cfg);

// Applies the first n - k merges. Labels are numbered by first appearance.
std::vector<std::size_t> cut_tree(const Dendrogram& tree, std::size_t k);

ClusterAssignment agglomerative(PointView points, const AggConfig& cfg);
ClusterAssignment agglomerative(const DiffDataset& data, const AggConfig& cfg);

// Renumbers labels so that they appear as 0, 1, 2, ... along the items.
std::vector<std::size_t> relabel_by_first_appearance(std::span<const std::size_t> labels);

}  // namespace derivclust
