#include "derivclust/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "derivclust/error.hpp"
#include "derivclust/parallel.hpp"
#include "derivclust/random.hpp"

namespace derivclust {

namespace {

constexpr std::size_t kChunk = 1024;

struct Pass {
  std::vector<std::size_t> labels;
  std::vector<double> cost;  // squared distance of each point to its centroid
  std::vector<double> sums;  // k x dim
  std::vector<std::size_t> counts;
  double inertia = 0;
};

// Nearest-centroid assignment with chunk-ordered reductions.
void assign(PointView points, const std::vector<double>& centroids, std::size_t k, unsigned threads,
            Pass& pass) {
  const std::size_t n = points.size();
  const std::size_t dim = points.dim;
  const std::size_t chunks = chunk_count(n, kChunk);
  std::vector<double> chunk_sums(chunks * k * dim, 0.0);
  std::vector<std::size_t> chunk_counts(chunks * k, 0);
  std::vector<double> chunk_inertia(chunks, 0.0);

  parallel_chunks(n, kChunk, threads, [&](std::size_t c, std::size_t begin, std::size_t end) {
    double* sums = chunk_sums.data() + c * k * dim;
    std::size_t* counts = chunk_counts.data() + c * k;
    double inertia = 0;
    for (std::size_t i = begin; i < end; ++i) {
      const auto x = points.row(i);
      std::size_t best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < k; ++j) {
        const double d = squared_euclidean(x, {centroids.data() + j * dim, dim});
        if (d < best_d) {
          best_d = d;
          best = j;
        }
      }
      pass.labels[i] = best;
      pass.cost[i] = best_d;
      inertia += best_d;
      ++counts[best];
      double* s = sums + best * dim;
      for (std::size_t t = 0; t < dim; ++t) s[t] += x[t];
    }
    chunk_inertia[c] = inertia;
  });

  pass.inertia = 0;
  std::fill(pass.sums.begin(), pass.sums.end(), 0.0);
  std::fill(pass.counts.begin(), pass.counts.end(), 0);
  for (std::size_t c = 0; c < chunks; ++c) {
    pass.inertia += chunk_inertia[c];
    for (std::size_t j = 0; j < k * dim; ++j) pass.sums[j] += chunk_sums[c * k * dim + j];
    for (std::size_t j = 0; j < k; ++j) pass.counts[j] += chunk_counts[c * k + j];
  }
}

// Greedy k-means++: each step draws 2 + floor(ln k) candidates by D^2 sampling
// and keeps the one giving the lowest potential.
std::vector<double> kmeanspp_seeds(PointView points, std::size_t k, unsigned threads, Rng& rng) {
  const std::size_t n = points.size();
  const std::size_t dim = points.dim;
  const std::size_t trials = 2 + static_cast<std::size_t>(std::log(static_cast<double>(k)));
  std::vector<double> centroids;
  centroids.reserve(k * dim);
  const auto take = [&](std::size_t i) {
    const auto x = points.row(i);
    centroids.insert(centroids.end(), x.begin(), x.end());
  };
  const std::size_t chunks = chunk_count(n, kChunk);
  std::vector<double> chunk_total(chunks);
  // Potential after adding point `cand`, with the per-point minimum written to `out`.
  const auto potential = [&](const std::vector<double>& base, std::size_t cand, std::vector<double>& out) {
    const auto c = points.row(cand);
    parallel_chunks(n, kChunk, threads, [&](std::size_t ch, std::size_t begin, std::size_t end) {
      double total = 0;
      for (std::size_t i = begin; i < end; ++i) {
        out[i] = std::min(base[i], squared_euclidean(points.row(i), c));
        total += out[i];
      }
      chunk_total[ch] = total;
    });
    return std::accumulate(chunk_total.begin(), chunk_total.end(), 0.0);
  };

  const std::size_t first = rng.index(n);
  take(first);
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  double total = potential(nearest, first, nearest);
  std::vector<double> candidate(n), best_candidate(n);
  for (std::size_t c = 1; c < k; ++c) {
    if (total <= 0) {
      take(rng.index(n));
      continue;
    }
    std::size_t best_pick = n;
    double best_total = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < trials; ++t) {
      const double target = rng.uniform() * total;
      double acc = 0;
      std::size_t pick = n;
      std::size_t last_positive = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (nearest[i] <= 0) continue;
        last_positive = i;
        acc += nearest[i];
        if (target < acc) {
          pick = i;
          break;
        }
      }
      if (pick == n) pick = last_positive;
      const double cand_total = potential(nearest, pick, candidate);
      if (cand_total < best_total) {
        best_total = cand_total;
        best_pick = pick;
        best_candidate.swap(candidate);
      }
    }
    take(best_pick);
    nearest.swap(best_candidate);
    total = best_total;
  }
  return centroids;
}

struct RestartResult {
  std::vector<std::size_t> labels;
  double inertia = 0;
};

RestartResult lloyd(PointView points, const KMeansConfig& cfg, Rng& rng, std::vector<double>* trace) {
  const std::size_t n = points.size();
  const std::size_t dim = points.dim;
  const std::size_t k = cfg.k;
  auto centroids = kmeanspp_seeds(points, k, cfg.threads, rng);

  Pass pass{std::vector<std::size_t>(n, 0), std::vector<double>(n, 0.0),
            std::vector<double>(k * dim, 0.0), std::vector<std::size_t>(k, 0), 0};
  std::vector<std::size_t> previous_labels;
  double previous_inertia = std::numeric_limits<double>::infinity();
  for (std::size_t iter = 0; iter < cfg.max_iter; ++iter) {
    assign(points, centroids, k, cfg.threads, pass);
    if (trace != nullptr) trace->push_back(pass.inertia);
    const bool stable = pass.labels == previous_labels;
    const bool small_gain = std::isfinite(previous_inertia) &&
                            previous_inertia - pass.inertia <= cfg.tol * previous_inertia;
    const bool has_empty = std::find(pass.counts.begin(), pass.counts.end(), 0) != pass.counts.end();
    if (!has_empty && (stable || small_gain || pass.inertia == 0)) break;
    previous_labels = pass.labels;
    previous_inertia = pass.inertia;

    for (std::size_t j = 0; j < k; ++j) {
      if (pass.counts[j] == 0) continue;
      for (std::size_t t = 0; t < dim; ++t) {
        centroids[j * dim + t] = pass.sums[j * dim + t] / static_cast<double>(pass.counts[j]);
      }
    }
    if (!has_empty) continue;

    // Distances to the updated centroids decide which points get relocated.
    std::vector<double> far(n);
    for (std::size_t i = 0; i < n; ++i) {
      far[i] = squared_euclidean(points.row(i), {centroids.data() + pass.labels[i] * dim, dim});
    }
    for (std::size_t j = 0; j < k; ++j) {
      if (pass.counts[j] != 0) continue;
      std::size_t pick = 0;
      for (std::size_t i = 1; i < n; ++i) {
        if (far[i] > far[pick]) pick = i;
      }
      const auto x = points.row(pick);
      std::copy(x.begin(), x.end(), centroids.begin() + static_cast<std::ptrdiff_t>(j * dim));
      far[pick] = -1;
    }
  }

  // Score the final labelling against its own cluster means.
  std::vector<double> means(k * dim, 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    if (pass.counts[j] == 0) continue;
    for (std::size_t t = 0; t < dim; ++t) {
      means[j * dim + t] = pass.sums[j * dim + t] / static_cast<double>(pass.counts[j]);
    }
  }
  const std::size_t chunks = chunk_count(n, kChunk);
  std::vector<double> partial(chunks, 0.0);
  parallel_chunks(n, kChunk, cfg.threads, [&](std::size_t c, std::size_t begin, std::size_t end) {
    double sum = 0;
    for (std::size_t i = begin; i < end; ++i) {
      sum += squared_euclidean(points.row(i), {means.data() + pass.labels[i] * dim, dim});
    }
    partial[c] = sum;
  });
  return {std::move(pass.labels), std::accumulate(partial.begin(), partial.end(), 0.0)};
}

}  // namespace

double squared_euclidean(std::span<const double> a, std::span<const double> b) {
  double sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

double cosine_distance(std::span<const double> a, std::span<const double> b) {
  double dot = 0;
  double na = 0;
  double nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  return 1.0 - dot / (std::sqrt(na) * std::sqrt(nb));
}

ClusterAssignment kmeans(PointView points, const KMeansConfig& cfg, KMeansTrace* trace) {
  const std::size_t n = points.size();
  if (n == 0) throw DataError("k-means needs at least one point");
  if (cfg.k == 0) throw DataError("k must be positive");
  if (cfg.k > n) {
    throw DataError("k = " + std::to_string(cfg.k) + " exceeds the number of points (" +
                    std::to_string(n) + ")");
  }
  if (cfg.max_iter == 0 || cfg.restarts == 0) throw DataError("max_iter and restarts must be positive");
  if (!(cfg.tol >= 0)) throw DataError("tol must be non-negative");

  Rng rng(cfg.seed);
  RestartResult best;
  best.inertia = std::numeric_limits<double>::infinity();
  if (trace != nullptr) trace->inertia.clear();
  for (std::size_t r = 0; r < cfg.restarts; ++r) {
    std::vector<double>* restart_trace = nullptr;
    if (trace != nullptr) restart_trace = &trace->inertia.emplace_back();
    auto result = lloyd(points, cfg, rng, restart_trace);
    if (result.inertia < best.inertia) best = std::move(result);
  }
  return {std::move(best.labels), cfg.k, best.inertia};
}

ClusterAssignment kmeans(const DiffDataset& data, const KMeansConfig& cfg) {
  return kmeans(points_of(data), cfg);
}

std::string_view to_string(Metric metric) {
  return metric == Metric::euclidean ? "euclidean" : "cosine";
}

std::string_view to_string(Linkage linkage) { return linkage == Linkage::ward ? "ward" : "average"; }

namespace {

// Strict upper triangle of an n x n symmetric matrix, row-major.
class CondensedMatrix {
 public:
  explicit CondensedMatrix(std::size_t n) : n_(n), values_(n < 2 ? 0 : n * (n - 1) / 2) {}

  double& operator()(std::size_t i, std::size_t j) { return values_[offset(i, j)]; }
  double operator()(std::size_t i, std::size_t j) const { return values_[offset(i, j)]; }

 private:
  std::size_t offset(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    return i * n_ - i * (i + 1) / 2 + (j - i - 1);
  }

  std::size_t n_;
  std::vector<double> values_;
};

double lance_williams(Linkage linkage, double size_i, double size_j, double size_m, double d_im,
                      double d_jm, double d_ij) {
  if (linkage == Linkage::ward) {
    return ((size_i + size_m) * d_im + (size_j + size_m) * d_jm - size_m * d_ij) /
           (size_i + size_j + size_m);
  }
  return (size_i * d_im + size_j * d_jm) / (size_i + size_j);
}

}  // namespace

Dendrogram linkage_tree(PointView points, const AggConfig& cfg) {
  const std::size_t n = points.size();
  if (n == 0) throw DataError("agglomerative clustering needs at least one point");
  if (n > cfg.max_items) {
    throw DataError("agglomerative clustering is capped at " + std::to_string(cfg.max_items) +
                    " items; got " + std::to_string(n));
  }

  std::vector<double> norms(n, 0.0);
  if (cfg.metric == Metric::cosine) {
    for (std::size_t i = 0; i < n; ++i) {
      for (double x : points.row(i)) norms[i] += x * x;
      norms[i] = std::sqrt(norms[i]);
      if (norms[i] == 0) {
        throw DataError("cosine distance undefined for zero vector at item " + std::to_string(i));
      }
    }
  }

  CondensedMatrix dist(n);
  parallel_chunks(n, 64, cfg.threads, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        double d = 0;
        if (cfg.metric == Metric::cosine) {
          d = cosine_distance(points.row(i), points.row(j));
        } else {
          d = squared_euclidean(points.row(i), points.row(j));
          if (cfg.linkage == Linkage::average) d = std::sqrt(d);
        }
        dist(i, j) = d;
      }
    }
  });

  // Slot i holds the cluster whose smallest member is i while active[i].
  std::vector<bool> active(n, true);
  std::vector<std::size_t> size(n, 1);
  std::vector<Merge> merges;
  merges.reserve(n - 1);
  std::vector<std::size_t> chain;
  chain.reserve(n);

  while (merges.size() + 1 < n) {
    if (chain.empty()) {
      chain.push_back(static_cast<std::size_t>(std::find(active.begin(), active.end(), true) - active.begin()));
    }
    std::size_t a = 0;
    std::size_t b = 0;
    while (true) {
      a = chain.back();
      const bool has_prev = chain.size() >= 2;
      const std::size_t prev = has_prev ? chain[chain.size() - 2] : n;
      double best = std::numeric_limits<double>::infinity();
      b = n;
      if (has_prev) {
        best = dist(a, prev);
        b = prev;
      }
      for (std::size_t m = 0; m < n; ++m) {
        if (!active[m] || m == a) continue;
        const double d = dist(a, m);
        if (d < best || (d == best && m < b && b != prev)) {
          best = d;
          b = m;
        }
      }
      if (b == prev) break;
      chain.push_back(b);
    }
    chain.pop_back();
    chain.pop_back();

    const std::size_t lo = std::min(a, b);
    const std::size_t hi = std::max(a, b);
    const double height = dist(lo, hi);
    for (std::size_t m = 0; m < n; ++m) {
      if (!active[m] || m == lo || m == hi) continue;
      dist(lo, m) = lance_williams(cfg.linkage, static_cast<double>(size[lo]),
                                   static_cast<double>(size[hi]), static_cast<double>(size[m]),
                                   dist(lo, m), dist(hi, m), height);
    }
    active[hi] = false;
    size[lo] += size[hi];
    merges.push_back({lo, hi, height, size[lo]});
  }

  std::stable_sort(merges.begin(), merges.end(),
                   [](const Merge& x, const Merge& y) { return x.height < y.height; });
  return {n, std::move(merges)};
}

std::vector<std::size_t> relabel_by_first_appearance(std::span<const std::size_t> labels) {
  constexpr auto kUnseen = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> out(labels.size());
  std::vector<std::size_t> mapping;
  std::size_t next = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto label = labels[i];
    if (label >= mapping.size()) mapping.resize(label + 1, kUnseen);
    if (mapping[label] == kUnseen) mapping[label] = next++;
    out[i] = mapping[label];
  }
  return out;
}

std::vector<std::size_t> cut_tree(const Dendrogram& tree, std::size_t k) {
  const std::size_t n = tree.n;
  if (k == 0 || k > n) {
    throw DataError("cannot cut " + std::to_string(n) + " items into " + std::to_string(k) + " clusters");
  }
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (std::size_t m = 0; m < n - k; ++m) {
    const auto ra = find(tree.merges[m].a);
    const auto rb = find(tree.merges[m].b);
    parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  std::vector<std::size_t> roots(n);
  for (std::size_t i = 0; i < n; ++i) roots[i] = find(i);
  return relabel_by_first_appearance(roots);
}

ClusterAssignment agglomerative(PointView points, const AggConfig& cfg) {
  if (cfg.k == 0 || cfg.k > points.size()) {
    throw DataError("k = " + std::to_string(cfg.k) + " is invalid for " +
                    std::to_string(points.size()) + " points");
  }
  if (points.size() > cfg.max_items) {
    throw DataError("agglomerative clustering is capped at " + std::to_string(cfg.max_items) +
                    " items; got " + std::to_string(points.size()));
  }
  return {cut_tree(linkage_tree(points, cfg), cfg.k), cfg.k, std::nullopt};
}

ClusterAssignment agglomerative(const DiffDataset& data, const AggConfig& cfg) {
  return agglomerative(points_of(data), cfg);
}

}  // namespace derivclust
