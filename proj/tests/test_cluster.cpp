#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "cluster_support.hpp"

#include "derivclust/cluster.hpp"
#include "derivclust/error.hpp"

using namespace derivclust;
using testing::partition;

namespace {

std::vector<double> random_points(std::mt19937_64& rng, std::size_t n, std::size_t dim) {
  std::normal_distribution<double> g(0, 1);
  std::vector<double> v(n * dim);
  for (auto& x : v) x = g(rng);
  return v;
}

// Tight Gaussian blobs around well-separated centres.
std::vector<double> blobs(std::mt19937_64& rng, std::size_t groups, std::size_t per, std::size_t dim) {
  std::normal_distribution<double> g(0, 0.05);
  std::vector<double> v;
  for (std::size_t c = 0; c < groups; ++c) {
    for (std::size_t i = 0; i < per; ++i) {
      for (std::size_t t = 0; t < dim; ++t) v.push_back((t == c % dim ? 10.0 * (1 + c / dim) : 0.0) + g(rng));
    }
  }
  return v;
}

}  // namespace

TEST_CASE("kmeans: two obvious 1-D groups") {
  const std::vector<double> x{0, 0.1, 10, 10.1};
  KMeansConfig cfg;
  cfg.k = 2;
  const auto result = kmeans(PointView{x, 1}, cfg);
  CHECK(partition(result.labels) == std::set<std::set<std::size_t>>{{0, 1}, {2, 3}});
  REQUIRE(result.inertia);
  CHECK(*result.inertia == doctest::Approx(0.01).epsilon(1e-12));
}

TEST_CASE("kmeans: k equal to n and identical points") {
  const std::vector<double> x{1, 5, 2, 9, 3};
  KMeansConfig cfg;
  cfg.k = 5;
  const auto each = kmeans(PointView{x, 1}, cfg);
  CHECK(partition(each.labels).size() == 5);
  CHECK(*each.inertia == 0);

  const std::vector<double> same(8, 4.2);
  cfg.k = 2;
  const auto flat = kmeans(PointView{same, 2}, cfg);
  CHECK(*flat.inertia == 0);
  CHECK(flat.labels.size() == 4);
}

TEST_CASE("kmeans: argument errors") {
  const std::vector<double> x{1, 2, 3};
  KMeansConfig cfg;
  cfg.k = 4;
  CHECK_THROWS_AS(kmeans(PointView{x, 1}, cfg), DataError);
  cfg.k = 0;
  CHECK_THROWS_AS(kmeans(PointView{x, 1}, cfg), DataError);
  cfg.k = 1;
  CHECK_THROWS_AS(kmeans(PointView{{}, 1}, cfg), DataError);
}

TEST_CASE("kmeans: inertia never increases across iterations") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 20 + rng() % 200;
    const std::size_t dim = 1 + rng() % 6;
    const auto pts = random_points(rng, n, dim);
    KMeansConfig cfg;
    cfg.k = 1 + rng() % 12;
    cfg.seed = rng();
    cfg.tol = 0;
    cfg.restarts = 2;
    KMeansTrace trace;
    const auto result = kmeans(PointView{pts, dim}, cfg, &trace);
    REQUIRE(trace.inertia.size() == 2);
    for (const auto& run : trace.inertia) {
      for (std::size_t i = 1; i < run.size(); ++i) CHECK(run[i] <= run[i - 1] * (1 + 1e-12));
      CHECK(*result.inertia <= run.back() * (1 + 1e-12));
    }
  }
}

TEST_CASE("kmeans: heavy duplicates still fill k clusters") {
  const std::vector<double> x{0, 0, 0, 0, 0, 7, 0, 0, 0, 0, 0, 0, 0, 0, 3};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    KMeansConfig cfg;
    cfg.k = 3;
    cfg.seed = seed;
    const auto r = kmeans(PointView{x, 1}, cfg);
    CHECK(*r.inertia == 0);
    CHECK(partition(r.labels).size() == 3);
  }
}

TEST_CASE("kmeans: result does not depend on input order") {
  std::mt19937_64 rng(2);
  const std::size_t dim = 4;
  const auto pts = blobs(rng, 6, 30, dim);
  const std::size_t n = pts.size() / dim;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<double> shuffled;
  for (auto i : perm) shuffled.insert(shuffled.end(), pts.begin() + i * dim, pts.begin() + (i + 1) * dim);

  KMeansConfig cfg;
  cfg.k = 6;
  cfg.restarts = 5;
  const auto a = kmeans(PointView{pts, dim}, cfg);
  const auto b = kmeans(PointView{shuffled, dim}, cfg);
  std::vector<std::size_t> b_back(n);
  for (std::size_t i = 0; i < n; ++i) b_back[perm[i]] = b.labels[i];
  CHECK(partition(a.labels) == partition(b_back));
}

TEST_CASE("kmeans: same labels for any thread count") {
  std::mt19937_64 rng(3);
  const std::size_t dim = 16;
  const auto pts = random_points(rng, 5000, dim);
  KMeansConfig cfg;
  cfg.k = 21;
  cfg.seed = 99;
  cfg.threads = 1;
  const auto one = kmeans(PointView{pts, dim}, cfg);
  cfg.threads = 8;
  const auto eight = kmeans(PointView{pts, dim}, cfg);
  CHECK(one.labels == eight.labels);
  CHECK(*one.inertia == *eight.inertia);
  const auto again = kmeans(PointView{pts, dim}, cfg);
  CHECK(again.labels == eight.labels);
}

TEST_CASE("agglomerative: four corners") {
  const std::vector<double> x{0, 0, 0, 1, 10, 0, 10, 1};
  AggConfig cfg;
  cfg.k = 2;
  const auto r = agglomerative(PointView{x, 2}, cfg);
  CHECK(r.labels == std::vector<std::size_t>{0, 0, 1, 1});
  cfg.k = 4;
  CHECK(agglomerative(PointView{x, 2}, cfg).labels == std::vector<std::size_t>{0, 1, 2, 3});
}

TEST_CASE("agglomerative: cosine groups antipodal copies") {
  const std::vector<double> x{1, 0, -1, 0, 1, 0, -1, 0};
  AggConfig cfg;
  cfg.k = 2;
  cfg.metric = Metric::cosine;
  CHECK(agglomerative(PointView{x, 2}, cfg).labels == std::vector<std::size_t>{0, 1, 0, 1});
  cfg.linkage = Linkage::average;
  CHECK(agglomerative(PointView{x, 2}, cfg).labels == std::vector<std::size_t>{0, 1, 0, 1});
}

TEST_CASE("agglomerative: errors") {
  const std::vector<double> x{1, 0, 0, 0, 0, 1};
  AggConfig cfg;
  cfg.k = 2;
  cfg.metric = Metric::cosine;
  CHECK_THROWS_WITH_AS(agglomerative(PointView{x, 2}, cfg),
                       "cosine distance undefined for zero vector at item 1", DataError);
  cfg.metric = Metric::euclidean;
  cfg.max_items = 2;
  CHECK_THROWS_AS(agglomerative(PointView{x, 2}, cfg), DataError);
  cfg.max_items = kDefaultAggCap;
  cfg.k = 4;
  CHECK_THROWS_AS(agglomerative(PointView{x, 2}, cfg), DataError);
}

TEST_CASE("agglomerative: matches the naive reference") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + rng() % 40;
    const std::size_t dim = 1 + rng() % 8;
    const auto pts = random_points(rng, n, dim);
    const PointView view{pts, dim};
    for (auto [metric, linkage] : {std::pair{Metric::euclidean, Linkage::ward}, std::pair{Metric::cosine, Linkage::ward},
                                   std::pair{Metric::euclidean, Linkage::average},
                                   std::pair{Metric::cosine, Linkage::average}}) {
      AggConfig cfg;
      cfg.metric = metric;
      cfg.linkage = linkage;
      const auto tree = linkage_tree(view, cfg);
      const auto naive = oracle::agglomerate(testing::distance_matrix(view, metric, linkage), linkage == Linkage::ward);
      CHECK(testing::same_tree(tree, naive));
    }
  }
}

TEST_CASE("agglomerative: ward heights are non-decreasing") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t dim = 3;
    const auto pts = random_points(rng, 50, dim);
    AggConfig cfg;
    const auto tree = linkage_tree(PointView{pts, dim}, cfg);
    for (std::size_t i = 1; i < tree.merges.size(); ++i) {
      CHECK(tree.merges[i].height >= tree.merges[i - 1].height);
    }
    CHECK(tree.merges.back().size == 50);
  }
}

TEST_CASE("relabel by first appearance") {
  const std::vector<std::size_t> labels{7, 7, 2, 9, 2};
  CHECK(relabel_by_first_appearance(labels) == std::vector<std::size_t>{0, 0, 1, 2, 1});
}
