#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "oracles.hpp"

#include "derivclust/error.hpp"
#include "derivclust/metrics.hpp"

using namespace derivclust;

namespace {

ClusterAssignment labels(std::vector<std::size_t> l) {
  const auto k = l.empty() ? 1 : *std::max_element(l.begin(), l.end()) + 1;
  return {std::move(l), k, std::nullopt};
}

std::vector<std::string> names(std::initializer_list<const char*> l) { return {l.begin(), l.end()}; }

}  // namespace

TEST_CASE("contingency: counts") {
  auto t = contingency(names({"A", "A", "B", "B"}), labels({0, 0, 1, 1}));
  CHECK(t.counts == std::vector<std::size_t>{2, 0, 0, 2});
  t = contingency(names({"A"}), labels({0}));
  CHECK(t.counts == std::vector<std::size_t>{1});
  t = contingency(names({"A", "B", "A"}), labels({0, 0, 1}));
  CHECK(t.counts == std::vector<std::size_t>{1, 1, 1, 0});
  CHECK(t.total == 3);
  CHECK_THROWS_AS(contingency(names({"A"}), labels({0, 1})), DataError);
  CHECK_THROWS_AS(contingency(names({"A"}), ClusterAssignment{{3}, 2, std::nullopt}), DataError);
}

TEST_CASE("hcv: worked examples") {
  auto m = homogeneity_completeness_v(contingency(names({"A", "A", "B", "C"}), labels({2, 2, 0, 1})));
  CHECK(m.homogeneity == 1);
  CHECK(m.completeness == 1);
  CHECK(m.v_measure == 1);

  m = homogeneity_completeness_v(contingency(names({"A", "A", "B", "B"}), labels({0, 1, 0, 1})));
  CHECK(m.homogeneity == doctest::Approx(0).epsilon(1e-12));
  CHECK(m.completeness == doctest::Approx(0).epsilon(1e-12));
  CHECK(m.v_measure == doctest::Approx(0).epsilon(1e-12));

  m = homogeneity_completeness_v(contingency(names({"A", "A", "B"}), labels({0, 0, 0})));
  CHECK(m.homogeneity == doctest::Approx(0).epsilon(1e-12));
  CHECK(m.completeness == 1);
  CHECK(m.v_measure == doctest::Approx(0).epsilon(1e-12));

  CHECK_THROWS_AS(homogeneity_completeness_v(ContingencyTable{}), DataError);
}

TEST_CASE("majority accuracy and per-class scores") {
  auto t = contingency(names({"A", "A", "B"}), labels({0, 0, 0}));
  auto maj = majority_accuracy(t);
  CHECK(maj.accuracy == doctest::Approx(2.0 / 3));
  CHECK(maj.cls_assigned == 1);
  auto pr = per_class_pr(t, maj);
  CHECK(*pr["A"].precision == doctest::Approx(2.0 / 3));
  CHECK(pr["A"].recall == 1);
  CHECK_FALSE(pr["B"].precision);
  CHECK(pr["B"].recall == 0);

  t = contingency(names({"A", "A", "B", "B"}), labels({0, 1, 0, 1}));
  maj = majority_accuracy(t);
  CHECK(maj.cluster_to_class == std::vector<std::optional<std::size_t>>{0, 0});
  CHECK(maj.accuracy == 0.5);
  CHECK(maj.cls_assigned == 1);

  t = contingency(names({"A", "B", "A"}), labels({0, 0, 1}));
  maj = majority_accuracy(t);
  pr = per_class_pr(t, maj);
  CHECK(*pr["A"].precision == doctest::Approx(2.0 / 3));
  CHECK(pr["A"].recall == 1);
  CHECK_FALSE(pr["B"].precision);
  CHECK(pr["B"].recall == 0);

  t = contingency(names({"x", "y", "z"}), labels({1, 0, 2}));
  maj = majority_accuracy(t);
  CHECK(maj.accuracy == 1);
  CHECK(maj.cls_assigned == 3);
  for (const auto& [cls, score] : per_class_pr(t, maj)) {
    CHECK(*score.precision == 1);
    CHECK(score.recall == 1);
  }
}

TEST_CASE("majority mapping skips empty clusters") {
  const auto t = contingency(names({"A", "B"}), ClusterAssignment{{0, 2}, 4, std::nullopt});
  const auto maj = majority_accuracy(t);
  CHECK_FALSE(maj.cluster_to_class[1]);
  CHECK_FALSE(maj.cluster_to_class[3]);
  CHECK(maj.accuracy == 1);
}

TEST_CASE("metrics: properties on random tables") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n_classes = 1 + rng() % 12;
    const std::size_t k = 1 + rng() % 12;
    const std::size_t n = 1 + rng() % 500;
    std::vector<int> cls(n), clu(n);
    std::vector<std::string> cls_names(n);
    std::vector<std::size_t> clu_labels(n);
    for (std::size_t i = 0; i < n; ++i) {
      cls[i] = static_cast<int>(rng() % n_classes);
      clu[i] = static_cast<int>(rng() % k);
      cls_names[i] = "c" + std::to_string(cls[i]);
      clu_labels[i] = static_cast<std::size_t>(clu[i]);
    }
    const ClusterAssignment assignment{clu_labels, k, std::nullopt};
    const auto report = evaluate(cls_names, assignment);
    const auto ref = oracle::hcv(cls, clu);
    CHECK(report.h == doctest::Approx(ref.h).epsilon(1e-9));
    CHECK(report.c == doctest::Approx(ref.c).epsilon(1e-9));
    CHECK(report.v == doctest::Approx(ref.v).epsilon(1e-9));
    for (double x : {report.h, report.c, report.v, report.accuracy}) {
      CHECK(x >= 0);
      CHECK(x <= 1);
    }

    // Swapping the roles of classes and clusters swaps h and c.
    std::vector<std::string> as_classes(n);
    std::vector<std::size_t> as_clusters(n);
    for (std::size_t i = 0; i < n; ++i) {
      as_classes[i] = "k" + std::to_string(clu[i]);
      as_clusters[i] = static_cast<std::size_t>(cls[i]);
    }
    const auto swapped = evaluate(as_classes, ClusterAssignment{as_clusters, n_classes, std::nullopt});
    CHECK(swapped.h == doctest::Approx(report.c).epsilon(1e-12));
    CHECK(swapped.c == doctest::Approx(report.h).epsilon(1e-12));

    // Renaming clusters changes nothing.
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::size_t> renamed(n);
    for (std::size_t i = 0; i < n; ++i) renamed[i] = perm[clu_labels[i]];
    const auto again = evaluate(cls_names, ClusterAssignment{renamed, k, std::nullopt});
    CHECK(again.h == doctest::Approx(report.h).epsilon(1e-12));
    CHECK(again.c == doctest::Approx(report.c).epsilon(1e-12));
    CHECK(again.accuracy == report.accuracy);
    CHECK(again.cls_assigned == report.cls_assigned);

    // Majority voting never loses to predicting the global majority class.
    std::map<int, std::size_t> freq;
    for (int c : cls) ++freq[c];
    std::size_t top = 0;
    for (auto& [c, f] : freq) top = std::max(top, f);
    CHECK(report.accuracy >= static_cast<double>(top) / static_cast<double>(n) - 1e-15);
  }
}
