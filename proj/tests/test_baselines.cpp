#include <cmath>
#include <vector>

#include "doctest.h"

#include "derivclust/baselines.hpp"
#include "derivclust/error.hpp"
#include "derivclust/metrics.hpp"

using namespace derivclust;

TEST_CASE("random baseline: single cluster") {
  const auto a = random_baseline(4, 1, 9);
  CHECK(a.labels == std::vector<std::size_t>{0, 0, 0, 0});
  CHECK(a.k == 1);
}

TEST_CASE("random baseline: uniform frequencies") {
  const std::size_t n = 100'000, k = 21;
  const auto a = random_baseline(n, k, 3);
  std::vector<std::size_t> freq(k);
  for (auto l : a.labels) {
    REQUIRE(l < k);
    ++freq[l];
  }
  const double p = 1.0 / static_cast<double>(k);
  const double mean = static_cast<double>(n) * p;
  const double sd = std::sqrt(static_cast<double>(n) * p * (1 - p));
  for (auto f : freq) CHECK(std::abs(static_cast<double>(f) - mean) <= 3 * sd);
}

TEST_CASE("random baseline: deterministic per seed") {
  CHECK(random_baseline(500, 7, 11).labels == random_baseline(500, 7, 11).labels);
  CHECK(random_baseline(500, 7, 11).labels != random_baseline(500, 7, 12).labels);
  CHECK_THROWS_AS(random_baseline(3, 0, 1), DataError);
}

TEST_CASE("pos baseline: keys numbered by first appearance") {
  const std::vector<DerivPair> pairs{make_pair("a", "b", "V", "A"), make_pair("c", "d", "V", "A"),
                                     make_pair("e", "f", "V", "N")};
  const auto a = pos_baseline(pairs);
  CHECK(a.labels == std::vector<std::size_t>{0, 0, 1});
  CHECK(a.k == 2);
  CHECK_THROWS_AS(pos_baseline(std::vector<DerivPair>{make_pair("a", "b", "", "A")}), DataError);
}

TEST_CASE("pos baseline: complete when classes own distinct keys") {
  const char* tags[] = {"N", "V", "A", "D"};
  std::vector<DerivPair> pairs;
  std::vector<std::string> classes;
  for (int i = 0; i < 40; ++i) {
    const int c = (i * 7) % 5;
    pairs.push_back(make_pair("p" + std::to_string(i), "c" + std::to_string(i), tags[c % 4], tags[c / 4]));
    classes.push_back("class" + std::to_string(c));
  }
  const auto a = pos_baseline(pairs);
  const auto m = homogeneity_completeness_v(contingency(classes, a));
  CHECK(m.completeness == 1.0);

  std::vector<DerivPair> reversed(pairs.rbegin(), pairs.rend());
  const auto b = pos_baseline(reversed);
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t j = 0; j < pairs.size(); ++j)
      CHECK((a.labels[i] == a.labels[j]) == (b.labels[pairs.size() - 1 - i] == b.labels[pairs.size() - 1 - j]));
}
