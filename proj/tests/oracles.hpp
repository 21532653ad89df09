// Independent reference implementations used only by the tests.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace oracle {

// Enumerates lengths from long to short and starts from left to right, so the
// first hit is the leftmost-in-a, then leftmost-in-b, maximal common substring.
inline std::tuple<std::u32string, std::size_t, std::size_t> lcs(const std::u32string& a,
                                                                 const std::u32string& b) {
  for (std::size_t len = std::min(a.size(), b.size()); len > 0; --len) {
    for (std::size_t i = 0; i + len <= a.size(); ++i) {
      for (std::size_t j = 0; j + len <= b.size(); ++j) {
        if (a.compare(i, len, b, j, len) == 0) return {a.substr(i, len), i, j};
      }
    }
  }
  return {U"", 0, 0};
}

struct Hcv {
  double h, c, v;
};

// Homogeneity/completeness straight from item labels, in base 2.
inline Hcv hcv(const std::vector<int>& classes, const std::vector<int>& clusters) {
  const double n = static_cast<double>(classes.size());
  std::map<std::pair<int, int>, double> joint;
  std::map<int, double> pc;
  std::map<int, double> pk;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    joint[{classes[i], clusters[i]}] += 1;
    pc[classes[i]] += 1;
    pk[clusters[i]] += 1;
  }
  double h_c = 0, h_k = 0, h_c_k = 0, h_k_c = 0;
  for (auto& [c, cnt] : pc) h_c -= cnt / n * std::log2(cnt / n);
  for (auto& [k, cnt] : pk) h_k -= cnt / n * std::log2(cnt / n);
  for (auto& [ck, cnt] : joint) {
    h_c_k -= cnt / n * std::log2(cnt / pk[ck.second]);
    h_k_c -= cnt / n * std::log2(cnt / pc[ck.first]);
  }
  Hcv out;
  out.h = h_c == 0 ? 1.0 : 1.0 - h_c_k / h_c;
  out.c = h_k == 0 ? 1.0 : 1.0 - h_k_c / h_k;
  out.v = out.h + out.c == 0 ? 0.0 : 2 * out.h * out.c / (out.h + out.c);
  return out;
}

// Minimum within-cluster sum of squares over every partition of the 1-D points
// into exactly k non-empty blocks (restricted growth strings).
inline double kmeans_optimum_1d(const std::vector<double>& x, std::size_t k) {
  const std::size_t n = x.size();
  std::vector<std::size_t> block(n, 0);
  double best = std::numeric_limits<double>::infinity();
  const auto evaluate = [&]() {
    std::vector<double> sum(k, 0), cnt(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      sum[block[i]] += x[i];
      cnt[block[i]] += 1;
    }
    double sse = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double m = sum[block[i]] / cnt[block[i]];
      sse += (x[i] - m) * (x[i] - m);
    }
    best = std::min(best, sse);
  };
  // block[i] <= 1 + max(block[0..i)); recursion over positions.
  const auto rec = [&](auto&& self, std::size_t i, std::size_t used) -> void {
    if (n - i < k - used) return;
    if (i == n) {
      if (used == k) evaluate();
      return;
    }
    for (std::size_t b = 0; b <= used && b < k; ++b) {
      block[i] = b;
      self(self, i + 1, std::max(used, b + 1));
    }
  };
  rec(rec, 0, 0);
  return best;
}

struct NaiveMerge {
  std::set<std::size_t> members;
  double height;
};

// Greedy O(n^3) agglomeration over the full distance matrix: the globally
// closest active pair (lowest (i, j) on ties) merges into slot i.
inline std::vector<NaiveMerge> agglomerate(std::vector<std::vector<double>> d, bool ward) {
  const std::size_t n = d.size();
  std::vector<bool> active(n, true);
  std::vector<double> size(n, 1);
  std::vector<std::set<std::size_t>> members(n);
  for (std::size_t i = 0; i < n; ++i) members[i] = {i};
  std::vector<NaiveMerge> merges;
  for (std::size_t step = 0; step + 1 < n; ++step) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (active[j] && d[i][j] < best) {
          best = d[i][j];
          bi = i;
          bj = j;
        }
      }
    }
    for (std::size_t m = 0; m < n; ++m) {
      if (!active[m] || m == bi || m == bj) continue;
      const double si = size[bi], sj = size[bj], sm = size[m];
      const double updated = ward ? ((si + sm) * d[bi][m] + (sj + sm) * d[bj][m] - sm * best) / (si + sj + sm)
                                  : (si * d[bi][m] + sj * d[bj][m]) / (si + sj);
      d[bi][m] = d[m][bi] = updated;
    }
    active[bj] = false;
    size[bi] += size[bj];
    members[bi].insert(members[bj].begin(), members[bj].end());
    merges.push_back({members[bi], best});
  }
  return merges;
}

}  // namespace oracle
