#include "derivclust/baselines.hpp"

#include <map>
#include <utility>

#include "derivclust/error.hpp"
#include "derivclust/random.hpp"

namespace derivclust {

ClusterAssignment random_baseline(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (n == 0 || k == 0) throw DataError("random baseline needs n >= 1 and k >= 1");
  Rng rng(seed);
  ClusterAssignment out{std::vector<std::size_t>(n), k, std::nullopt};
  for (auto& label : out.labels) label = static_cast<std::size_t>(rng.index(k));
  return out;
}

ClusterAssignment pos_baseline(std::span<const DerivPair> pairs) {
  if (pairs.empty()) throw DataError("POS baseline needs at least one pair");
  std::map<std::pair<std::string, std::string>, std::size_t> ids;
  ClusterAssignment out;
  out.labels.reserve(pairs.size());
  for (const auto& pair : pairs) {
    if (pair.parent_pos.empty() || pair.child_pos.empty()) {
      throw DataError("POS baseline needs POS tags for '" + pair.parent_lemma + "' -> '" +
                      pair.child_lemma + "'");
    }
    const auto [it, inserted] = ids.try_emplace({pair.parent_pos, pair.child_pos}, ids.size());
    out.labels.push_back(it->second);
  }
  out.k = ids.size();
  return out;
}

ClusterAssignment pos_baseline(const DiffDataset& data) {
  std::vector<DerivPair> pairs;
  pairs.reserve(data.size());
  for (const auto& item : data.items()) pairs.push_back(item.pair);
  return pos_baseline(pairs);
}

}  // namespace derivclust
