#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "derivclust/cluster.hpp"
#include "derivclust/lexnet.hpp"

namespace derivclust {

// Independent uniform labels in [0, k).
ClusterAssignment random_baseline(std::size_t n, std::size_t k, std::uint64_t seed);

// One cluster per distinct (parent POS, child POS) key, numbered by first appearance.
ClusterAssignment pos_baseline(std::span<const DerivPair> pairs);
ClusterAssignment pos_baseline(const DiffDataset& data);

}  // namespace derivclust
