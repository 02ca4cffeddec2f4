#pragma once

#include "sparsebn/dag.hpp"
#include "sparsebn/oracle.hpp"

namespace sparsebn {

/// Exhaustive checks over every triple ({x}, Z, {y}) of the universe, so the
/// cost is O(n^2 2^(n-2)) d-separation tests. Throws std::length_error above
/// this many variables.
inline constexpr std::size_t kMaxExhaustiveVariables = 20;

/// Every d-separation of `network` is an independence of `model`.
/// OpenMP-parallel over (x, y) pairs.
bool is_imap(const Dag& network, const IndependenceModel& model);

/// I-map, and deleting any single arc breaks the I-map property.
bool is_minimal_imap(const Dag& network, const IndependenceModel& model);

// Serial reference versions with identical contracts.
bool is_imap_reference(const Dag& network, const IndependenceModel& model);
bool is_minimal_imap_reference(const Dag& network, const IndependenceModel& model);

}  // namespace sparsebn
