#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sparsebn/dag.hpp"

namespace sparsebn {

class InvalidQuery : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The statement "x is d-separated from y by z". x and y must be non-empty and
/// all three sets pairwise disjoint; z may be empty.
struct DsepQuery {
    NodeSet x;
    NodeSet z;
    NodeSet y;
};

/// Throws UnknownNode for indices outside `node_count`, InvalidQuery for empty
/// x/y or overlapping sets.
void validate_query(std::size_t node_count, const DsepQuery& q);
void validate_query(std::size_t node_count, const NodeSet& x, const NodeSet& z, const NodeSet& y);

/// Linear-time reachability (active-trail) test.
bool d_separated(const Dag& dag, const DsepQuery& q);
bool d_separated(const Dag& dag, const NodeSet& x, const NodeSet& z, const NodeSet& y);

/// Adjacency bitmasks for graphs of at most 64 nodes. Answers the same
/// queries as d_separated without allocating; sets are passed as bitmasks and
/// are not validated.
class MaskedDsep {
public:
    static constexpr std::size_t kMaxNodes = 64;

    /// Throws std::length_error above kMaxNodes nodes.
    explicit MaskedDsep(const Dag& dag);

    static std::uint64_t mask(const NodeSet& s);
    bool d_separated(std::uint64_t x, std::uint64_t z, std::uint64_t y) const;

private:
    std::vector<std::uint64_t> parents_;
    std::vector<std::uint64_t> children_;
};

/// Enumerates every simple adjacency path between x and y and tests each for
/// activity. Exponential; intended as a test oracle for small graphs.
bool d_separated_bruteforce(const Dag& dag, const DsepQuery& q);

}  // namespace sparsebn
