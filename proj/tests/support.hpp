#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "sparsebn/dag.hpp"
#include "sparsebn/dsep.hpp"
#include "sparsebn/oracle.hpp"

namespace sparsebn::testing {

inline Dag make_dag(const std::vector<std::string>& names,
                    const std::vector<std::pair<std::string, std::string>>& arcs) {
    Dag dag(names);
    for (const auto& [p, c] : arcs) dag.add_arc(dag.id(p), dag.id(c));
    return dag;
}

inline Dag fig1a() { return make_dag({"T", "T1", "T2"}, {{"T", "T1"}, {"T", "T2"}}); }

inline std::string data_path(const std::string& file) {
    return std::string(SPARSEBN_TEST_DATA) + "/" + file;
}

/// Random DAG whose arcs go forward in index order, each present with
/// probability `density`.
inline Dag random_forward_dag(std::size_t n, double density, std::mt19937_64& rng) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("V" + std::to_string(i));
    Dag dag(names);
    std::bernoulli_distribution coin(density);
    for (NodeId c = 0; c < n; ++c)
        for (NodeId p = 0; p < c; ++p)
            if (coin(rng)) dag.add_arc(p, c);
    return dag;
}

inline NodeSet from_mask(std::uint64_t mask, const std::vector<NodeId>& pool) {
    std::vector<NodeId> out;
    for (std::size_t i = 0; i < pool.size(); ++i)
        if (mask >> i & 1u) out.push_back(pool[i]);
    return NodeSet::from_unsorted(std::move(out));
}

/// Boundary DAG for a fixed order, computed independently of the builder:
/// every subset of the predecessors is tested with the path-enumerating
/// d-separation, and the smallest qualifying one (first by mask order within
/// a size) is kept.
inline Dag reference_boundary_dag(const Dag& truth, const std::vector<NodeId>& order) {
    Dag out(truth.names());
    std::vector<NodeId> before;
    for (NodeId v : order) {
        const NodeSet all = NodeSet::from_unsorted(before);
        NodeSet best = all;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << before.size()); ++mask) {
            const NodeSet s = from_mask(mask, before);
            if (s.size() >= best.size()) continue;
            const NodeSet rest = all.minus(s);
            if (rest.empty() || d_separated_bruteforce(truth, {NodeSet{v}, s, rest})) best = s;
        }
        for (NodeId p : best) out.add_arc(p, v);
        before.push_back(v);
    }
    return out;
}

}  // namespace sparsebn::testing
