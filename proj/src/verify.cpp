#include "sparsebn/verify.hpp"

#include <atomic>
#include <stdexcept>

#include "sparsebn/dsep.hpp"

namespace sparsebn {

namespace {

void check_scale(const Dag& network, const IndependenceModel& model) {
    if (network.node_count() != model.variable_count())
        throw std::invalid_argument("network and model universes differ in size");
    if (network.node_count() > kMaxExhaustiveVariables)
        throw std::length_error("too many variables for exhaustive verification");
}

std::vector<std::pair<NodeId, NodeId>> pairs_of(std::size_t n) {
    std::vector<std::pair<NodeId, NodeId>> out;
    for (NodeId x = 0; x < n; ++x)
        for (NodeId y = x + 1; y < n; ++y) out.emplace_back(x, y);
    return out;
}

// Checks every conditioning set for one pair; Z is drawn from the other n-2
// variables via a bitmask.
bool pair_holds(const Dag& network, const IndependenceModel& model, NodeId x, NodeId y) {
    const std::size_t n = network.node_count();
    std::vector<NodeId> others;
    for (NodeId v = 0; v < n; ++v)
        if (v != x && v != y) others.push_back(v);
    const NodeSet xs{x}, ys{y};
    const std::uint64_t total = std::uint64_t{1} << others.size();
    std::vector<NodeId> z;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        z.clear();
        for (std::size_t i = 0; i < others.size(); ++i)
            if (mask >> i & 1u) z.push_back(others[i]);
        const NodeSet zs = NodeSet::from_sorted(z);
        if (d_separated(network, {xs, zs, ys}) && !model.is_independent(xs, zs, ys))
            return false;
    }
    return true;
}

bool minimal_given_imap(const Dag& network, const IndependenceModel& model,
                        bool (*imap)(const Dag&, const IndependenceModel&)) {
    for (auto [p, c] : network.arcs()) {
        Dag pruned = network;
        pruned.remove_arc(p, c);
        if (imap(pruned, model)) return false;
    }
    return true;
}

}  // namespace

bool is_imap_reference(const Dag& network, const IndependenceModel& model) {
    check_scale(network, model);
    for (auto [x, y] : pairs_of(network.node_count()))
        if (!pair_holds(network, model, x, y)) return false;
    return true;
}

bool is_imap(const Dag& network, const IndependenceModel& model) {
    check_scale(network, model);
    const auto pairs = pairs_of(network.node_count());
    const auto count = static_cast<std::ptrdiff_t>(pairs.size());
    std::atomic<bool> holds{true};
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        if (!holds.load(std::memory_order_relaxed)) continue;
        if (!pair_holds(network, model, pairs[i].first, pairs[i].second))
            holds.store(false, std::memory_order_relaxed);
    }
    return holds.load();
}

bool is_minimal_imap_reference(const Dag& network, const IndependenceModel& model) {
    return is_imap_reference(network, model) &&
           minimal_given_imap(network, model, &is_imap_reference);
}

bool is_minimal_imap(const Dag& network, const IndependenceModel& model) {
    return is_imap(network, model) && minimal_given_imap(network, model, &is_imap);
}

}  // namespace sparsebn
