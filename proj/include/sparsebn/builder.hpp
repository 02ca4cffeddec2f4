#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sparsebn/dag.hpp"
#include "sparsebn/expert.hpp"
#include "sparsebn/oracle.hpp"

namespace sparsebn {

struct BuildConfig {
    /// Largest boundary stratum searched. Unset means unbounded.
    std::optional<std::size_t> max_parents;
    bool use_cache = true;
    /// Only search strata that contain every declared cause of the node.
    bool trust_expert = false;
};

enum class WarningKind { MissingDeclaredCause, OverlayConflict, ParentBoundFallback };

std::string_view to_string(WarningKind k);

struct DeviationWarning {
    WarningKind kind;
    NodeId node;
    /// The declared cause missing from the stratum (MissingDeclaredCause only).
    std::optional<NodeId> cause;
    std::string detail;

    friend bool operator==(const DeviationWarning&, const DeviationWarning&) = default;
};

struct BuildResult {
    Dag network;
    std::vector<DeviationWarning> warnings;
    std::uint64_t oracle_calls = 0;
    std::vector<NodeId> node_order;
    /// strata[v] is the parent set assigned to v.
    std::vector<NodeSet> strata;
    /// False when trust_expert or a parent-bound fallback was used.
    bool minimality_guaranteed = true;
};

/// Subsets S already shown not to be a boundary stratum of a candidate C,
/// i.e. not I({C}, S, K - S). By the decomposition axiom they stay
/// non-qualifying as K grows.
class FailureCache {
public:
    bool contains(NodeId candidate, const NodeSet& subset) const;
    void insert(NodeId candidate, NodeSet subset);
    std::size_t size() const noexcept { return size_; }

private:
    struct SubsetHash {
        std::size_t operator()(const NodeSet& s) const noexcept { return s.hash(); }
    };
    // Subsets of the first 64 indices are stored as bitmasks.
    std::unordered_map<NodeId, std::unordered_set<std::uint64_t>> masks_;
    std::unordered_map<NodeId, std::unordered_set<NodeSet, SubsetHash>> entries_;
    std::size_t size_ = 0;
};

/// Boundary-stratum search over the nodes already placed in the network.
/// Subsets are visited by increasing size, then lexicographically by index.
class StratumSearch {
public:
    StratumSearch(const IndependenceModel& model, const BuildConfig& config,
                  FailureCache* cache = nullptr, std::vector<DeviationWarning>* warnings = nullptr);

    /// Full search. nullopt means no stratum within config.max_parents.
    std::optional<NodeSet> find(const NodeSet& existing, NodeId candidate,
                                const NodeSet& required = {}) const;

    /// Searches only strata of `required` plus exactly `extra` further nodes.
    std::optional<NodeSet> try_size(const NodeSet& existing, NodeId candidate, std::size_t extra,
                                    const NodeSet& required = {}) const;

    /// Number of extra nodes the search may add beyond `required`.
    std::size_t extra_limit(const NodeSet& existing, const NodeSet& required) const;

private:
    bool qualifies(const NodeSet& existing, const NodeSet& candidate, const NodeSet& subset) const;

    const IndependenceModel& model_;
    const BuildConfig& config_;
    FailureCache* cache_;
    std::vector<DeviationWarning>* warnings_;
    mutable std::vector<NodeId> rest_;  // reused buffer for existing - subset
};

std::optional<NodeSet> boundary_stratum(const IndependenceModel& model, const NodeSet& existing,
                                        NodeId candidate, FailureCache* cache,
                                        const BuildConfig& config);

struct Winner {
    NodeId node;
    NodeSet stratum;
    /// No stratum within the parent bound; `stratum` is the whole existing set.
    bool fallback = false;
};

/// Priority first, then the smallest boundary stratum among the maximal
/// candidates (searched in lock-step by size), then lowest index.
Winner select_winner(const StratumSearch& search, const ExpertInfo& info, const NodeSet& existing,
                     const NodeSet& candidates, const BuildConfig& config);

BuildResult build(const IndependenceModel& model, const ExpertInfo& info,
                  const BuildConfig& config = {});

/// The plain boundary DAG for a fixed insertion order.
Dag boundary_dag(const IndependenceModel& model, const std::vector<std::string>& universe,
                 const std::vector<NodeId>& order);

}  // namespace sparsebn
