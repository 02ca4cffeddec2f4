#include "sparsebn/builder.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>

namespace sparsebn {

std::string_view to_string(WarningKind k) {
    switch (k) {
        case WarningKind::MissingDeclaredCause: return "MissingDeclaredCause";
        case WarningKind::OverlayConflict: return "OverlayConflict";
        case WarningKind::ParentBoundFallback: return "ParentBoundFallback";
    }
    return "?";
}

namespace {

std::optional<std::uint64_t> as_mask(const NodeSet& s) {
    if (!s.empty() && s.ids().back() >= 64) return std::nullopt;
    std::uint64_t m = 0;
    for (NodeId v : s) m |= std::uint64_t{1} << v;
    return m;
}

}  // namespace

bool FailureCache::contains(NodeId candidate, const NodeSet& subset) const {
    if (const auto m = as_mask(subset)) {
        const auto it = masks_.find(candidate);
        return it != masks_.end() && it->second.contains(*m);
    }
    const auto it = entries_.find(candidate);
    return it != entries_.end() && it->second.contains(subset);
}

void FailureCache::insert(NodeId candidate, NodeSet subset) {
    if (const auto m = as_mask(subset))
        size_ += masks_[candidate].insert(*m).second;
    else
        size_ += entries_[candidate].insert(std::move(subset)).second;
}

StratumSearch::StratumSearch(const IndependenceModel& model, const BuildConfig& config,
                             FailureCache* cache, std::vector<DeviationWarning>* warnings)
    : model_(model), config_(config), cache_(cache), warnings_(warnings) {}

bool StratumSearch::qualifies(const NodeSet& existing, const NodeSet& candidate,
                              const NodeSet& subset) const {
    // subset is drawn from existing, so equal sizes mean I({C}, K, {}), which holds vacuously.
    if (subset.size() == existing.size()) return true;
    const NodeId c = candidate[0];
    if (cache_ && cache_->contains(c, subset)) return false;

    rest_.clear();
    std::set_difference(existing.begin(), existing.end(), subset.begin(), subset.end(),
                        std::back_inserter(rest_));
    NodeSet rest = NodeSet::from_sorted(std::move(rest_));
    const bool independent = model_.is_independent(candidate, subset, rest);
    if (independent && warnings_ && model_.overlay_conflict(candidate, subset, rest))
        warnings_->push_back({WarningKind::OverlayConflict, c, std::nullopt,
                              "declared independence contradicts the model"});
    if (!independent && cache_) cache_->insert(c, subset);
    rest_ = std::move(rest).release();
    return independent;
}

std::size_t StratumSearch::extra_limit(const NodeSet& existing, const NodeSet& required) const {
    const std::size_t free = existing.size() - required.size();
    if (!config_.max_parents) return free;
    if (*config_.max_parents < required.size()) return 0;
    return std::min(free, *config_.max_parents - required.size());
}

std::optional<NodeSet> StratumSearch::try_size(const NodeSet& existing, NodeId candidate,
                                               std::size_t extra,
                                               const NodeSet& required) const {
    if (config_.max_parents && required.size() + extra > *config_.max_parents) return std::nullopt;
    const NodeSet free = existing.minus(required);
    if (extra > free.size()) return std::nullopt;
    const NodeSet x{candidate};

    std::vector<std::size_t> pick(extra);
    for (std::size_t i = 0; i < extra; ++i) pick[i] = i;
    std::vector<NodeId> chosen(extra);
    while (true) {
        for (std::size_t i = 0; i < extra; ++i) chosen[i] = free[pick[i]];
        NodeSet subset = required.empty() ? NodeSet::from_sorted(std::move(chosen))
                                          : required.unite(NodeSet::from_sorted(chosen));
        if (qualifies(existing, x, subset)) return subset;
        if (required.empty()) {
            chosen = std::move(subset).release();
            chosen.resize(extra);
        }

        // next k-combination in lexicographic order
        std::size_t i = extra;
        while (i > 0 && pick[i - 1] == free.size() - extra + (i - 1)) --i;
        if (i == 0) return std::nullopt;
        ++pick[i - 1];
        for (std::size_t j = i; j < extra; ++j) pick[j] = pick[j - 1] + 1;
    }
}

std::optional<NodeSet> StratumSearch::find(const NodeSet& existing, NodeId candidate,
                                           const NodeSet& required) const {
    if (existing.contains(candidate))
        throw std::invalid_argument("candidate is already in the network");
    const std::size_t limit = extra_limit(existing, required);
    if (config_.max_parents && required.size() > *config_.max_parents) return std::nullopt;
    for (std::size_t k = 0; k <= limit; ++k)
        if (auto s = try_size(existing, candidate, k, required)) return s;
    return std::nullopt;
}

std::optional<NodeSet> boundary_stratum(const IndependenceModel& model, const NodeSet& existing,
                                        NodeId candidate, FailureCache* cache,
                                        const BuildConfig& config) {
    return StratumSearch(model, config, config.use_cache ? cache : nullptr).find(existing, candidate);
}

namespace {

NodeSet required_causes(const ExpertInfo& info, const NodeSet& existing, NodeId v,
                        const BuildConfig& config) {
    if (!config.trust_expert) return {};
    return info.declared_causes(v).intersect(existing);
}

}  // namespace

Winner select_winner(const StratumSearch& search, const ExpertInfo& info, const NodeSet& existing,
                     const NodeSet& candidates, const BuildConfig& config) {
    if (candidates.empty()) throw std::invalid_argument("no candidates to choose from");
    const NodeSet top = maximal_candidates(info, candidates);

    if (top.size() == 1) {
        const NodeId c = top[0];
        if (auto s = search.find(existing, c, required_causes(info, existing, c, config)))
            return {c, std::move(*s), false};
        return {c, existing, true};
    }

    std::vector<NodeSet> required;
    std::size_t max_extra = 0;
    for (NodeId c : top) {
        required.push_back(required_causes(info, existing, c, config));
        max_extra = std::max(max_extra, search.extra_limit(existing, required.back()));
    }
    // Lock-step search: every tied candidate is tried at size k before any at k+1.
    for (std::size_t k = 0; k <= max_extra; ++k) {
        for (std::size_t i = 0; i < top.size(); ++i) {
            if (k > search.extra_limit(existing, required[i])) continue;
            if (auto s = search.try_size(existing, top[i], k, required[i]))
                return {top[i], std::move(*s), false};
        }
    }
    return {top[0], existing, true};
}

BuildResult build(const IndependenceModel& model, const ExpertInfo& info,
                  const BuildConfig& config) {
    const Dag& names = info.info_dag();
    if (names.node_count() != model.variable_count())
        throw std::invalid_argument("expert universe and model universe differ in size");
    if (config.max_parents && *config.max_parents == 0)
        throw std::invalid_argument("max_parents must be at least 1");

    BuildResult result;
    result.network = Dag(names.names());
    result.strata.resize(names.node_count());
    result.minimality_guaranteed = !config.trust_expert && !config.max_parents;

    FailureCache cache;
    StratumSearch search(model, config, config.use_cache ? &cache : nullptr, &result.warnings);
    const std::uint64_t calls_before = model.call_count();

    NodeSet existing;
    NodeSet candidates = names.all_nodes();
    while (!candidates.empty()) {
        Winner w = select_winner(search, info, existing, candidates, config);
        if (w.fallback) {
            result.minimality_guaranteed = false;
            result.warnings.push_back(
                {WarningKind::ParentBoundFallback, w.node, std::nullopt,
                 "no boundary stratum within " + std::to_string(*config.max_parents) +
                     " parents; using all " + std::to_string(existing.size()) + " placed nodes"});
        }
        for (NodeId p : w.stratum) result.network.add_arc(p, w.node);
        for (NodeId cause : info.declared_causes(w.node)) {
            if (w.stratum.contains(cause)) continue;
            result.warnings.push_back(
                {WarningKind::MissingDeclaredCause, w.node, cause,
                 "declared cause '" + names.name(cause) + "' of '" + names.name(w.node) +
                     "' is not in its boundary stratum"});
        }
        result.node_order.push_back(w.node);
        result.strata[w.node] = std::move(w.stratum);
        existing.insert(w.node);
        candidates.erase(w.node);
    }
    result.oracle_calls = model.call_count() - calls_before;
    return result;
}

Dag boundary_dag(const IndependenceModel& model, const std::vector<std::string>& universe,
                 const std::vector<NodeId>& order) {
    if (order.size() != universe.size() ||
        NodeSet::from_unsorted(order) != NodeSet::range(static_cast<NodeId>(universe.size())))
        throw std::invalid_argument("order must be a permutation of the universe");
    Dag out(universe);
    BuildConfig config;
    StratumSearch search(model, config);
    NodeSet existing;
    for (NodeId v : order) {
        const NodeSet parents = *search.find(existing, v);
        for (NodeId p : parents) out.add_arc(p, v);
        existing.insert(v);
    }
    return out;
}

}  // namespace sparsebn
