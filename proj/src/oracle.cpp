#include "sparsebn/oracle.hpp"

namespace sparsebn {

DsepOracle::DsepOracle(Dag ground_truth, std::vector<IndependenceTriple> declared)
    : truth_(std::move(ground_truth)), declared_(std::move(declared)) {
    for (const auto& t : declared_) validate_query(truth_.node_count(), {t.x, t.z, t.y});
    if (truth_.node_count() <= MaskedDsep::kMaxNodes) masked_.emplace(truth_);
}

DsepOracle::DsepOracle(const DsepOracle& other)
    : truth_(other.truth_),
      declared_(other.declared_),
      masked_(other.masked_),
      calls_(other.call_count()) {}

bool DsepOracle::is_declared(const NodeSet& x, const NodeSet& z, const NodeSet& y) const {
    for (const auto& t : declared_) {
        if (t.z != z) continue;
        if ((t.x == x && t.y == y) || (t.x == y && t.y == x)) return true;
    }
    return false;
}

bool DsepOracle::is_independent(const NodeSet& x, const NodeSet& z, const NodeSet& y) const {
    calls_.fetch_add(1, std::memory_order_relaxed);
    if (!declared_.empty()) {
        validate_query(truth_.node_count(), x, z, y);
        if (is_declared(x, z, y)) return true;
    }
    if (!masked_) return d_separated(truth_, x, z, y);

    const std::size_t n = truth_.node_count();
    for (const NodeSet* s : {&x, &z, &y})
        if (!s->empty() && s->ids().back() >= n) validate_query(n, x, z, y);
    const std::uint64_t mx = MaskedDsep::mask(x), mz = MaskedDsep::mask(z),
                        my = MaskedDsep::mask(y);
    if (!mx || !my || (mx & my) || (mx & mz) || (my & mz)) validate_query(n, x, z, y);
    return masked_->d_separated(mx, mz, my);
}

bool DsepOracle::overlay_conflict(const NodeSet& x, const NodeSet& z, const NodeSet& y) const {
    if (declared_.empty() || !is_declared(x, z, y)) return false;
    return !d_separated(truth_, x, z, y);
}

}  // namespace sparsebn
