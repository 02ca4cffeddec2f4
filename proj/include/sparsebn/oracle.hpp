#pragma once

#include <atomic>
#include <optional>
#include <cstdint>
#include <vector>

#include "sparsebn/dag.hpp"
#include "sparsebn/dsep.hpp"

namespace sparsebn {

/// An independence statement I(x, z, y): "x is independent of y given z".
struct IndependenceTriple {
    NodeSet x;
    NodeSet z;
    NodeSet y;

    friend bool operator==(const IndependenceTriple&, const IndependenceTriple&) = default;
};

/// Black-box dependency model over a fixed variable universe.
class IndependenceModel {
public:
    virtual ~IndependenceModel() = default;

    virtual std::size_t variable_count() const = 0;

    /// Throws InvalidQuery / UnknownNode on malformed queries.
    virtual bool is_independent(const NodeSet& x, const NodeSet& z, const NodeSet& y) const = 0;

    /// True when a positive answer to this query came from a declared statement
    /// that the underlying model contradicts. Not counted as a query.
    virtual bool overlay_conflict(const NodeSet&, const NodeSet&, const NodeSet&) const {
        return false;
    }

    virtual std::uint64_t call_count() const = 0;
    virtual void reset_counter() = 0;
};

/// d-separation in a ground-truth network, with an optional overlay of
/// declared independencies consulted first (exact match up to x/y swap).
class DsepOracle final : public IndependenceModel {
public:
    explicit DsepOracle(Dag ground_truth, std::vector<IndependenceTriple> declared = {});

    DsepOracle(const DsepOracle& other);
    DsepOracle& operator=(const DsepOracle&) = delete;

    std::size_t variable_count() const override { return truth_.node_count(); }
    bool is_independent(const NodeSet& x, const NodeSet& z, const NodeSet& y) const override;
    bool overlay_conflict(const NodeSet& x, const NodeSet& z, const NodeSet& y) const override;

    std::uint64_t call_count() const override { return calls_.load(std::memory_order_relaxed); }
    void reset_counter() override { calls_.store(0, std::memory_order_relaxed); }

    const Dag& ground_truth() const noexcept { return truth_; }
    const std::vector<IndependenceTriple>& declared() const noexcept { return declared_; }

private:
    bool is_declared(const NodeSet& x, const NodeSet& z, const NodeSet& y) const;

    Dag truth_;
    std::vector<IndependenceTriple> declared_;
    std::optional<MaskedDsep> masked_;
    mutable std::atomic<std::uint64_t> calls_{0};
};

}  // namespace sparsebn
