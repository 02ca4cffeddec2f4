#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sparsebn {

using NodeId = std::uint32_t;

class DuplicateNode : public std::runtime_error {
public:
    explicit DuplicateNode(const std::string& name)
        : std::runtime_error("duplicate node '" + name + "'") {}
};

class UnknownNode : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when an arc insertion would close a directed cycle. `cycle()` lists
/// the nodes of the offending cycle starting at the rejected arc's child.
class CycleError : public std::runtime_error {
public:
    CycleError(const std::string& what, std::vector<NodeId> cycle)
        : std::runtime_error(what), cycle_(std::move(cycle)) {}
    const std::vector<NodeId>& cycle() const noexcept { return cycle_; }

private:
    std::vector<NodeId> cycle_;
};

/// Ordered set of node indices. Iteration is ascending; comparison and hashing
/// are by value so a NodeSet can key a hash map.
class NodeSet {
public:
    NodeSet() = default;
    NodeSet(std::initializer_list<NodeId> ids);
    static NodeSet from_sorted(std::vector<NodeId> ids);
    static NodeSet from_unsorted(std::vector<NodeId> ids);
    static NodeSet range(NodeId count);

    bool contains(NodeId id) const;
    void insert(NodeId id);
    void erase(NodeId id);

    std::size_t size() const noexcept { return ids_.size(); }
    bool empty() const noexcept { return ids_.empty(); }
    auto begin() const noexcept { return ids_.begin(); }
    auto end() const noexcept { return ids_.end(); }
    NodeId operator[](std::size_t i) const { return ids_[i]; }
    const std::vector<NodeId>& ids() const noexcept { return ids_; }
    std::vector<NodeId> release() && noexcept { return std::move(ids_); }

    NodeSet unite(const NodeSet& other) const;
    NodeSet minus(const NodeSet& other) const;
    NodeSet intersect(const NodeSet& other) const;
    bool disjoint(const NodeSet& other) const;
    bool is_subset_of(const NodeSet& other) const;

    friend bool operator==(const NodeSet&, const NodeSet&) = default;
    friend auto operator<=>(const NodeSet&, const NodeSet&) = default;

    std::size_t hash() const noexcept;

private:
    std::vector<NodeId> ids_;
};

/// Directed acyclic graph over named variables. Nodes are never removed; the
/// acyclicity invariant is enforced on every arc insertion.
class Dag {
public:
    Dag() = default;
    explicit Dag(const std::vector<std::string>& names);

    NodeId add_node(std::string name);
    /// Inserting an existing arc is a no-op. Throws CycleError on self-loops
    /// and on arcs whose child is already an ancestor of the parent.
    void add_arc(NodeId parent, NodeId child);
    void remove_arc(NodeId parent, NodeId child);
    bool has_arc(NodeId parent, NodeId child) const;

    std::size_t node_count() const noexcept { return names_.size(); }
    std::size_t arc_count() const noexcept { return arc_count_; }
    const std::string& name(NodeId id) const;
    NodeId id(std::string_view name) const;
    bool contains(std::string_view name) const;
    const std::vector<std::string>& names() const noexcept { return names_; }

    const NodeSet& parents(NodeId id) const {
        if (id >= parents_.size()) unknown(id);
        return parents_[id];
    }
    const NodeSet& children(NodeId id) const {
        if (id >= children_.size()) unknown(id);
        return children_[id];
    }
    NodeSet ancestors(NodeId id) const;
    NodeSet descendants(NodeId id) const;
    bool reaches(NodeId from, NodeId to) const;

    /// Kahn's algorithm with a min-index frontier, so ties break by index.
    std::vector<NodeId> topological_order() const;
    std::vector<std::pair<NodeId, NodeId>> arcs() const;
    NodeSet all_nodes() const { return NodeSet::range(static_cast<NodeId>(names_.size())); }

    friend bool operator==(const Dag& a, const Dag& b) {
        return a.names_ == b.names_ && a.parents_ == b.parents_;
    }

private:
    void check(NodeId id) const;
    [[noreturn]] static void unknown(NodeId id);
    std::vector<NodeId> path(NodeId from, NodeId to) const;

    std::vector<std::string> names_;
    std::unordered_map<std::string, NodeId> index_;
    std::vector<NodeSet> parents_;
    std::vector<NodeSet> children_;
    std::size_t arc_count_ = 0;
};

}  // namespace sparsebn

template <>
struct std::hash<sparsebn::NodeSet> {
    std::size_t operator()(const sparsebn::NodeSet& s) const noexcept { return s.hash(); }
};
