#include "sparsebn/dag.hpp"

#include <algorithm>
#include <queue>

namespace sparsebn {

NodeSet::NodeSet(std::initializer_list<NodeId> ids) : ids_(ids) {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

NodeSet NodeSet::from_sorted(std::vector<NodeId> ids) {
    NodeSet s;
    s.ids_ = std::move(ids);
    return s;
}

NodeSet NodeSet::from_unsorted(std::vector<NodeId> ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return from_sorted(std::move(ids));
}

NodeSet NodeSet::range(NodeId count) {
    std::vector<NodeId> ids(count);
    for (NodeId i = 0; i < count; ++i) ids[i] = i;
    return from_sorted(std::move(ids));
}

bool NodeSet::contains(NodeId id) const {
    return std::binary_search(ids_.begin(), ids_.end(), id);
}

void NodeSet::insert(NodeId id) {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) ids_.insert(it, id);
}

void NodeSet::erase(NodeId id) {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it != ids_.end() && *it == id) ids_.erase(it);
}

NodeSet NodeSet::unite(const NodeSet& other) const {
    std::vector<NodeId> out;
    out.reserve(ids_.size() + other.ids_.size());
    std::set_union(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                   std::back_inserter(out));
    return from_sorted(std::move(out));
}

NodeSet NodeSet::minus(const NodeSet& other) const {
    std::vector<NodeId> out;
    out.reserve(ids_.size());
    std::set_difference(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                        std::back_inserter(out));
    return from_sorted(std::move(out));
}

NodeSet NodeSet::intersect(const NodeSet& other) const {
    std::vector<NodeId> out;
    std::set_intersection(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                          std::back_inserter(out));
    return from_sorted(std::move(out));
}

bool NodeSet::disjoint(const NodeSet& other) const {
    auto a = ids_.begin();
    auto b = other.ids_.begin();
    while (a != ids_.end() && b != other.ids_.end()) {
        if (*a == *b) return false;
        if (*a < *b) ++a; else ++b;
    }
    return true;
}

bool NodeSet::is_subset_of(const NodeSet& other) const {
    return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(), ids_.end());
}

std::size_t NodeSet::hash() const noexcept {
    // FNV-1a over the index sequence
    std::uint64_t h = 1469598103934665603ull;
    for (NodeId id : ids_) {
        h ^= id;
        h *= 1099511628211ull;
    }
    h ^= ids_.size();
    return static_cast<std::size_t>(h);
}

Dag::Dag(const std::vector<std::string>& names) {
    for (const auto& n : names) add_node(n);
}

NodeId Dag::add_node(std::string name) {
    if (name.empty()) throw std::invalid_argument("node name must be non-empty");
    if (index_.contains(name)) throw DuplicateNode(name);
    const auto id = static_cast<NodeId>(names_.size());
    index_.emplace(name, id);
    names_.push_back(std::move(name));
    parents_.emplace_back();
    children_.emplace_back();
    return id;
}

void Dag::unknown(NodeId id) {
    throw UnknownNode("node index " + std::to_string(id) + " is not registered");
}

void Dag::check(NodeId id) const {
    if (id >= names_.size()) unknown(id);
}

std::vector<NodeId> Dag::path(NodeId from, NodeId to) const {
    // BFS over children, recovering one directed path from -> to
    std::vector<NodeId> prev(names_.size(), static_cast<NodeId>(-1));
    std::vector<bool> seen(names_.size(), false);
    std::queue<NodeId> q;
    q.push(from);
    seen[from] = true;
    while (!q.empty()) {
        NodeId u = q.front();
        q.pop();
        if (u == to) break;
        for (NodeId c : children_[u]) {
            if (!seen[c]) {
                seen[c] = true;
                prev[c] = u;
                q.push(c);
            }
        }
    }
    std::vector<NodeId> out;
    if (!seen[to]) return out;
    for (NodeId v = to; v != from; v = prev[v]) out.push_back(v);
    out.push_back(from);
    std::reverse(out.begin(), out.end());
    return out;
}

void Dag::add_arc(NodeId parent, NodeId child) {
    check(parent);
    check(child);
    if (parent == child)
        throw CycleError("self-loop on '" + names_[parent] + "'", {parent});
    if (parents_[child].contains(parent)) return;
    if (reaches(child, parent)) {
        auto cycle = path(child, parent);
        std::string msg = "arc " + names_[parent] + " -> " + names_[child] + " closes cycle ";
        for (NodeId v : cycle) msg += names_[v] + " -> ";
        msg += names_[child];
        throw CycleError(msg, std::move(cycle));
    }
    parents_[child].insert(parent);
    children_[parent].insert(child);
    ++arc_count_;
}

void Dag::remove_arc(NodeId parent, NodeId child) {
    check(parent);
    check(child);
    if (!parents_[child].contains(parent)) return;
    parents_[child].erase(parent);
    children_[parent].erase(child);
    --arc_count_;
}

bool Dag::has_arc(NodeId parent, NodeId child) const {
    check(parent);
    check(child);
    return parents_[child].contains(parent);
}

const std::string& Dag::name(NodeId id) const {
    check(id);
    return names_[id];
}

NodeId Dag::id(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) throw UnknownNode("unknown node '" + std::string(name) + "'");
    return it->second;
}

bool Dag::contains(std::string_view name) const { return index_.contains(std::string(name)); }


namespace {

NodeSet closure(const std::vector<NodeSet>& adj, NodeId start) {
    std::vector<bool> seen(adj.size(), false);
    std::vector<NodeId> stack(adj[start].begin(), adj[start].end());
    std::vector<NodeId> out;
    while (!stack.empty()) {
        NodeId u = stack.back();
        stack.pop_back();
        if (seen[u]) continue;
        seen[u] = true;
        out.push_back(u);
        for (NodeId v : adj[u])
            if (!seen[v]) stack.push_back(v);
    }
    return NodeSet::from_unsorted(std::move(out));
}

}  // namespace

NodeSet Dag::ancestors(NodeId id) const {
    check(id);
    return closure(parents_, id);
}

NodeSet Dag::descendants(NodeId id) const {
    check(id);
    return closure(children_, id);
}

bool Dag::reaches(NodeId from, NodeId to) const {
    check(from);
    check(to);
    if (from == to) return true;
    std::vector<bool> seen(names_.size(), false);
    std::vector<NodeId> stack{from};
    seen[from] = true;
    while (!stack.empty()) {
        NodeId u = stack.back();
        stack.pop_back();
        for (NodeId c : children_[u]) {
            if (c == to) return true;
            if (!seen[c]) {
                seen[c] = true;
                stack.push_back(c);
            }
        }
    }
    return false;
}

std::vector<NodeId> Dag::topological_order() const {
    std::vector<std::size_t> indeg(names_.size());
    std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
    for (NodeId v = 0; v < names_.size(); ++v) {
        indeg[v] = parents_[v].size();
        if (indeg[v] == 0) ready.push(v);
    }
    std::vector<NodeId> order;
    order.reserve(names_.size());
    while (!ready.empty()) {
        NodeId u = ready.top();
        ready.pop();
        order.push_back(u);
        for (NodeId c : children_[u])
            if (--indeg[c] == 0) ready.push(c);
    }
    return order;
}

std::vector<std::pair<NodeId, NodeId>> Dag::arcs() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    out.reserve(arc_count_);
    for (NodeId p = 0; p < names_.size(); ++p)
        for (NodeId c : children_[p]) out.emplace_back(p, c);
    return out;
}

}  // namespace sparsebn
