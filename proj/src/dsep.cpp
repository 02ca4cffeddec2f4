#include "sparsebn/dsep.hpp"

#include <bit>
#include <string>

namespace sparsebn {

void validate_query(std::size_t node_count, const NodeSet& x, const NodeSet& z,
                    const NodeSet& y) {
    for (const NodeSet* s : {&x, &z, &y})
        if (!s->empty() && s->ids().back() >= node_count)
            throw UnknownNode("node index " + std::to_string(s->ids().back()) +
                              " is not registered");
    if (x.empty() || y.empty()) throw InvalidQuery("x and y must be non-empty");
    if (!x.disjoint(y) || !x.disjoint(z) || !y.disjoint(z))
        throw InvalidQuery("x, z and y must be pairwise disjoint");
}

void validate_query(std::size_t node_count, const DsepQuery& q) {
    validate_query(node_count, q.x, q.z, q.y);
}

namespace {

enum Flag : unsigned char { kUp = 1, kDown = 2, kInZ = 4, kInY = 8, kZOrAncestor = 16 };

// Per-thread scratch so the hot path does not allocate.
struct Scratch {
    std::vector<unsigned char> flags;
    std::vector<NodeId> stack;
    std::vector<std::pair<NodeId, Flag>> work;
};

}  // namespace

bool d_separated(const Dag& dag, const DsepQuery& q) { return d_separated(dag, q.x, q.z, q.y); }

bool d_separated(const Dag& dag, const NodeSet& x, const NodeSet& z, const NodeSet& y) {
    const std::size_t n = dag.node_count();
    for (const NodeSet* set : {&x, &z, &y})
        if (!set->empty() && set->ids().back() >= n) validate_query(n, x, z, y);
    if (x.empty() || y.empty()) validate_query(n, x, z, y);

    // Validation rides on the marking pass: any overlap shows up as a flag
    // already set.
    thread_local Scratch s;
    auto& flags = s.flags;
    flags.assign(n, 0);
    bool overlap = false;
    for (NodeId v : z) flags[v] |= kInZ;
    for (NodeId v : y) {
        overlap |= flags[v] != 0;
        flags[v] |= kInY;
    }
    for (NodeId v : x) overlap |= flags[v] != 0;
    if (overlap) validate_query(n, x, z, y);

    // Nodes in z or with a descendant in z: colliders there transmit.
    auto& stack = s.stack;
    stack.assign(z.begin(), z.end());
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        if (flags[v] & kZOrAncestor) continue;
        flags[v] |= kZOrAncestor;
        for (NodeId p : dag.parents(v))
            if (!(flags[p] & kZOrAncestor)) stack.push_back(p);
    }

    // Traverse (node, direction) states. kUp: entered from a child.
    // kDown: entered from a parent.
    auto& work = s.work;
    work.clear();
    for (NodeId v : x) work.emplace_back(v, kUp);
    while (!work.empty()) {
        auto [v, dir] = work.back();
        work.pop_back();
        const unsigned char f = flags[v];
        if (f & dir) continue;
        flags[v] = f | dir;
        const bool in_z = f & kInZ;
        if (!in_z && (f & kInY)) return false;

        const bool up = dir == kUp ? !in_z : (f & kZOrAncestor) != 0;
        const bool down = !in_z;
        if (up)
            for (NodeId p : dag.parents(v))
                if (!(flags[p] & kUp)) work.emplace_back(p, kUp);
        if (down)
            for (NodeId c : dag.children(v))
                if (!(flags[c] & kDown)) work.emplace_back(c, kDown);
    }
    return true;
}

MaskedDsep::MaskedDsep(const Dag& dag)
    : parents_(dag.node_count(), 0), children_(dag.node_count(), 0) {
    if (dag.node_count() > kMaxNodes)
        throw std::length_error("bitmask d-separation supports at most 64 nodes");
    for (NodeId v = 0; v < dag.node_count(); ++v) {
        parents_[v] = mask(dag.parents(v));
        children_[v] = mask(dag.children(v));
    }
}

std::uint64_t MaskedDsep::mask(const NodeSet& s) {
    std::uint64_t m = 0;
    for (NodeId v : s) {
        if (v >= kMaxNodes) throw std::length_error("node index beyond bitmask range");
        m |= std::uint64_t{1} << v;
    }
    return m;
}

bool MaskedDsep::d_separated(std::uint64_t x, std::uint64_t z, std::uint64_t y) const {
    // z together with its ancestors
    std::uint64_t anc = z, frontier = z;
    while (frontier) {
        const int v = std::countr_zero(frontier);
        frontier &= frontier - 1;
        const std::uint64_t fresh = parents_[v] & ~anc;
        anc |= fresh;
        frontier |= fresh;
    }

    // Same state traversal as d_separated: up = entered from a child,
    // down = entered from a parent.
    std::uint64_t up = x, down = 0, seen_up = 0, seen_down = 0;
    while (up | down) {
        if (up) {
            const int v = std::countr_zero(up);
            const std::uint64_t bit = std::uint64_t{1} << v;
            up &= up - 1;
            seen_up |= bit;
            if (bit & z) continue;
            if (bit & y) return false;
            up |= parents_[v] & ~seen_up;
            down |= children_[v] & ~seen_down;
        } else {
            const int v = std::countr_zero(down);
            const std::uint64_t bit = std::uint64_t{1} << v;
            down &= down - 1;
            seen_down |= bit;
            if (!(bit & z)) {
                if (bit & y) return false;
                down |= children_[v] & ~seen_down;
            }
            if (bit & anc) up |= parents_[v] & ~seen_up;
        }
    }
    return true;
}

namespace {

struct PathSearch {
    const Dag& dag;
    const NodeSet& z;
    std::vector<char> on_path;
    std::vector<NodeId> path;

    bool has_descendant_in_z(NodeId v) const {
        if (z.contains(v)) return true;
        for (NodeId d : dag.descendants(v))
            if (z.contains(d)) return true;
        return false;
    }

    bool active(const std::vector<NodeId>& p) const {
        for (std::size_t i = 1; i + 1 < p.size(); ++i) {
            const NodeId prev = p[i - 1], v = p[i], next = p[i + 1];
            const bool collider = dag.has_arc(prev, v) && dag.has_arc(next, v);
            if (collider) {
                if (!has_descendant_in_z(v)) return false;
            } else if (z.contains(v)) {
                return false;
            }
        }
        return true;
    }

    // True if some simple path from the current tail to `target` is active.
    bool extend(NodeId target) {
        const NodeId tail = path.back();
        if (tail == target) return active(path);
        NodeSet neighbours = dag.parents(tail).unite(dag.children(tail));
        for (NodeId nb : neighbours) {
            if (on_path[nb]) continue;
            on_path[nb] = 1;
            path.push_back(nb);
            const bool found = extend(target);
            path.pop_back();
            on_path[nb] = 0;
            if (found) return true;
        }
        return false;
    }
};

}  // namespace

bool d_separated_bruteforce(const Dag& dag, const DsepQuery& q) {
    validate_query(dag.node_count(), q);
    for (NodeId x : q.x) {
        for (NodeId y : q.y) {
            PathSearch s{dag, q.z, std::vector<char>(dag.node_count(), 0), {x}};
            s.on_path[x] = 1;
            if (s.extend(y)) return false;
        }
    }
    return true;
}

}  // namespace sparsebn
