#include "spinpoly/graph.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace spinpoly {

namespace {

// Slot-level builder used by the graph constructors.
struct Builder {
    std::vector<std::array<EdgeId, 3>> slots;
    std::vector<EdgeKind> kinds;
    std::vector<EdgeId> leaf_order;

    VertexId add_vertex() {
        slots.push_back({-1, -1, -1});
        return static_cast<VertexId>(slots.size()) - 1;
    }

    void bind(VertexId v, EdgeId e) {
        for (auto& s : slots[static_cast<std::size_t>(v)]) {
            if (s == -1) {
                s = e;
                return;
            }
        }
        throw InvariantViolation("no free slot on vertex " + std::to_string(v));
    }

    EdgeId add_internal_edge(VertexId a, VertexId b) {
        EdgeId e = static_cast<EdgeId>(kinds.size());
        kinds.push_back(EdgeKind::Internal);
        bind(a, e);
        bind(b, e);
        return e;
    }

    EdgeId add_leaf(VertexId v) {
        EdgeId e = static_cast<EdgeId>(kinds.size());
        kinds.push_back(EdgeKind::Leaf);
        bind(v, e);
        leaf_order.push_back(e);
        return e;
    }

    TrivalentGraph finish(std::optional<CaterpillarInfo> family) {
        return TrivalentGraph::from_parts(std::move(slots), std::move(kinds),
                                          std::move(leaf_order), std::move(family));
    }
};

} // namespace

void validate_parts(const std::vector<std::array<EdgeId, 3>>& slots,
                    const std::vector<EdgeKind>& edge_kinds,
                    const std::vector<EdgeId>& leaf_order) {
    const int V = static_cast<int>(slots.size());
    const int E = static_cast<int>(edge_kinds.size());
    if (V == 0)
        throw InvariantViolation("graph has no internal vertices");

    std::vector<int> slot_uses(static_cast<std::size_t>(E), 0);
    for (VertexId v = 0; v < V; ++v) {
        for (EdgeId e : slots[static_cast<std::size_t>(v)]) {
            if (e < 0 || e >= E)
                throw InvariantViolation("vertex " + std::to_string(v) +
                                         " has an unbound or out-of-range slot");
            ++slot_uses[static_cast<std::size_t>(e)];
        }
    }

    int internal = 0;
    for (EdgeId e = 0; e < E; ++e) {
        const int uses = slot_uses[static_cast<std::size_t>(e)];
        if (edge_kinds[static_cast<std::size_t>(e)] == EdgeKind::Leaf) {
            if (uses != 1)
                throw InvariantViolation("leaf edge " + std::to_string(e) +
                                         " occupies " + std::to_string(uses) + " slots");
        } else {
            ++internal;
            if (uses != 2)
                throw InvariantViolation("internal edge " + std::to_string(e) +
                                         " occupies " + std::to_string(uses) + " slots");
        }
    }

    std::vector<EdgeId> leaves_seen;
    for (EdgeId e = 0; e < E; ++e)
        if (edge_kinds[static_cast<std::size_t>(e)] == EdgeKind::Leaf)
            leaves_seen.push_back(e);
    std::vector<EdgeId> order_sorted = leaf_order;
    std::sort(order_sorted.begin(), order_sorted.end());
    if (order_sorted != leaves_seen)
        throw InvariantViolation("leaf_order does not list each leaf edge exactly once");

    // Connectivity over internal edges (leaves hang off vertices and cannot
    // disconnect anything).
    std::vector<std::vector<VertexId>> adj(static_cast<std::size_t>(V));
    {
        std::map<EdgeId, std::vector<VertexId>> ends;
        for (VertexId v = 0; v < V; ++v)
            for (EdgeId e : slots[static_cast<std::size_t>(v)])
                if (edge_kinds[static_cast<std::size_t>(e)] == EdgeKind::Internal)
                    ends[e].push_back(v);
        for (auto& [e, vs] : ends) {
            if (vs.size() != 2)
                throw InvariantViolation("internal edge " + std::to_string(e) + " malformed");
            adj[static_cast<std::size_t>(vs[0])].push_back(vs[1]);
            adj[static_cast<std::size_t>(vs[1])].push_back(vs[0]);
        }
    }
    std::vector<bool> seen(static_cast<std::size_t>(V), false);
    std::queue<VertexId> q;
    q.push(0);
    seen[0] = true;
    int reached = 1;
    while (!q.empty()) {
        VertexId v = q.front();
        q.pop();
        for (VertexId u : adj[static_cast<std::size_t>(v)]) {
            if (!seen[static_cast<std::size_t>(u)]) {
                seen[static_cast<std::size_t>(u)] = true;
                ++reached;
                q.push(u);
            }
        }
    }
    if (reached != V)
        throw InvariantViolation("graph is not connected");

    // First Betti number, computed with leaves pruned and with leaves kept
    // (each leaf contributing its free endpoint).  Both must agree.
    const int n = static_cast<int>(leaf_order.size());
    const int betti_pruned = internal - V + 1;
    const int betti_kept = (internal + n) - (V + n) + 1;
    if (betti_pruned != betti_kept)
        throw InvariantViolation("Betti number computations disagree");
    if (betti_pruned < 0)
        throw InvariantViolation("negative Betti number");
}

TrivalentGraph TrivalentGraph::from_parts(std::vector<std::array<EdgeId, 3>> slots,
                                          std::vector<EdgeKind> edge_kinds,
                                          std::vector<EdgeId> leaf_order,
                                          std::optional<CaterpillarInfo> family) {
    validate_parts(slots, edge_kinds, leaf_order);

    TrivalentGraph g;
    g.slots_ = std::move(slots);
    g.kinds_ = std::move(edge_kinds);
    g.leaf_order_ = std::move(leaf_order);
    g.family_ = std::move(family);

    const int V = g.vertex_count();
    const int E = g.edge_count();
    g.incidences_.assign(static_cast<std::size_t>(E), {});
    for (VertexId v = 0; v < V; ++v) {
        for (EdgeId e : g.slots_[static_cast<std::size_t>(v)]) {
            auto& inc = g.incidences_[static_cast<std::size_t>(e)];
            if (!inc.empty() && inc.back().vertex == v)
                ++inc.back().multiplicity;
            else
                inc.push_back({v, 1});
        }
    }
    g.internal_edges_ = 0;
    for (EdgeId e = 0; e < E; ++e)
        if (g.kinds_[static_cast<std::size_t>(e)] == EdgeKind::Internal)
            ++g.internal_edges_;
    g.betti_ = g.internal_edges_ - V + 1;
    return g;
}

void validate(const TrivalentGraph& graph) {
    validate_parts(graph.all_slots(),
                   [&] {
                       std::vector<EdgeKind> ks;
                       for (EdgeId e = 0; e < graph.edge_count(); ++e)
                           ks.push_back(graph.edge_kind(e));
                       return ks;
                   }(),
                   graph.leaf_order());
}

TrivalentGraph build_caterpillar(int g, int n) {
    if (g < 0 || n < 0)
        throw InfeasibleSignature("negative genus or leaf count");
    if (g == 0 && n < 3)
        throw InfeasibleSignature("genus 0 requires at least 3 leaves");
    if (g == 1 && n < 1)
        throw InfeasibleSignature("genus 1 requires at least 1 leaf");

    Builder b;
    CaterpillarInfo info;
    info.g = g;
    info.n = n;

    if (g == 0) {
        // Tree caterpillar: t_1 carries leaves 1,2; t_i carries leaf i+1.
        const int tv = n - 2;
        std::vector<VertexId> t;
        for (int i = 0; i < tv; ++i)
            t.push_back(b.add_vertex());
        for (int i = 0; i + 1 < tv; ++i)
            b.add_internal_edge(t[static_cast<std::size_t>(i)], t[static_cast<std::size_t>(i) + 1]);
        b.add_leaf(t[0]);
        b.add_leaf(t[0]);
        for (int i = 1; i < tv; ++i)
            b.add_leaf(t[static_cast<std::size_t>(i)]);
        b.add_leaf(t[static_cast<std::size_t>(tv) - 1]);
    } else {
        // Genus part: a loop vertex followed by double-edge handles.  The
        // vertex `cur` keeps one free slot for whatever comes next.
        const int handles = (n == 0) ? g - 1 : g;
        VertexId cur = b.add_vertex();
        info.end_loop = b.add_internal_edge(cur, cur);
        for (int k = 1; k < handles; ++k) {
            VertexId h = b.add_vertex();
            VertexId h2 = b.add_vertex();
            b.add_internal_edge(cur, h);
            info.handle_x = b.add_internal_edge(h, h2);
            info.handle_y = b.add_internal_edge(h, h2);
            cur = h2;
        }
        if (n == 0) {
            // Close the stem with a second loop vertex (g >= 2 here).
            VertexId z = b.add_vertex();
            b.add_internal_edge(cur, z);
            b.add_internal_edge(z, z);
        } else if (n == 1) {
            info.separating_end = b.add_leaf(cur);
        } else {
            std::vector<VertexId> t;
            for (int i = 0; i < n - 1; ++i)
                t.push_back(b.add_vertex());
            for (int i = 0; i + 1 < n - 1; ++i)
                b.add_internal_edge(t[static_cast<std::size_t>(i)], t[static_cast<std::size_t>(i) + 1]);
            info.separating_end = b.add_internal_edge(t[static_cast<std::size_t>(n) - 2], cur);
            b.add_leaf(t[0]);
            b.add_leaf(t[0]);
            for (int i = 1; i < n - 1; ++i)
                b.add_leaf(t[static_cast<std::size_t>(i)]);
        }
    }

    TrivalentGraph graph = b.finish(info);

    // Construction postconditions: requested signature and edge census.
    if (graph.betti_number() != g || graph.leaf_count() != n)
        throw IntegrityError("caterpillar builder produced wrong (g, n)");
    const int expected_edges = (g == 0) ? 2 * n - 3 : 3 * g + 2 * n - 3;
    if (graph.edge_count() != expected_edges)
        throw IntegrityError("caterpillar builder produced wrong edge count");
    return graph;
}

TrivalentGraph build_named(NamedGraph name) {
    Builder b;
    switch (name) {
    case NamedGraph::Trinode: {
        VertexId v = b.add_vertex();
        b.add_leaf(v);
        b.add_leaf(v);
        b.add_leaf(v);
        CaterpillarInfo info;
        info.g = 0;
        info.n = 3;
        return b.finish(info);
    }
    case NamedGraph::Theta: {
        VertexId v = b.add_vertex();
        VertexId u = b.add_vertex();
        b.add_internal_edge(v, u);
        b.add_internal_edge(v, u);
        b.add_internal_edge(v, u);
        return b.finish(std::nullopt);
    }
    case NamedGraph::Dumbbell: {
        VertexId v = b.add_vertex();
        CaterpillarInfo info;
        info.g = 2;
        info.n = 0;
        info.end_loop = b.add_internal_edge(v, v);
        VertexId u = b.add_vertex();
        b.add_internal_edge(v, u);
        b.add_internal_edge(u, u);
        return b.finish(info);
    }
    case NamedGraph::LoopWithLeaf: {
        VertexId v = b.add_vertex();
        CaterpillarInfo info;
        info.g = 1;
        info.n = 1;
        info.end_loop = b.add_internal_edge(v, v);
        info.separating_end = b.add_leaf(v);
        return b.finish(info);
    }
    }
    throw UnknownName("unrecognized graph name");
}

TrivalentGraph build_named(const std::string& name) {
    if (name == "trinode")
        return build_named(NamedGraph::Trinode);
    if (name == "theta")
        return build_named(NamedGraph::Theta);
    if (name == "dumbbell")
        return build_named(NamedGraph::Dumbbell);
    if (name == "loop_with_leaf")
        return build_named(NamedGraph::LoopWithLeaf);
    throw UnknownName("unknown graph name: " + name);
}

} // namespace spinpoly
