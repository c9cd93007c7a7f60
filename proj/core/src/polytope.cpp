#include "spinpoly/polytope.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <limits>
#include <thread>

namespace spinpoly {

namespace {

std::int64_t triple_sum(std::int64_t a, std::int64_t b, std::int64_t c) { return a + b + c; }
std::int64_t triple_max(std::int64_t a, std::int64_t b, std::int64_t c) {
    return std::max(a, std::max(b, c));
}

// Triangle inequalities in multiset form: |x-z| <= y <= x+z for every
// labeling of the triple is equivalent to 2*max <= sum.
bool triangle_ok(std::int64_t a, std::int64_t b, std::int64_t c) {
    return 2 * triple_max(a, b, c) <= triple_sum(a, b, c);
}

std::array<std::int64_t, 3> vertex_values(const TrivalentGraph& g, VertexId v,
                                          const EdgeWeights& w) {
    const auto& s = g.slots(v);
    return {w[static_cast<std::size_t>(s[0])], w[static_cast<std::size_t>(s[1])],
            w[static_cast<std::size_t>(s[2])]};
}

} // namespace

PolytopeSpec::PolytopeSpec(TrivalentGraph graph, std::int64_t level,
                           std::optional<std::vector<std::int64_t>> leaf_fixing)
    : graph_(std::move(graph)), level_(level), leaf_fixing_(std::move(leaf_fixing)) {
    if (level_ < 0)
        throw ShapeMismatch("level must be nonnegative");
    if (leaf_fixing_) {
        if (static_cast<int>(leaf_fixing_->size()) != graph_.leaf_count())
            throw ShapeMismatch("leaf fixing length does not match leaf count");
        for (std::int64_t r : *leaf_fixing_)
            if (r < 0)
                throw ShapeMismatch("leaf fixing values must be nonnegative");
        if (leaf_fixing_->empty())
            leaf_fixing_.reset(); // nothing is fixed
    }
}

InteriorRegime interior_regime(const PolytopeSpec& spec) {
    if (!spec.has_fixing())
        return InteriorRegime::Free;
    const auto& family = spec.graph().family();
    if (!family)
        throw UnsupportedRegime(
            "interiority with fixed leaves is only characterized on the caterpillar family");
    const auto& r = *spec.leaf_fixing();
    const std::int64_t L = spec.level();
    bool all_strict = true;
    for (std::int64_t ri : r)
        if (!(0 < ri && ri < L))
            all_strict = false;
    if (all_strict)
        return InteriorRegime::FixedInterior;
    if (r.size() == 1 && r[0] == L && family->g >= 2)
        return InteriorRegime::FixedBoundaryLeaf;
    throw UnsupportedRegime("leaf fixing with boundary values outside the known regimes");
}

bool satisfies(const EdgeWeights& w, const PolytopeSpec& spec, std::int64_t degree) {
    const TrivalentGraph& g = spec.graph();
    if (static_cast<int>(w.size()) != g.edge_count())
        throw ShapeMismatch("weight vector does not match edge set");
    const std::int64_t bound = 2 * degree * spec.level();

    for (std::int64_t x : w.w)
        if (x < 0)
            return false;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        auto [a, b, c] = vertex_values(g, v, w);
        if (!triangle_ok(a, b, c))
            return false;
        if (triple_sum(a, b, c) > bound)
            return false;
    }
    if (spec.has_fixing()) {
        const auto& r = *spec.leaf_fixing();
        const auto& leaves = g.leaf_order();
        for (std::size_t i = 0; i < leaves.size(); ++i)
            if (w[static_cast<std::size_t>(leaves[i])] != degree * r[i])
                return false;
    }
    return true;
}

bool in_lattice(const EdgeWeights& w, const TrivalentGraph& graph) {
    if (static_cast<int>(w.size()) != graph.edge_count())
        throw ShapeMismatch("weight vector does not match edge set");
    for (VertexId v = 0; v < graph.vertex_count(); ++v) {
        auto [a, b, c] = vertex_values(graph, v, w);
        if ((a + b + c) & 1)
            return false;
    }
    return true;
}

bool is_interior(const EdgeWeights& w, const PolytopeSpec& spec, std::int64_t degree) {
    const InteriorRegime regime = interior_regime(spec);
    const TrivalentGraph& g = spec.graph();
    if (static_cast<int>(w.size()) != g.edge_count())
        throw ShapeMismatch("weight vector does not match edge set");
    const std::int64_t cap = degree * spec.level();
    const std::int64_t bound = 2 * cap;

    VertexId boundary_leaf_vertex = -1;
    if (spec.has_fixing()) {
        const auto& r = *spec.leaf_fixing();
        const auto& leaves = g.leaf_order();
        for (std::size_t i = 0; i < leaves.size(); ++i)
            if (w[static_cast<std::size_t>(leaves[i])] != degree * r[i])
                return false;
        if (regime == InteriorRegime::FixedBoundaryLeaf)
            boundary_leaf_vertex = g.incidences(leaves[0]).front().vertex;
    }

    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const bool fixed_leaf =
            spec.has_fixing() && g.edge_kind(e) == EdgeKind::Leaf;
        if (!fixed_leaf && w[static_cast<std::size_t>(e)] <= 0)
            return false;
        if (fixed_leaf && w[static_cast<std::size_t>(e)] < 0)
            return false;
    }
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        auto [a, b, c] = vertex_values(g, v, w);
        const std::int64_t sum = triple_sum(a, b, c);
        if (v == boundary_leaf_vertex) {
            // On the r == level slice the upper triangle inequality and the
            // level inequality at this vertex are identities; only the two
            // non-leaf values must stay away from the slice's ends, which
            // the edgewise positivity above already enforces.
            const auto& s = g.slots(v);
            std::int64_t leaf_val = -1, other_sum = 0;
            for (EdgeId e : s) {
                if (g.edge_kind(e) == EdgeKind::Leaf)
                    leaf_val = w[static_cast<std::size_t>(e)];
                else
                    other_sum += w[static_cast<std::size_t>(e)];
            }
            if (other_sum != leaf_val)
                return false; // not on the slice at all
            continue;
        }
        if (2 * triple_max(a, b, c) >= sum)
            return false;
        if (sum >= bound)
            return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Backtracking enumeration.
//
// Edges are assigned in an elimination order that closes vertices as early
// as possible.  When the edge being assigned is the last unbound slot of a
// vertex, that vertex's constraints collapse to an interval (plus a parity
// class) for the new value; intersecting the intervals of all vertices
// closed by the edge gives the candidate range.  Vertices with two or more
// unbound slots never constrain the current edge: with per-edge domain
// {0..N*L} their constraints are always completable.

namespace {

struct Closing {
    bool loop = false; // the closing edge fills two slots of the vertex
    bool weak = false; // keep weak bounds in interior mode (boundary-leaf slice vertex)
    EdgeId o1 = -1;    // loop: the third edge; pair: first other edge
    EdgeId o2 = -1;    // pair: second other edge
};

struct Step {
    EdgeId edge = -1;
    std::int64_t fixed = -1; // >= 0: preset (scaled leaf value)
    std::vector<Closing> closings;
};

struct Plan {
    std::int64_t cap = 0;   // N*L, the per-edge bound forced by the system
    std::int64_t bound = 0; // 2*N*L
    bool interior = false;
    bool infeasible = false; // fixing exceeds cap; the point set is empty
    std::vector<Step> steps;
    int edge_count = 0;
};

Plan build_plan(const PolytopeSpec& spec, std::int64_t degree, bool interior) {
    const TrivalentGraph& g = spec.graph();
    Plan plan;
    plan.cap = degree * spec.level();
    plan.bound = 2 * plan.cap;
    plan.interior = interior;
    plan.edge_count = g.edge_count();

    InteriorRegime regime = InteriorRegime::Free;
    if (interior)
        regime = interior_regime(spec);

    const int E = g.edge_count();
    std::vector<std::int64_t> fixed(static_cast<std::size_t>(E), -1);
    if (spec.has_fixing()) {
        const auto& r = *spec.leaf_fixing();
        const auto& leaves = g.leaf_order();
        for (std::size_t i = 0; i < leaves.size(); ++i) {
            const std::int64_t value = degree * r[i];
            fixed[static_cast<std::size_t>(leaves[i])] = value;
            if (value > plan.cap)
                plan.infeasible = true;
        }
    }

    VertexId boundary_leaf_vertex = -1;
    if (interior && regime == InteriorRegime::FixedBoundaryLeaf)
        boundary_leaf_vertex = g.incidences(g.leaf_order()[0]).front().vertex;

    // Elimination order: fixed edges first, then greedily prefer edges that
    // close a vertex, breaking ties by how many incident slots are bound.
    std::vector<int> bound_slots(static_cast<std::size_t>(g.vertex_count()), 0);
    std::vector<bool> placed(static_cast<std::size_t>(E), false);
    std::vector<EdgeId> order;
    order.reserve(static_cast<std::size_t>(E));
    auto place = [&](EdgeId e) {
        placed[static_cast<std::size_t>(e)] = true;
        order.push_back(e);
        for (const auto& inc : g.incidences(e))
            bound_slots[static_cast<std::size_t>(inc.vertex)] += inc.multiplicity;
    };
    for (EdgeId e = 0; e < E; ++e)
        if (fixed[static_cast<std::size_t>(e)] >= 0)
            place(e);
    while (static_cast<int>(order.size()) < E) {
        EdgeId best = -1;
        long best_score = -1;
        for (EdgeId e = 0; e < E; ++e) {
            if (placed[static_cast<std::size_t>(e)])
                continue;
            long score = 0;
            for (const auto& inc : g.incidences(e)) {
                const int bs = bound_slots[static_cast<std::size_t>(inc.vertex)];
                score += bs;
                if (bs + inc.multiplicity == 3)
                    score += 1000; // closes this vertex
            }
            if (score > best_score) {
                best_score = score;
                best = e;
            }
        }
        place(best);
    }

    // Position of each edge in the order, then per-step closings.
    std::vector<int> pos(static_cast<std::size_t>(E), 0);
    for (int k = 0; k < E; ++k)
        pos[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] = k;

    plan.steps.resize(static_cast<std::size_t>(E));
    for (int k = 0; k < E; ++k) {
        plan.steps[static_cast<std::size_t>(k)].edge = order[static_cast<std::size_t>(k)];
        plan.steps[static_cast<std::size_t>(k)].fixed =
            fixed[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])];
    }
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        const auto& s = g.slots(v);
        int close_at = std::max({pos[static_cast<std::size_t>(s[0])],
                                 pos[static_cast<std::size_t>(s[1])],
                                 pos[static_cast<std::size_t>(s[2])]});
        EdgeId closer = order[static_cast<std::size_t>(close_at)];
        Closing c;
        c.weak = (v == boundary_leaf_vertex);
        int mult = 0;
        std::vector<EdgeId> others;
        for (EdgeId e : s) {
            if (e == closer)
                ++mult;
            else
                others.push_back(e);
        }
        if (mult == 2) {
            c.loop = true;
            c.o1 = others[0];
        } else {
            c.o1 = others[0];
            c.o2 = others[1];
        }
        plan.steps[static_cast<std::size_t>(close_at)].closings.push_back(c);
    }
    return plan;
}

// Candidate range for the edge at `step`, given earlier assignments.
// Returns false when the range is empty.  `stride` is 1 or 2.
bool candidate_range(const Plan& plan, const Step& step, const std::int64_t* val,
                     std::int64_t& lo, std::int64_t& hi, std::int64_t& stride) {
    lo = (plan.interior && step.fixed < 0) ? 1 : 0;
    hi = plan.cap;
    int parity = -1;
    for (const Closing& c : step.closings) {
        const bool strict = plan.interior && !c.weak;
        if (c.loop) {
            const std::int64_t t = val[c.o1];
            if (t & 1)
                return false; // 2x + t can never be even
            std::int64_t l = t / 2;
            std::int64_t h = plan.cap - t / 2;
            if (strict) {
                ++l;
                --h;
            }
            lo = std::max(lo, l);
            hi = std::min(hi, h);
        } else {
            const std::int64_t a = val[c.o1];
            const std::int64_t b = val[c.o2];
            std::int64_t l = std::llabs(a - b);
            std::int64_t h = std::min(a + b, plan.bound - a - b);
            if (strict) {
                l += 2;
                h -= 2;
            }
            const int p = static_cast<int>((a + b) & 1);
            if (parity == -1)
                parity = p;
            else if (parity != p)
                return false;
            lo = std::max(lo, l);
            hi = std::min(hi, h);
        }
    }
    if (step.fixed >= 0) {
        if (step.fixed < lo || step.fixed > hi)
            return false;
        if (parity >= 0 && ((step.fixed ^ parity) & 1))
            return false;
        lo = hi = step.fixed;
        stride = 1;
        return true;
    }
    if (parity >= 0) {
        if ((lo ^ parity) & 1)
            ++lo;
        stride = 2;
    } else {
        stride = 1;
    }
    return lo <= hi;
}

// Depth-first search over plan steps starting at `from`.  `Sink::emit`
// returns false to stop the whole search early.
template <typename Sink>
bool dfs(const Plan& plan, int from, std::int64_t* val, Sink& sink,
         std::uint64_t& nodes, std::uint64_t node_limit) {
    if (from == static_cast<int>(plan.steps.size()))
        return sink.emit(val);
    const Step& step = plan.steps[static_cast<std::size_t>(from)];
    std::int64_t lo, hi, stride;
    if (!candidate_range(plan, step, val, lo, hi, stride))
        return true;
    for (std::int64_t x = lo; x <= hi; x += stride) {
        if (++nodes > node_limit)
            throw BudgetExceeded("enumeration exceeded node budget");
        val[step.edge] = x;
        if (!dfs(plan, from + 1, val, sink, nodes, node_limit))
            return false;
    }
    return true;
}

struct CountSink {
    std::uint64_t count = 0;
    bool emit(const std::int64_t*) {
        ++count;
        return true;
    }
};

struct CollectSink {
    std::vector<EdgeWeights> out;
    std::size_t max_points = std::numeric_limits<std::size_t>::max();
    int edge_count = 0;
    bool emit(const std::int64_t* val) {
        out.emplace_back(std::vector<std::int64_t>(val, val + edge_count));
        return out.size() < max_points;
    }
};

// Runs the plan with the requested worker count.  The search tree is split
// on the first non-fixed step; per-branch results are concatenated in
// branch order, so the outcome does not depend on thread scheduling.
template <typename Sink, typename Factory>
std::vector<Sink> run_plan(const Plan& plan, const EnumLimits& limits, Factory make_sink) {
    std::vector<Sink> sinks;
    if (plan.infeasible)
        return sinks;
    const int E = plan.edge_count;
    std::vector<std::int64_t> val(static_cast<std::size_t>(std::max(E, 1)), -1);

    int split = 0;
    std::uint64_t prefix_nodes = 0;
    while (split < E && plan.steps[static_cast<std::size_t>(split)].fixed >= 0) {
        const Step& step = plan.steps[static_cast<std::size_t>(split)];
        std::int64_t lo, hi, stride;
        if (!candidate_range(plan, step, val.data(), lo, hi, stride))
            return sinks; // fixing is infeasible at this degree
        ++prefix_nodes;
        val[static_cast<std::size_t>(step.edge)] = lo;
        ++split;
    }

    const int workers = std::max(1, limits.workers);
    if (workers == 1 || split >= E) {
        sinks.push_back(make_sink());
        std::uint64_t nodes = prefix_nodes;
        dfs(plan, split, val.data(), sinks.back(), nodes, limits.node_limit);
        return sinks;
    }

    const Step& step = plan.steps[static_cast<std::size_t>(split)];
    std::int64_t lo, hi, stride;
    if (!candidate_range(plan, step, val.data(), lo, hi, stride))
        return sinks;
    std::vector<std::int64_t> candidates;
    for (std::int64_t x = lo; x <= hi; x += stride)
        candidates.push_back(x);

    for (std::size_t i = 0; i < candidates.size(); ++i)
        sinks.push_back(make_sink());
    std::vector<std::uint64_t> node_counts(candidates.size(), 0);
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) {
        pool.emplace_back([&, t] {
            try {
                std::vector<std::int64_t> local = val;
                for (std::size_t i = static_cast<std::size_t>(t); i < candidates.size();
                     i += static_cast<std::size_t>(workers)) {
                    local[static_cast<std::size_t>(step.edge)] = candidates[i];
                    std::uint64_t nodes = 1;
                    dfs(plan, split + 1, local.data(), sinks[i], nodes, limits.node_limit);
                    node_counts[i] = nodes;
                }
            } catch (...) {
                errors[static_cast<std::size_t>(t)] = std::current_exception();
            }
        });
    }
    for (auto& th : pool)
        th.join();
    for (const auto& err : errors)
        if (err)
            std::rethrow_exception(err);
    std::uint64_t total = prefix_nodes;
    for (std::uint64_t c : node_counts)
        total += c;
    if (total > limits.node_limit)
        throw BudgetExceeded("enumeration exceeded node budget");
    return sinks;
}

} // namespace

std::vector<EdgeWeights> enumerate_lattice_points(const PolytopeSpec& spec, std::int64_t degree,
                                                  bool interior_only, const EnumLimits& limits) {
    if (degree <= 0)
        throw ShapeMismatch("degree must be positive");
    Plan plan = build_plan(spec, degree, interior_only);
    auto sinks = run_plan<CollectSink>(plan, limits, [&] {
        CollectSink s;
        s.edge_count = plan.edge_count;
        return s;
    });
    std::vector<EdgeWeights> out;
    std::size_t total = 0;
    for (const auto& s : sinks)
        total += s.out.size();
    out.reserve(total);
    for (auto& s : sinks)
        for (auto& p : s.out)
            out.push_back(std::move(p));
    std::sort(out.begin(), out.end());
    return out;
}

std::uint64_t count_lattice_points(const PolytopeSpec& spec, std::int64_t degree,
                                   bool interior_only, const EnumLimits& limits) {
    if (degree <= 0)
        throw ShapeMismatch("degree must be positive");
    Plan plan = build_plan(spec, degree, interior_only);
    auto sinks = run_plan<CountSink>(plan, limits, [] { return CountSink{}; });
    std::uint64_t total = 0;
    for (const auto& s : sinks)
        total += s.count;
    return total;
}

std::vector<EdgeWeights> some_lattice_points(const PolytopeSpec& spec, std::int64_t degree,
                                             std::size_t max_points, bool interior_only,
                                             const EnumLimits& limits) {
    if (degree <= 0)
        throw ShapeMismatch("degree must be positive");
    if (max_points == 0)
        return {};
    Plan plan = build_plan(spec, degree, interior_only);
    CollectSink sink;
    sink.max_points = max_points;
    sink.edge_count = plan.edge_count;
    if (!plan.infeasible) {
        std::vector<std::int64_t> val(static_cast<std::size_t>(std::max(plan.edge_count, 1)), -1);
        std::uint64_t nodes = 0;
        dfs(plan, 0, val.data(), sink, nodes, limits.node_limit);
    }
    return std::move(sink.out);
}

EdgeWeights omega(const TrivalentGraph& graph) {
    return EdgeWeights(std::vector<std::int64_t>(static_cast<std::size_t>(graph.edge_count()), 2));
}

GradedPoint omega_at_level(const TrivalentGraph& graph, std::int64_t level) {
    if (level <= 0 || 4 % level != 0)
        throw LevelMismatch("the all-twos weight lives at ambient level 4; level " +
                            std::to_string(level) + " does not divide it");
    return GradedPoint{4 / level, omega(graph)};
}

std::optional<GradedPoint> decompose(const GradedPoint& v, const GradedPoint& w,
                                     const PolytopeSpec& spec) {
    const std::int64_t degree = v.degree - w.degree;
    if (degree < 0)
        return std::nullopt;
    if (v.weights.size() != w.weights.size())
        throw ShapeMismatch("graded points over different edge sets");
    EdgeWeights u;
    u.w.resize(v.weights.size());
    for (std::size_t i = 0; i < u.w.size(); ++i) {
        u.w[i] = v.weights[i] - w.weights[i];
        if (u.w[i] < 0)
            return std::nullopt;
    }
    if (degree == 0) {
        for (std::int64_t x : u.w)
            if (x != 0)
                return std::nullopt;
        return GradedPoint{0, std::move(u)};
    }
    if (!satisfies(u, spec, degree) || !in_lattice(u, spec.graph()))
        return std::nullopt;
    return GradedPoint{degree, std::move(u)};
}

} // namespace spinpoly
