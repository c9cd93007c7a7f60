#ifndef SPINPOLY_POLYTOPE_HPP
#define SPINPOLY_POLYTOPE_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "spinpoly/graph.hpp"

namespace spinpoly {

// A weight per edge, indexed by edge id.  Comparison is lexicographic in
// edge-id order, which is the canonical order for all point lists.
struct EdgeWeights {
    std::vector<std::int64_t> w;

    EdgeWeights() = default;
    explicit EdgeWeights(std::vector<std::int64_t> values) : w(std::move(values)) {}

    std::size_t size() const { return w.size(); }
    std::int64_t operator[](std::size_t i) const { return w[i]; }
    std::int64_t& operator[](std::size_t i) { return w[i]; }

    friend bool operator==(const EdgeWeights&, const EdgeWeights&) = default;
    friend auto operator<=>(const EdgeWeights& a, const EdgeWeights& b) {
        return a.w <=> b.w;
    }
};

// The constraint system: a graph, a level, and optionally fixed leaf values.
// At degree N the system reads: w >= 0, triangle inequalities at every
// vertex (loops contribute their value twice), vertex sums <= 2*N*level,
// and w(leaf_i) == N*r_i when the fixing is present.
class PolytopeSpec {
public:
    PolytopeSpec(TrivalentGraph graph, std::int64_t level,
                 std::optional<std::vector<std::int64_t>> leaf_fixing = std::nullopt);

    const TrivalentGraph& graph() const { return graph_; }
    std::int64_t level() const { return level_; }
    bool has_fixing() const { return leaf_fixing_.has_value(); }
    const std::optional<std::vector<std::int64_t>>& leaf_fixing() const { return leaf_fixing_; }

private:
    TrivalentGraph graph_;
    std::int64_t level_;
    std::optional<std::vector<std::int64_t>> leaf_fixing_;
};

// A lattice point together with the degree of the graded piece it lives in.
struct GradedPoint {
    std::int64_t degree = 1;
    EdgeWeights weights;

    friend bool operator==(const GradedPoint&, const GradedPoint&) = default;
};

struct EnumLimits {
    std::uint64_t node_limit = 400'000'000; // backtracking nodes before BudgetExceeded
    int workers = 1;                        // search-tree split; output is worker-count independent
};

// The regimes in which strictness of the defining inequalities is known to
// characterize relative interior points.
enum class InteriorRegime {
    Free,               // no leaf fixing, any graph
    FixedInterior,      // caterpillar family, all 0 < r_i < level
    FixedBoundaryLeaf,  // caterpillar family, n == 1, r_1 == level, g >= 2
};

// Decides the regime for a spec, or throws UnsupportedRegime.
InteriorRegime interior_regime(const PolytopeSpec& spec);

// Conditions 1-4 at the given degree (real constraint check, no parity).
bool satisfies(const EdgeWeights& w, const PolytopeSpec& spec, std::int64_t degree);

// Integrality plus even vertex sums (loop weights counted twice).
bool in_lattice(const EdgeWeights& w, const TrivalentGraph& graph);

// Relative interiority via strict inequalities; only valid inside an
// InteriorRegime, otherwise throws UnsupportedRegime.
bool is_interior(const EdgeWeights& w, const PolytopeSpec& spec, std::int64_t degree);

// All lattice points of the degree-N piece, canonically sorted.
std::vector<EdgeWeights> enumerate_lattice_points(const PolytopeSpec& spec, std::int64_t degree,
                                                  bool interior_only = false,
                                                  const EnumLimits& limits = {});

// Point count without materializing the set.
std::uint64_t count_lattice_points(const PolytopeSpec& spec, std::int64_t degree,
                                   bool interior_only = false,
                                   const EnumLimits& limits = {});

// Up to max_points lattice points in deterministic (but unsorted) search
// order; used by witness searches that only need a couple of points.
std::vector<EdgeWeights> some_lattice_points(const PolytopeSpec& spec, std::int64_t degree,
                                             std::size_t max_points, bool interior_only = false,
                                             const EnumLimits& limits = {});

// The weight assigning 2 to every edge; lives at ambient level 4.
EdgeWeights omega(const TrivalentGraph& graph);

// omega as a graded point over a level-L spec: degree 4/L.  Throws
// LevelMismatch unless L divides 4.
GradedPoint omega_at_level(const TrivalentGraph& graph, std::int64_t level);

// v - w as a graded point of the spec at degree v.degree - w.degree, or
// nullopt if the difference leaves the graded semigroup.  Degree 0 admits
// only the zero point.
std::optional<GradedPoint> decompose(const GradedPoint& v, const GradedPoint& w,
                                     const PolytopeSpec& spec);

} // namespace spinpoly

#endif
