#ifndef SPINPOLY_GORENSTEIN_HPP
#define SPINPOLY_GORENSTEIN_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "spinpoly/polytope.hpp"

namespace spinpoly {

enum class Verdict { Gorenstein, NotGorenstein, InconclusiveUpToBound };
enum class Method { Semigroup, OmegaStructure, TheoremFastpath };

std::string verdict_name(Verdict v);
std::string method_name(Method m);

// Two distinct interior points at one degree: the canonical module needs at
// least two generators there.
struct TwoInteriorPoints {
    std::int64_t degree = 0;
    EdgeWeights a, b;
};

// An interior point that is not generator + semigroup element.
struct FailedDecomposition {
    GradedPoint v;
    GradedPoint generator;
};

using Witness = std::variant<TwoInteriorPoints, FailedDecomposition>;

struct GorensteinCertificate {
    Verdict verdict = Verdict::InconclusiveUpToBound;
    Method method = Method::Semigroup;
    std::optional<GradedPoint> generator; // unique minimal interior point, when one exists
    std::optional<std::int64_t> a_invariant; // minus the generator degree
    std::optional<Witness> witness;       // present for every NotGorenstein verdict
    std::int64_t checked_bound = 0;       // highest degree examined
    bool crosschecked = false;            // fast-path verdicts re-derived by degree search
    std::string note;
    std::optional<PolytopeSpec> spec;     // the (reduced) spec the verdict is about
};

struct GorensteinBudget {
    std::int64_t max_degree = 0; // 0: use 2a+8 once the minimal interior degree a is known
    EnumLimits limits;
};

// Smallest degree <= max_degree whose interior point set is nonempty,
// together with that set.  Propagates UnsupportedRegime.
std::optional<std::pair<std::int64_t, std::vector<EdgeWeights>>>
minimal_interior_degree(const PolytopeSpec& spec, std::int64_t max_degree,
                        const EnumLimits& limits = {});

// Pure degree-bounded search: find the minimal interior degree, demand a
// unique point there, and decompose every interior point at higher degrees
// through it.  Positive outcomes are only ever InconclusiveUpToBound.
GorensteinCertificate check_semigroup_criterion(const PolytopeSpec& spec,
                                                std::int64_t max_degree = 0,
                                                const EnumLimits& limits = {});

// Unconditional verdict for leaf-free specs: interior points at every level
// are the all-twos weight plus the points four levels down, so the verdict
// only depends on whether level*a == 4 at the minimal interior degree a.
// The structural identity is re-verified by double enumeration at small
// degrees.
GorensteinCertificate check_via_omega_structure(const TrivalentGraph& graph, std::int64_t level,
                                                const EnumLimits& limits = {});

// A second lattice point of the same spec and degree, distinct from w.
// Requires the caterpillar family with g >= 2 and n >= 1; throws
// NotApplicable otherwise, and Error when w is provably the only point.
EdgeWeights two_point_witness(const PolytopeSpec& spec, const EdgeWeights& w,
                              std::int64_t degree, const EnumLimits& limits = {});

// Full classification for a weight signature: reduces (r, level) to its
// canonical form, dispatches on the reduced shape, and cross-checks every
// fast-path verdict against the degree-bounded search within budget.
GorensteinCertificate classify(int g, int n, std::span<const std::int64_t> r, std::int64_t level,
                               const GorensteinBudget& budget = {});

// Re-checks a certificate's claims from its embedded spec and witness data
// using only the polytope-level operations.
bool revalidate(const GorensteinCertificate& cert, const EnumLimits& limits = {});

} // namespace spinpoly

#endif
