#ifndef SPINPOLY_SYMMETRY_HPP
#define SPINPOLY_SYMMETRY_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "spinpoly/hilbert.hpp"

namespace spinpoly {

// The level involution on a trinode triple: (x, y, z) -> (L-x, L-y, z).
// Preserves admissibility in both directions.
std::array<std::int64_t, 3> trinode_flip(std::int64_t a, std::int64_t b, std::int64_t c,
                                         std::int64_t level);

struct WeightSignature {
    int g = 0;
    int n = 0;
    std::vector<std::int64_t> r; // ascending after normalization
    std::int64_t level = 0;

    friend bool operator==(const WeightSignature&, const WeightSignature&) = default;
};

struct NormalizeTrace {
    WeightSignature result;
    std::vector<std::string> steps;
};

// Canonical reduction: drop zero weights, flip (level, r_j) pairs down to
// (0, level - r_j), sort.  Terminates with all weights strictly between 0
// and the level, or a single weight equal to the level, or no weights.
// The count is preserved at every step.  Throws InfeasibleSignature when a
// genus-0 signature drops below three leaves.
WeightSignature normalize(const WeightSignature& sig);
NormalizeTrace normalize_traced(const WeightSignature& sig);

enum class Identity {
    Vacuum,            // appending a zero weight changes nothing
    Permutation,       // reordering weights changes nothing
    Factorization,     // splitting two weights off through a trinode
    PairFlip,          // (r1, r2) -> (L-r1, L-r2)
    GradedFlip,        // the same at scaled degrees
    GraphIndependence, // counts depend only on (g, n)
};

std::string identity_name(Identity id);

struct IdentityViolation {
    std::string identity;
    std::string detail;
};

struct SampleSpace {
    int max_g = 2;
    int max_n = 3;
    std::int64_t max_level = 4;
    std::int64_t max_degree = 2; // graded checks and graph-independence degrees
};

struct VerifyReport {
    std::uint64_t checks = 0;
    std::vector<IdentityViolation> violations;

    bool clean() const { return violations.empty(); }
};

// Evaluates one identity as exact count equalities over the sample space.
// Both sides are computed by direct enumeration so the identity is a real
// cross-check rather than a tautology of the recursion.
VerifyReport verify_identity(Identity id, const SampleSpace& space, MemoCache* cache = nullptr,
                             const EnumLimits& limits = {});

namespace testing_hooks {
// Harness self-test: a nonzero skew is added to one side of every vacuum
// check, so the verifier must report violations.  Never set outside tests.
extern std::int64_t vacuum_check_skew;
} // namespace testing_hooks

// All identities; violations are concatenated.
VerifyReport verify_identities(const SampleSpace& space, MemoCache* cache = nullptr,
                               const EnumLimits& limits = {});

} // namespace spinpoly

#endif
