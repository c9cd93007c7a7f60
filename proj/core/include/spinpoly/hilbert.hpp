#ifndef SPINPOLY_HILBERT_HPP
#define SPINPOLY_HILBERT_HPP

#include <cstdint>
#include <mutex>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "spinpoly/polytope.hpp"

namespace spinpoly {

// Counts are exact and can outgrow machine words; everything series-level
// uses arbitrary precision.
using BigInt = boost::multiprecision::cpp_int;

// The 0/1 weight-triple admissibility rule at a single trinode: nonnegative,
// even sum, triangle inequalities, sum at most 2*level.
int fusion_trinode(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t level);

// Canonical memo key: zeros dropped, remaining weights sorted ascending.
struct PsiKey {
    int g = 0;
    std::int64_t level = 0;
    std::vector<std::int64_t> r;

    friend bool operator==(const PsiKey&, const PsiKey&) = default;
};

struct PsiKeyHash {
    std::size_t operator()(const PsiKey& k) const;
};

// Thread-safe memo for the weighted counts.  Re-inserting a key with a
// different value is a fatal integrity error.
class MemoCache {
public:
    std::optional<BigInt> lookup(const PsiKey& key) const;
    void store(const PsiKey& key, const BigInt& value);
    std::size_t size() const;
    std::vector<std::pair<PsiKey, BigInt>> snapshot() const; // sorted by key

private:
    mutable std::mutex mutex_;
    std::unordered_map<PsiKey, BigInt, PsiKeyHash> map_;
};

enum class PsiMethod { Enumerate, Recurse };

// The weighted count for genus g with n leaf weights r at the given level:
// the number of admissible weightings of any trivalent graph with first
// Betti number g and n leaves.  Enumerate counts a caterpillar directly;
// Recurse splits off leaf pairs through the trinode rule and bottoms out in
// enumeration (or the trinode rule itself when g == 0).
BigInt psi(int g, int n, std::span<const std::int64_t> r, std::int64_t level,
           PsiMethod method = PsiMethod::Recurse, MemoCache* cache = nullptr,
           const EnumLimits& limits = {});

// Cross-check oracle: opens one loop of the genus-g graph and sums over the
// weight carried by the cut edge.  Never used as a primary computation path.
BigInt genus_cut_count(int g, int n, std::span<const std::int64_t> r, std::int64_t level,
                       MemoCache* cache = nullptr, const EnumLimits& limits = {});

struct HilbertData {
    std::vector<BigInt> values; // values[N] = point count at degree N, values[0] = 1
    int ring_dim = 0;           // lattice rank of point differences + 1
    int denominator_period = 1; // 1 or 2
    std::optional<std::vector<BigInt>> hstar; // numerator over (1 - t^period)^ring_dim
};

// Exact counts for degrees 0..n_max on the given spec, with the series
// numerator extracted when the truncation is long enough to certify it.
HilbertData hilbert_function(const PolytopeSpec& spec, std::int64_t n_max,
                             const EnumLimits& limits = {});

struct StanleyResult {
    bool symmetric = false;                 // numerator coefficients form a palindrome
    std::optional<std::int64_t> a_invariant; // deg(numerator) - ring_dim * period
};

// Palindromicity of the extracted numerator; throws ExtractionFailed when
// hilbert_function could not certify a numerator.
StanleyResult stanley_check(const HilbertData& data);

} // namespace spinpoly

#endif
