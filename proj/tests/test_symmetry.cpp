#include <doctest.h>

#include <algorithm>

#include "spinpoly/symmetry.hpp"

using namespace spinpoly;

namespace {

WeightSignature sig(int g, std::vector<std::int64_t> r, std::int64_t level) {
    WeightSignature s;
    s.g = g;
    s.n = static_cast<int>(r.size());
    s.r = std::move(r);
    s.level = level;
    return s;
}

// Alternate reduction order: flip against the smallest partner instead of
// the largest; used to probe confluence.
WeightSignature normalize_alt(WeightSignature s) {
    std::sort(s.r.begin(), s.r.end());
    for (;;) {
        s.r.erase(std::remove(s.r.begin(), s.r.end(), std::int64_t{0}), s.r.end());
        auto it = std::find(s.r.begin(), s.r.end(), s.level);
        if (it != s.r.end() && s.r.size() >= 2) {
            // partner: smallest entry other than this one
            *it = 0;
            auto smallest = std::min_element(s.r.begin(), s.r.end(),
                                             [](std::int64_t a, std::int64_t b) {
                                                 if (a == 0)
                                                     return false;
                                                 if (b == 0)
                                                     return true;
                                                 return a < b;
                                             });
            *smallest = s.level - *smallest;
            std::sort(s.r.begin(), s.r.end());
            continue;
        }
        break;
    }
    std::sort(s.r.begin(), s.r.end());
    s.n = static_cast<int>(s.r.size());
    return s;
}

} // namespace

TEST_CASE("trinode flip is an involution preserving admissibility") {
    for (std::int64_t L = 0; L <= 6; ++L)
        for (std::int64_t a = 0; a <= L; ++a)
            for (std::int64_t b = 0; b <= L; ++b)
                for (std::int64_t c = 0; c <= L; ++c) {
                    const auto f = trinode_flip(a, b, c, L);
                    const auto ff = trinode_flip(f[0], f[1], f[2], L);
                    CHECK(ff == std::array<std::int64_t, 3>{a, b, c});
                    CHECK(fusion_trinode(a, b, c, L) == fusion_trinode(f[0], f[1], f[2], L));
                }
}

TEST_CASE("trinode flip examples") {
    CHECK(trinode_flip(0, 0, 0, 3) == std::array<std::int64_t, 3>{3, 3, 0});
    CHECK(trinode_flip(3, 3, 0, 3) == std::array<std::int64_t, 3>{0, 0, 0});
    CHECK(trinode_flip(1, 0, 1, 2) == std::array<std::int64_t, 3>{1, 2, 1});
}

TEST_CASE("normalize: vacuum drop to the one-marked-point form") {
    const auto out = normalize(sig(2, {0, 3}, 3));
    CHECK(out.n == 1);
    CHECK(out.r == std::vector<std::int64_t>{3});
    CHECK(out.level == 3);
}

TEST_CASE("normalize: flip reduces a level-valued weight") {
    const auto out = normalize(sig(2, {4, 1}, 4));
    CHECK(out.n == 1);
    CHECK(out.r == std::vector<std::int64_t>{3}); // (4,1) -> (0,3) -> (3)
}

TEST_CASE("normalize: interior weights are a fixed point") {
    const auto out = normalize(sig(2, {2, 2}, 4));
    CHECK(out.n == 2);
    CHECK(out.r == std::vector<std::int64_t>{2, 2});
}

TEST_CASE("normalize: all-level weights collapse in pairs") {
    CHECK(normalize(sig(2, {3, 3}, 3)).n == 0);
    const auto odd = normalize(sig(2, {3, 3, 3}, 3));
    CHECK(odd.n == 1);
    CHECK(odd.r == std::vector<std::int64_t>{3});
}

TEST_CASE("normalize terminal shapes") {
    for (int g : {1, 2, 3})
        for (std::int64_t L = 1; L <= 4; ++L)
            for (std::int64_t r1 = 0; r1 <= L; ++r1)
                for (std::int64_t r2 = 0; r2 <= L; ++r2)
                    for (std::int64_t r3 = 0; r3 <= L; ++r3) {
                        const auto out = normalize(sig(g, {r1, r2, r3}, L));
                        const bool all_interior =
                            std::all_of(out.r.begin(), out.r.end(),
                                        [&](std::int64_t v) { return 0 < v && v < L; });
                        const bool one_at_level = out.n == 1 && out.r[0] == L;
                        CHECK((out.n == 0 || all_interior || one_at_level));
                        CHECK(std::is_sorted(out.r.begin(), out.r.end()));
                    }
}

TEST_CASE("normalize preserves the count") {
    for (std::int64_t L = 1; L <= 3; ++L)
        for (std::int64_t r1 = 0; r1 <= L; ++r1)
            for (std::int64_t r2 = 0; r2 <= L; ++r2) {
                const auto in = sig(2, {r1, r2}, L);
                const auto out = normalize(in);
                const BigInt lhs = psi(2, in.n, in.r, L, PsiMethod::Enumerate);
                const BigInt rhs = psi(2, out.n, out.r, L, PsiMethod::Enumerate);
                CAPTURE(r1);
                CAPTURE(r2);
                CAPTURE(L);
                CHECK(lhs == rhs);
            }
}

TEST_CASE("reduction order changes the terminal form only up to pair flips") {
    // Different flip-partner choices can reach different terminal weight
    // multisets (e.g. (4,3,2) at level 4 reaches (1,2) or (2,3)), but the
    // leaf count and the count itself always agree.
    for (std::int64_t L = 1; L <= 4; ++L)
        for (std::int64_t r1 = 0; r1 <= L; ++r1)
            for (std::int64_t r2 = 0; r2 <= L; ++r2)
                for (std::int64_t r3 = 0; r3 <= L; ++r3) {
                    const auto a = normalize(sig(2, {r1, r2, r3}, L));
                    const auto b = normalize_alt(sig(2, {r1, r2, r3}, L));
                    CAPTURE(r1);
                    CAPTURE(r2);
                    CAPTURE(r3);
                    CAPTURE(L);
                    CHECK(a.n == b.n);
                    CHECK(psi(a.g, a.n, a.r, L, PsiMethod::Enumerate) ==
                          psi(b.g, b.n, b.r, L, PsiMethod::Enumerate));
                }
}

TEST_CASE("normalize input validation") {
    CHECK_THROWS_AS(normalize(sig(0, {0, 0, 1, 1}, 2)), InfeasibleSignature); // drops below 3
    CHECK_THROWS_AS(normalize(sig(2, {5}, 4)), InfeasibleSignature);          // r > level
    CHECK_THROWS_AS(normalize(sig(-1, {}, 2)), InfeasibleSignature);
    // genus 0 with enough surviving leaves is fine
    CHECK(normalize(sig(0, {1, 1, 1, 0}, 2)).n == 3);
}

TEST_CASE("normalize trace names each rewrite") {
    const auto trace = normalize_traced(sig(2, {4, 1, 0}, 4));
    CHECK(trace.result.r == std::vector<std::int64_t>{3});
    CHECK(trace.steps.size() >= 2); // at least one drop and one flip
}

TEST_CASE("identity suite is clean on a small grid") {
    SampleSpace space;
    space.max_g = 1;
    space.max_n = 2;
    space.max_level = 2;
    space.max_degree = 2;
    const auto report = verify_identities(space);
    CHECK(report.clean());
    CHECK(report.checks > 100);
}

TEST_CASE("verifier self-test: an injected fault is reported") {
    SampleSpace space;
    space.max_g = 0;
    space.max_n = 1;
    space.max_level = 1;
    testing_hooks::vacuum_check_skew = 1;
    const auto broken = verify_identity(Identity::Vacuum, space);
    testing_hooks::vacuum_check_skew = 0;
    CHECK_FALSE(broken.clean());
    CHECK(broken.violations.size() == broken.checks);
    CHECK(verify_identity(Identity::Vacuum, space).clean());
}

TEST_CASE("single-identity entry point") {
    SampleSpace space;
    space.max_g = 2;
    space.max_n = 2;
    space.max_level = 2;
    const auto report = verify_identity(Identity::Factorization, space);
    CHECK(report.clean());
    CHECK(report.checks > 0);
}
