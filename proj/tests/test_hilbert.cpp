#include <doctest.h>

#include <vector>

#include "naive_oracle.hpp"
#include "spinpoly/hilbert.hpp"

using namespace spinpoly;

namespace {

// Brute-force trinode admissibility over the full box, used as the oracle
// for the fusion rule.
int naive_fusion(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t L) {
    PolytopeSpec spec(build_named(NamedGraph::Trinode), L);
    EdgeWeights w(std::vector<std::int64_t>{a, b, c});
    if (a < 0 || b < 0 || c < 0)
        return 0;
    if (a > L || b > L || c > L)
        return 0; // outside the box; the rule bounds weights by the level
    return satisfies(w, spec, 1) && in_lattice(w, spec.graph()) ? 1 : 0;
}

// Expand h(t) / (1 - t^p)^d as a power series and compare with values.
bool reproduces_values(const HilbertData& h) {
    REQUIRE(h.hstar.has_value());
    const std::size_t n = h.values.size();
    std::vector<BigInt> series(n, 0);
    for (std::size_t i = 0; i < h.hstar->size() && i < n; ++i)
        series[i] = (*h.hstar)[i];
    // multiply d times by 1/(1 - t^p), i.e. running sums with stride p
    for (int rep = 0; rep < h.ring_dim; ++rep)
        for (std::size_t k = static_cast<std::size_t>(h.denominator_period); k < n; ++k)
            series[k] += series[k - static_cast<std::size_t>(h.denominator_period)];
    return series == h.values;
}

std::vector<BigInt> big(std::initializer_list<long long> xs) {
    std::vector<BigInt> out;
    for (long long x : xs)
        out.emplace_back(x);
    return out;
}

} // namespace

TEST_CASE("fusion rule examples") {
    for (std::int64_t L = 0; L <= 5; ++L)
        CHECK(fusion_trinode(0, 0, 0, L) == 1);
    CHECK(fusion_trinode(1, 1, 1, 1) == 0); // odd sum
    for (std::int64_t L = 1; L <= 5; ++L)
        CHECK(fusion_trinode(L, L, 0, L) == 1);
    CHECK(fusion_trinode(2, 0, 0, 2) == 0); // triangle fails
    CHECK(fusion_trinode(-1, 1, 0, 2) == 0);
}

TEST_CASE("fusion rule agrees with brute-force membership for L <= 6") {
    for (std::int64_t L = 0; L <= 6; ++L)
        for (std::int64_t a = 0; a <= L; ++a)
            for (std::int64_t b = 0; b <= L; ++b)
                for (std::int64_t c = 0; c <= L; ++c) {
                    CAPTURE(a);
                    CAPTURE(b);
                    CAPTURE(c);
                    CAPTURE(L);
                    CHECK(fusion_trinode(a, b, c, L) == naive_fusion(a, b, c, L));
                }
}

TEST_CASE("psi methods agree and match the cut oracle") {
    MemoCache cache;
    for (int g = 0; g <= 2; ++g) {
        for (int n = 0; n <= 2; ++n) {
            for (std::int64_t L = 1; L <= 3; ++L) {
                std::vector<std::int64_t> r(static_cast<std::size_t>(n), 0);
                for (;;) {
                    CAPTURE(g);
                    CAPTURE(n);
                    CAPTURE(L);
                    const BigInt by_enum = psi(g, n, r, L, PsiMethod::Enumerate);
                    const BigInt by_rec = psi(g, n, r, L, PsiMethod::Recurse, &cache);
                    CHECK(by_enum == by_rec);
                    if (g >= 1)
                        CHECK(genus_cut_count(g, n, r, L, &cache) == by_enum);
                    int i = n - 1;
                    while (i >= 0 && r[static_cast<std::size_t>(i)] == L) {
                        r[static_cast<std::size_t>(i)] = 0;
                        --i;
                    }
                    if (i < 0)
                        break;
                    ++r[static_cast<std::size_t>(i)];
                }
            }
        }
    }
}

TEST_CASE("psi base facts") {
    CHECK(psi(2, 0, {}, 1) == 4); // theta-family count at level 1
    CHECK(psi(0, 0, {}, 3) == 1);
    // vacuum propagation on sampled signatures
    const std::vector<std::int64_t> r{2, 1};
    std::vector<std::int64_t> padded{2, 1, 0};
    CHECK(psi(2, 3, padded, 3) == psi(2, 2, r, 3));
    // psi for 0 <= r <= L <= 6 equals the fusion rule at genus 0, n = 3,
    // whichever method computes it
    for (std::int64_t L = 0; L <= 6; ++L)
        for (std::int64_t a = 0; a <= L; ++a)
            for (std::int64_t b = 0; b <= L; ++b)
                for (std::int64_t c = 0; c <= L; ++c) {
                    const std::vector<std::int64_t> r{a, b, c};
                    CHECK(psi(0, 3, r, L) == fusion_trinode(a, b, c, L));
                    CHECK(psi(0, 3, r, L, PsiMethod::Enumerate) == fusion_trinode(a, b, c, L));
                }
}

TEST_CASE("genus cut identity instances") {
    MemoCache cache;
    BigInt direct = 0;
    for (std::int64_t a = 0; a <= 1; ++a)
        direct += psi(1, 2, std::vector<std::int64_t>{a, a}, 1, PsiMethod::Enumerate);
    CHECK(direct == 4);
    CHECK(genus_cut_count(2, 0, {}, 1, &cache) == 4);
    CHECK(genus_cut_count(2, 1, std::vector<std::int64_t>{2}, 4, &cache) ==
          psi(2, 1, std::vector<std::int64_t>{2}, 4, PsiMethod::Enumerate));
    CHECK_THROWS_AS(genus_cut_count(0, 3, std::vector<std::int64_t>{0, 0, 0}, 2), NotApplicable);
}

TEST_CASE("memo cache integrity") {
    MemoCache cache;
    PsiKey key{1, 2, {1, 1}};
    cache.store(key, 7);
    cache.store(key, 7); // idempotent
    CHECK_THROWS_AS(cache.store(key, 8), IntegrityError);
    CHECK(*cache.lookup(key) == 7);
}

TEST_CASE("hilbert values match the naive oracle on small specs") {
    PolytopeSpec theta(build_named(NamedGraph::Theta), 1);
    const HilbertData h = hilbert_function(theta, 4);
    for (std::int64_t N = 1; N <= 4; ++N)
        CHECK(h.values[static_cast<std::size_t>(N)] ==
              BigInt(spinpoly::testing::naive_count(theta, N)));
}

TEST_CASE("hilbert data for the theta family") {
    PolytopeSpec theta1(build_named(NamedGraph::Theta), 1);
    HilbertData h1 = hilbert_function(theta1, 12);
    CHECK(h1.values[0] == 1);
    CHECK(h1.values[1] == 4);
    CHECK(h1.values[2] == 10);
    CHECK(h1.values[3] == 20);
    CHECK(h1.ring_dim == 4);
    CHECK(h1.denominator_period == 1);
    REQUIRE(h1.hstar.has_value());
    CHECK(*h1.hstar == big({1}));
    CHECK(reproduces_values(h1));
    StanleyResult s1 = stanley_check(h1);
    CHECK(s1.symmetric);
    CHECK(*s1.a_invariant == -4);

    HilbertData h2 = hilbert_function(PolytopeSpec(build_named(NamedGraph::Theta), 2), 12);
    REQUIRE(h2.hstar.has_value());
    CHECK(*h2.hstar == big({1, 6, 1}));
    CHECK(reproduces_values(h2));
    CHECK(stanley_check(h2).symmetric);
    CHECK(*stanley_check(h2).a_invariant == -2);

    HilbertData h4 = hilbert_function(PolytopeSpec(build_named(NamedGraph::Theta), 4), 12);
    REQUIRE(h4.hstar.has_value());
    CHECK(*h4.hstar == big({1, 31, 31, 1}));
    CHECK(reproduces_values(h4));
    CHECK(stanley_check(h4).symmetric);
    CHECK(*stanley_check(h4).a_invariant == -1);

    HilbertData h3 = hilbert_function(PolytopeSpec(build_named(NamedGraph::Theta), 3), 12);
    REQUIRE(h3.hstar.has_value());
    CHECK(*h3.hstar == big({1, 16, 10}));
    CHECK(reproduces_values(h3));
    CHECK_FALSE(stanley_check(h3).symmetric);
}

TEST_CASE("zero-dimensional slice") {
    PolytopeSpec spec(build_named(NamedGraph::Trinode), 1, std::vector<std::int64_t>{0, 0, 0});
    const HilbertData h = hilbert_function(spec, 8);
    for (const auto& v : h.values)
        CHECK(v == 1);
    CHECK(h.ring_dim == 1);
    REQUIRE(h.hstar.has_value());
    CHECK(*h.hstar == big({1}));
    StanleyResult s = stanley_check(h);
    CHECK(s.symmetric);
    CHECK(*s.a_invariant == -1);
}

TEST_CASE("empty cone collapses to the ground field") {
    // leaf weight above the level: every positive degree is empty
    PolytopeSpec spec(build_caterpillar(2, 1), 1, std::vector<std::int64_t>{3});
    const HilbertData h = hilbert_function(spec, 6);
    CHECK(h.values[0] == 1);
    for (std::size_t k = 1; k < h.values.size(); ++k)
        CHECK(h.values[k] == 0);
    CHECK(h.ring_dim == 0);
    REQUIRE(h.hstar.has_value());
    StanleyResult s = stanley_check(h);
    CHECK(s.symmetric);
    CHECK(*s.a_invariant == 0);
}

TEST_CASE("period-2 slice: caterpillar(2,1) with r=(1) at level 2") {
    PolytopeSpec spec(build_caterpillar(2, 1), 2, std::vector<std::int64_t>{1});
    const HilbertData h = hilbert_function(spec, 16);
    CHECK(h.values[1] == 0);
    CHECK(h.values[2] == 45);
    CHECK(h.values[3] == 0);
    CHECK(h.values[4] == 325);
    CHECK(h.ring_dim == 5);
    CHECK(h.denominator_period == 2);
    REQUIRE(h.hstar.has_value());
    CHECK(*h.hstar == big({1, 0, 40, 0, 110, 0, 40, 0, 1}));
    CHECK(reproduces_values(h));
    StanleyResult s = stanley_check(h);
    CHECK(s.symmetric);
    CHECK(*s.a_invariant == -2);
}

TEST_CASE("caterpillar(2,2) with r=(1,1) at level 2") {
    PolytopeSpec spec(build_caterpillar(2, 2), 2, std::vector<std::int64_t>{1, 1});
    const HilbertData h = hilbert_function(spec, 16);
    CHECK(h.values[1] == 16);
    CHECK(h.values[2] == 99);
    CHECK(h.ring_dim == 6);
    CHECK(h.denominator_period == 1);
    REQUIRE(h.hstar.has_value());
    CHECK(*h.hstar == big({1, 10, 18, 10, 1}));
    CHECK(reproduces_values(h));
    CHECK(stanley_check(h).symmetric);
    CHECK(*stanley_check(h).a_invariant == -2);
}

TEST_CASE("non-palindromic fixed-weight case") {
    PolytopeSpec spec(build_caterpillar(2, 1), 3, std::vector<std::int64_t>{1});
    const HilbertData h = hilbert_function(spec, 16);
    REQUIRE(h.hstar.has_value());
    CHECK(reproduces_values(h));
    CHECK_FALSE(stanley_check(h).symmetric);
}

TEST_CASE("extraction fails gracefully when the table is too short") {
    PolytopeSpec spec(build_named(NamedGraph::Theta), 2);
    const HilbertData h = hilbert_function(spec, 3); // far below what certification needs
    CHECK_FALSE(h.hstar.has_value());
    CHECK_THROWS_AS(stanley_check(h), ExtractionFailed);
}
