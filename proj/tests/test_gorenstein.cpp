#include <doctest.h>

#include <algorithm>

#include "spinpoly/gorenstein.hpp"
#include "spinpoly/json_io.hpp"

using namespace spinpoly;

namespace {

GorensteinCertificate classify_v(int g, std::vector<std::int64_t> r, std::int64_t level) {
    return classify(g, static_cast<int>(r.size()), r, level, {});
}

// Serialize, parse back, and re-check: certificates must be self-contained.
bool revalidates_from_json(const GorensteinCertificate& cert) {
    const Json j = certificate_to_json(cert);
    return revalidate(certificate_from_json(j));
}

} // namespace

TEST_CASE("minimal interior degree on the theta family") {
    auto m1 = minimal_interior_degree(PolytopeSpec(build_named(NamedGraph::Theta), 1), 8);
    REQUIRE(m1.has_value());
    CHECK(m1->first == 4);
    REQUIRE(m1->second.size() == 1);
    CHECK(m1->second[0] == omega(build_named(NamedGraph::Theta)));

    auto m3 = minimal_interior_degree(PolytopeSpec(build_named(NamedGraph::Theta), 3), 8);
    REQUIRE(m3.has_value());
    CHECK(m3->first == 2);
    CHECK(m3->second.size() >= 2);

    auto m4 = minimal_interior_degree(PolytopeSpec(build_named(NamedGraph::Theta), 4), 8);
    REQUIRE(m4.has_value());
    CHECK(m4->first == 1);
    CHECK(m4->second.size() == 1);

    CHECK_FALSE(minimal_interior_degree(PolytopeSpec(build_named(NamedGraph::Theta), 1), 3)
                    .has_value());
}

TEST_CASE("semigroup criterion: bounded positives stay inconclusive") {
    const auto cert =
        check_semigroup_criterion(PolytopeSpec(build_named(NamedGraph::Theta), 2), 8);
    CHECK(cert.verdict == Verdict::InconclusiveUpToBound);
    REQUIRE(cert.generator.has_value());
    CHECK(cert.generator->degree == 2);
    CHECK(*cert.a_invariant == -2);
    CHECK(cert.checked_bound == 8);
}

TEST_CASE("semigroup criterion on the aligned fixed-weight case") {
    // The all-twos weight is the unique minimal interior point and every
    // decomposition through it succeeds, so the bounded search finds no
    // counterexample here (the ring is in fact Gorenstein).
    PolytopeSpec spec(build_caterpillar(2, 1), 2, std::vector<std::int64_t>{1});
    const auto cert = check_semigroup_criterion(spec, 8);
    CHECK(cert.verdict == Verdict::InconclusiveUpToBound);
    REQUIRE(cert.generator.has_value());
    CHECK(cert.generator->degree == 2);
    CHECK(cert.generator->weights == omega(spec.graph()));
    CHECK(*cert.a_invariant == -2);
}

TEST_CASE("semigroup criterion: theta at level 5 fails at degree 1") {
    const auto cert =
        check_semigroup_criterion(PolytopeSpec(build_named(NamedGraph::Theta), 5), 4);
    CHECK(cert.verdict == Verdict::NotGorenstein);
    REQUIRE(cert.witness.has_value());
    const auto& two = std::get<TwoInteriorPoints>(*cert.witness);
    CHECK(two.degree == 1);
    CHECK(revalidate(cert));
    CHECK(revalidates_from_json(cert));
}

TEST_CASE("omega structure on leaf-free specs") {
    struct Expect {
        std::int64_t level;
        Verdict verdict;
        std::int64_t a_inv; // only for Gorenstein rows
    };
    for (const auto& graph : {build_named(NamedGraph::Theta), build_caterpillar(3, 0)}) {
        for (Expect e : {Expect{1, Verdict::Gorenstein, -4}, Expect{2, Verdict::Gorenstein, -2},
                         Expect{3, Verdict::NotGorenstein, 0}, Expect{4, Verdict::Gorenstein, -1},
                         Expect{5, Verdict::NotGorenstein, 0},
                         Expect{6, Verdict::NotGorenstein, 0}}) {
            CAPTURE(e.level);
            const auto cert = check_via_omega_structure(graph, e.level);
            CHECK(cert.verdict == e.verdict);
            if (e.verdict == Verdict::Gorenstein) {
                CHECK(*cert.a_invariant == e.a_inv);
                CHECK(revalidate(cert));
            } else {
                REQUIRE(cert.witness.has_value());
                CHECK(revalidates_from_json(cert));
            }
        }
    }
    // witness degrees follow the minimal interior degree
    const auto l3 = check_via_omega_structure(build_named(NamedGraph::Theta), 3);
    CHECK(std::get<TwoInteriorPoints>(*l3.witness).degree == 2);
    const auto l6 = check_via_omega_structure(build_named(NamedGraph::Theta), 6);
    CHECK(std::get<TwoInteriorPoints>(*l6.witness).degree == 1);
}

TEST_CASE("two point witness") {
    // caterpillar(2,1), r=(1), level 2: points live in even degrees
    PolytopeSpec spec(build_caterpillar(2, 1), 2, std::vector<std::int64_t>{1});
    const auto pts = enumerate_lattice_points(spec, 2);
    REQUIRE(pts.size() > 1);
    for (const auto& w : {pts.front(), pts[pts.size() / 2], pts.back()}) {
        const EdgeWeights other = two_point_witness(spec, w, 2);
        CHECK(other != w);
        CHECK(satisfies(other, spec, 2));
        CHECK(in_lattice(other, spec.graph()));
    }
    // caterpillar(2,2), r=(1,1), level 3
    PolytopeSpec spec2(build_caterpillar(2, 2), 3, std::vector<std::int64_t>{1, 1});
    const auto pts2 = enumerate_lattice_points(spec2, 1);
    REQUIRE(pts2.size() >= 2);
    const EdgeWeights other2 = two_point_witness(spec2, pts2[0], 1);
    CHECK(other2 != pts2[0]);
    CHECK(satisfies(other2, spec2, 1));

    CHECK_THROWS_AS(two_point_witness(PolytopeSpec(build_caterpillar(1, 1), 2,
                                                   std::vector<std::int64_t>{0}),
                                      EdgeWeights({0, 0}), 1),
                    NotApplicable);
    // unique-point spec: witness provably cannot exist
    PolytopeSpec unique_spec(build_caterpillar(2, 1), 0, std::vector<std::int64_t>{0});
    CHECK_THROWS_AS(two_point_witness(unique_spec, EdgeWeights({0, 0, 0, 0, 0}), 1), Error);
}

TEST_CASE("classify: leaf-free truth table") {
    for (int g : {2, 3}) {
        for (std::int64_t L = 1; L <= 6; ++L) {
            CAPTURE(g);
            CAPTURE(L);
            const auto cert = classify_v(g, {}, L);
            if (L == 1 || L == 2 || L == 4) {
                CHECK(cert.verdict == Verdict::Gorenstein);
                CHECK(*cert.a_invariant == -(4 / L));
            } else {
                CHECK(cert.verdict == Verdict::NotGorenstein);
                CHECK(revalidates_from_json(cert));
            }
            CHECK(cert.crosschecked);
        }
    }
}

TEST_CASE("classify: one marked point with weight equal to the level") {
    for (std::int64_t L = 1; L <= 6; ++L) {
        CAPTURE(L);
        const auto cert = classify_v(2, {L}, L);
        if (L == 1 || L == 2 || L == 4) {
            CHECK(cert.verdict == Verdict::Gorenstein);
            CHECK(*cert.a_invariant == -(4 / L));
            CHECK(revalidate(cert));
        } else {
            CHECK(cert.verdict == Verdict::NotGorenstein);
            CHECK(revalidates_from_json(cert));
        }
    }
}

TEST_CASE("classify: generic weights are almost always NotGorenstein") {
    // every feasible 0 < r_i < L with L <= 4, g = 2, n ∈ {1, 2}, except the
    // aligned families (all r_i = L/2 with L ∈ {2, 4} scaled so a*r = 2)
    for (std::int64_t L = 2; L <= 4; ++L) {
        for (std::int64_t r1 = 1; r1 < L; ++r1) {
            const auto c1 = classify_v(2, {r1}, L);
            const bool aligned1 = (L == 2 && r1 == 1) || (L == 4 && r1 == 2);
            CAPTURE(L);
            CAPTURE(r1);
            CHECK(c1.verdict ==
                  (aligned1 ? Verdict::Gorenstein : Verdict::NotGorenstein));
            if (!aligned1)
                CHECK(revalidates_from_json(c1));
            for (std::int64_t r2 = r1; r2 < L; ++r2) {
                const auto c2 = classify_v(2, {r1, r2}, L);
                const bool aligned2 = aligned1 && r2 == r1;
                CAPTURE(r2);
                CHECK(c2.verdict ==
                      (aligned2 ? Verdict::Gorenstein : Verdict::NotGorenstein));
            }
        }
    }
}

TEST_CASE("classify: the aligned families carry full certificates") {
    const auto c = classify_v(2, {1}, 2);
    CHECK(c.verdict == Verdict::Gorenstein);
    CHECK(*c.a_invariant == -2);
    REQUIRE(c.generator.has_value());
    CHECK(c.generator->degree == 2);
    CHECK(c.generator->weights == omega(build_caterpillar(2, 1)));
    CHECK(c.crosschecked);
    CHECK(revalidate(c));

    const auto c44 = classify_v(2, {2, 2}, 4);
    CHECK(c44.verdict == Verdict::Gorenstein);
    CHECK(*c44.a_invariant == -1);
    CHECK(revalidate(c44));
}

TEST_CASE("classify is stable under the weight reductions") {
    // (0,3) at level 3 reduces to the one-marked-point case (3)
    const auto a = classify_v(2, {0, 3}, 3);
    const auto b = classify_v(2, {3}, 3);
    CHECK(a.verdict == b.verdict);
    // (4,1) at level 4 reduces to (3)
    const auto c = classify_v(2, {4, 1}, 4);
    const auto d = classify_v(2, {3}, 4);
    CHECK(c.verdict == d.verdict);
    // an even number of level-valued weights reduces to the leaf-free case
    const auto e = classify_v(2, {2, 2}, 2);
    const auto f = classify_v(2, {}, 2);
    CHECK(e.verdict == f.verdict);
    CHECK(*e.a_invariant == *f.a_invariant);
}

TEST_CASE("classify edge cases") {
    // weight above the level: the ring is the ground field
    const auto trivial = classify_v(2, {3}, 1);
    CHECK(trivial.verdict == Verdict::Gorenstein);
    CHECK(*trivial.a_invariant == 0);
    CHECK(revalidate(trivial));
    // level 0 reduces to the leaf-free ray
    const auto l0 = classify_v(2, {0}, 0);
    CHECK(l0.verdict == Verdict::Gorenstein);
    CHECK(*l0.a_invariant == -1);
    // genus below 2 only gets the bounded search
    const auto g1 = classify_v(1, {1}, 2);
    CHECK(g1.method == Method::Semigroup);
    // the vacuum slice of genus 1 is outside every interiority regime
    CHECK_THROWS_AS(classify_v(1, {}, 2), UnsupportedRegime);
    // genus 0
    const auto g0 = classify_v(0, {1, 1, 1, 1}, 2);
    CHECK(g0.method == Method::Semigroup);
    CHECK_THROWS_AS(classify_v(0, {1, 1}, 2), InfeasibleSignature);
}

TEST_CASE("certificate json round trip") {
    const auto cert = classify_v(2, {1}, 3);
    const Json j = certificate_to_json(cert);
    const auto back = certificate_from_json(j);
    CHECK(back.verdict == cert.verdict);
    CHECK(back.method == cert.method);
    CHECK(back.checked_bound == cert.checked_bound);
    CHECK(back.crosschecked == cert.crosschecked);
    CHECK(certificate_to_json(back) == j);
}

TEST_CASE("tampered witnesses fail revalidation") {
    auto cert = classify_v(2, {}, 3);
    REQUIRE(cert.witness.has_value());
    auto& two = std::get<TwoInteriorPoints>(*cert.witness);
    two.b = two.a; // no longer two distinct points
    CHECK_FALSE(revalidate(cert));
    auto cert2 = classify_v(2, {}, 5);
    auto& two2 = std::get<TwoInteriorPoints>(*cert2.witness);
    two2.a.w[1] += 1; // the bridge edge: parity breaks at both loop vertices
    CHECK_FALSE(revalidate(cert2));
}
