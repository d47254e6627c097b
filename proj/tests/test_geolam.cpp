#include <doctest.h>

#include <algorithm>
#include <random>

#include "lamination/error.hpp"
#include "lamination/fixtures.hpp"
#include "lamination/geolam.hpp"
#include "lamination/quadratic.hpp"
#include "oracle.hpp"

using namespace lam;

namespace {

Chord C(long a, long b, long c, long d) { return Chord(Angle(a, b), Angle(c, d)); }

Geolamination of(std::initializer_list<Chord> cs, int depth = 0) {
    Geolamination L(2, depth);
    for (const auto& c : cs) L.insert(c);
    return L;
}

bool has_rule(const InvarianceReport& r, const std::string& rule, const Chord& w) {
    return std::any_of(r.violations.begin(), r.violations.end(), [&](const Violation& v) {
        return v.rule == rule && std::find(v.witness.begin(), v.witness.end(), w) != v.witness.end();
    });
}

}  // namespace

TEST_CASE("generations") {
    Geolamination L = of({C(1, 3, 2, 3), C(1, 6, 5, 6), C(1, 12, 11, 12)}, 2);
    CHECK(L.generation(C(1, 3, 2, 3)) == 0);
    CHECK(L.generation(C(1, 12, 11, 12)) == 2);
    CHECK(L.is_frontier(C(1, 12, 11, 12)));
    CHECK_FALSE(L.is_frontier(C(1, 6, 5, 6)));
    CHECK_FALSE(L.insert(C(2, 3, 1, 3)));
    CHECK_FALSE(L.insert(Chord::point(Angle(1, 3))));
    CHECK(L.preimage_leaves(C(1, 3, 2, 3)) == std::vector<Chord>{C(1, 6, 5, 6), C(1, 3, 2, 3)});
}

TEST_CASE("verify_unlinked") {
    CHECK(verify_unlinked(of({C(0, 1, 1, 2)})).pass());
    auto r = verify_unlinked(of({C(0, 1, 1, 2), C(1, 4, 3, 4)}));
    REQUIRE_FALSE(r.pass());
    CHECK(r.violations[0].rule == "E2");
    CHECK(r.violations[0].witness == std::vector<Chord>{C(0, 1, 1, 2), C(1, 4, 3, 4)});
    CHECK(verify_unlinked(fixtures::basilica(8)).pass());
    CHECK(verify_unlinked(Geolamination()).pass());
}

TEST_CASE("sibling invariance") {
    CHECK(is_sibling_invariant(fixtures::basilica(6)).pass());
    CHECK(is_sibling_invariant(Geolamination()).pass());
    auto r = is_sibling_invariant(fixtures::l12a(6));
    CHECK_FALSE(r.pass());
    CHECK(has_rule(r, "S3", C(0, 1, 1, 4)));
    auto j = r.to_json();
    CHECK(j.find("S3") != std::string::npos);
    CHECK(j.find("0 1/4") != std::string::npos);
}

TEST_CASE("sibling invariance of a bare leaf") {
    // {1/3,2/3} alone at depth 1: its sibling {1/6,5/6} is missing
    auto r = is_sibling_invariant(of({C(1, 3, 2, 3)}, 1));
    CHECK(has_rule(r, "S3", C(1, 3, 2, 3)));
    // at depth 0 nothing needs to have been pulled back yet
    CHECK(is_sibling_invariant(of({C(1, 3, 2, 3)}, 0)).pass());
    auto s = is_sibling_invariant(of({C(1, 6, 5, 6)}, 2));
    CHECK(has_rule(s, "S1", C(1, 6, 5, 6)));
}

TEST_CASE("Thurston invariance") {
    CHECK(is_thurston_invariant(fixtures::l12a(6)).pass());
    CHECK(is_thurston_invariant(fixtures::basilica(6)).pass());
    CHECK(is_thurston_invariant(fixtures::rabbit(5)).pass());
    CHECK_FALSE(is_thurston_invariant(of({C(0, 1, 1, 2), C(1, 4, 1, 2)}, 2)).pass());
}

TEST_CASE("library checker agrees with the brute-force sibling oracle") {
    for (int n = 1; n <= 5; ++n) {
        for (const auto& L : {fixtures::basilica(n), fixtures::rabbit(n), fixtures::airplane(n), fixtures::l12(n),
                              fixtures::l12a(n)}) {
            CAPTURE(L.label);
            CAPTURE(n);
            CHECK(is_sibling_invariant(L).pass() == oracle::sibling_invariant(L));
        }
    }
    std::mt19937 rng(0);
    for (int i = 0; i < 60; ++i) {
        Geolamination L = oracle::random_geolamination(rng, 12, 4);
        L.set_depth(i % 3);
        CHECK(is_sibling_invariant(L).pass() == oracle::sibling_invariant(L));
    }
}

TEST_CASE("pullback construction") {
    Geolamination B = pullback_construct(2, CriticalPortrait{{{Angle(1, 6), Angle(1, 3), Angle(2, 3), Angle(5, 6)}}}, 3,
                                         ChoicePolicy::canonical());
    std::vector<Chord> want{C(1, 24, 23, 24), C(1, 12, 11, 12), C(1, 6, 5, 6),     C(5, 24, 7, 24),
                            C(1, 3, 2, 3),    C(5, 12, 7, 12),  C(11, 24, 13, 24), C(17, 24, 19, 24)};
    CHECK(B.leaf_list() == want);
    CHECK(B.generator.kind == GeneratorKind::critical_portrait);

    Geolamination L = fixtures::l12(4);
    for (const auto& c : {C(0, 1, 1, 2), C(1, 4, 1, 2), C(1, 8, 1, 4), C(1, 16, 1, 8)}) CHECK(L.contains(c));
    CHECK(L.contains(C(3, 4, 0, 1)));

    try {
        pullback_construct(2, CriticalPortrait{{{Angle(), Angle(1, 2)}, {Angle(1, 4), Angle(3, 4)}}}, 2,
                           ChoicePolicy::canonical());
        FAIL("expected invalid portrait");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::invalid_portrait);
    }
}

TEST_CASE("scripted policy without a script is ambiguous") {
    ChoicePolicy p;
    p.kind = ChoicePolicy::Kind::scripted;
    try {
        pullback_construct(2, CriticalPortrait{{{Angle(), Angle(1, 2)}}}, 3, p);
        FAIL("expected ambiguity");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ambiguous_pullback);
        CHECK_FALSE(e.witness().empty());
    }
}

TEST_CASE("from_equivalence") {
    for (int n = 3; n <= 6; ++n) {
        CHECK(from_equivalence(2, {{Angle(1, 3), Angle(2, 3)}}, n).same_leaves(fixtures::basilica(n)));
        CHECK(from_equivalence(2, {{Angle(1, 7), Angle(2, 7), Angle(4, 7)}}, n).same_leaves(fixtures::rabbit(n)));
    }
    auto R = from_equivalence(2, {{Angle(1, 7), Angle(2, 7), Angle(4, 7)}}, 2);
    for (const auto& c : {C(1, 7, 2, 7), C(2, 7, 4, 7), C(1, 7, 4, 7)}) CHECK(R.contains(c));
    CHECK(R.generator.kind == GeneratorKind::equivalence_relation);
    try {
        from_equivalence(2, {{Angle(), Angle(1, 3)}, {Angle(1, 6), Angle(1, 2)}}, 2);
        FAIL("expected linked hulls");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::not_a_lamination);
        CHECK(e.witness().size() == 2);
    }
    // {1/7,2/7} alone is not forward invariant: its image {2/7,4/7} touches it
    CHECK_THROWS_AS(from_equivalence(2, {{Angle(1, 7), Angle(2, 7)}}, 2), Error);
}

TEST_CASE("hull edges") {
    CHECK(hull_edges({Angle(1, 3), Angle(2, 3)}) == std::vector<Chord>{C(1, 3, 2, 3)});
    CHECK(hull_edges({Angle(4, 7), Angle(1, 7), Angle(2, 7)}) ==
          std::vector<Chord>{C(1, 7, 2, 7), C(1, 7, 4, 7), C(2, 7, 4, 7)});
}

TEST_CASE("cones") {
    auto B = fixtures::basilica(6);
    auto c = cone_at(B, Angle(1, 3));
    std::vector<Chord> want;
    for (const auto& [l, g] : B.leaves())
        if (l.has_endpoint(Angle(1, 3))) want.push_back(l);
    CHECK(c.leaves == want);
    CHECK(c.leaves == std::vector<Chord>{C(1, 3, 2, 3)});
    CHECK(cone_at(B, Angle(1, 5)).leaves.empty());
    auto L = fixtures::l12(4);
    CHECK(cone_at(L, Angle(1, 2)).leaves ==
          std::vector<Chord>{C(0, 1, 1, 2), C(1, 4, 1, 2), C(3, 8, 1, 2), C(7, 16, 1, 2), C(15, 32, 1, 2)});
}

TEST_CASE("cone analysis") {
    Geolamination R = of({C(1, 7, 2, 7), C(1, 7, 4, 7), C(2, 7, 4, 7)});
    auto a = analyze_cone(R, cone_at(R, Angle(1, 7)));
    CHECK(a.all_periodic);
    CHECK(a.periods_match);
    CHECK(a.at_most_two_leaves);

    Geolamination bad = of({C(1, 7, 2, 7), C(1, 7, 3, 7), C(1, 7, 4, 7)});
    CHECK_FALSE(analyze_cone(bad, cone_at(bad, Angle(1, 7))).at_most_two_leaves);

    try {
        analyze_cone(R, Cone{Angle(1, 6), {}});
        FAIL("expected unsupported vertex");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::unsupported_vertex);
    }
}

TEST_CASE("cones of basilica limits move uniformly") {
    for (const auto& X : limit_geolaminations(fixtures::basilica(5), 5)) {
        for (const auto& v : {Angle(1, 3), Angle(2, 3)}) {
            auto c = cone_at(X, v);
            if (c.leaves.empty()) continue;
            auto a = analyze_cone(X, c);
            CHECK_FALSE(a.mixed_interval);
            CHECK(a.at_most_two_leaves);
        }
    }
}

TEST_CASE("collapsing polygons") {
    Geolamination L = of({C(1, 8, 3, 8), C(3, 8, 5, 8), C(5, 8, 7, 8), C(1, 8, 7, 8)});
    CHECK(max_collapsing_polygon(L, {C(1, 8, 3, 8), C(3, 8, 5, 8)}) ==
          std::vector<Angle>{Angle(1, 8), Angle(3, 8), Angle(5, 8), Angle(7, 8)});
    Geolamination B = fixtures::basilica(4);
    CHECK(max_collapsing_polygon(B, {C(5, 12, 7, 12)}) == std::vector<Angle>{Angle(5, 12), Angle(7, 12)});
    try {
        max_collapsing_polygon(L, {C(1, 8, 3, 8), C(1, 3, 2, 3)});
        FAIL("expected invalid chain");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::invalid_chain);
    }
}

TEST_CASE("hausdorff distance") {
    auto B = fixtures::basilica(6);
    CHECK(hausdorff_distance(B, B, 64) == 0.0);
    double d = hausdorff_distance(of({C(0, 1, 1, 2)}), of({C(1, 4, 3, 4)}), 256);
    CHECK(d == doctest::Approx(0.5).epsilon(2.0 / 256));
    double d56 = hausdorff_distance(fixtures::basilica(5), B, 256, 2);
    double d67 = hausdorff_distance(B, fixtures::basilica(7), 256, 2);
    CHECK(d67 > 0);
    CHECK(d67 < d56);
    CHECK(hausdorff_distance(of({C(0, 1, 1, 2)}), of({C(1, 4, 3, 4)}), 256, 4) == d);
}
