#include <doctest.h>

#include <algorithm>

#include "lamination/error.hpp"
#include "lamination/fixtures.hpp"
#include "lamination/gaps.hpp"

using namespace lam;

namespace {

Chord C(long a, long b, long c, long d) { return Chord(Angle(a, b), Angle(c, d)); }

const Gap& face(const std::vector<Gap>& faces, std::vector<Chord> edges) {
    auto i = face_with_edges(faces, edges);
    REQUIRE(i.has_value());
    return faces[*i];
}

}  // namespace

TEST_CASE("faces of small arrangements") {
    Geolamination D(2, 0);
    D.insert(C(0, 1, 1, 2));
    auto f = gaps_of(D);
    REQUIRE(f.size() == 2);
    std::vector<std::string> holes;
    for (const auto& g : f) {
        REQUIRE(g.holes.size() == 1);
        holes.push_back(g.holes[0].str());
    }
    std::sort(holes.begin(), holes.end());
    CHECK(holes == std::vector<std::string>{"(0,1/2)", "(1/2,0)"});

    auto e = gaps_of(Geolamination());
    REQUIRE(e.size() == 1);
    CHECK(e[0].edges.empty());
}

TEST_CASE("faces of the basilica") {
    auto B = fixtures::basilica(6);
    auto faces = gaps_of(B);
    const Gap& U = face(faces, {C(1, 6, 5, 6), C(1, 3, 2, 3)});
    CHECK(U.infinite());
    CHECK_FALSE(U.frontier_exempt);
    CHECK_FALSE(leaf_inside_hull(B, U.vertices, B.depth()).has_value());
    // every face has the arrangement's leaves only on its boundary
    for (const auto& g : faces)
        if (g.vertices.size() >= 3) CHECK_FALSE(leaf_inside_hull(B, g.vertices, B.depth()).has_value());
}

TEST_CASE("gap images") {
    auto R = fixtures::rabbit(5);
    auto rf = gaps_of(R);
    const Gap& T = face(rf, {C(1, 7, 2, 7), C(2, 7, 4, 7), C(1, 7, 4, 7)});
    auto im = gap_image(R, T);
    CHECK(im.kind == ImageKind::gap);
    CHECK(im.vertices == T.vertices);
    CHECK(im.degree == 1);

    Gap tri;
    tri.vertices = {Angle(), Angle(1, 3), Angle(2, 3)};
    tri.edges = {C(0, 1, 1, 3), C(1, 3, 2, 3), C(0, 1, 2, 3)};
    auto pt = gap_image(3, tri);
    CHECK(pt.kind == ImageKind::point);
    CHECK(pt.vertices == std::vector<Angle>{Angle()});

    auto B = fixtures::basilica(6);
    auto bf = gaps_of(B);
    const Gap& U = face(bf, {C(1, 6, 5, 6), C(1, 3, 2, 3)});
    auto ui = gap_image(B, U);
    CHECK(ui.degree == 2);
    auto idx = image_face(bf, ui.vertices);
    REQUIRE(idx.has_value());
    const Gap& V = bf[*idx];
    CHECK(std::find(V.edges.begin(), V.edges.end(), C(1, 3, 2, 3)) != V.edges.end());
    CHECK(std::find(V.edges.begin(), V.edges.end(), C(5, 12, 7, 12)) != V.edges.end());
}

TEST_CASE("gap images crossing stored leaves") {
    Geolamination L(2, 3);
    L.insert(C(1, 8, 3, 8));
    L.insert(C(1, 4, 3, 4));
    Gap g;
    g.vertices = {Angle(1, 16), Angle(1, 8), Angle(3, 8)};
    try {
        gap_image(L, g);
        FAIL("expected invariance violation");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::invariance_violation);
    }
}

TEST_CASE("gap periods") {
    auto B = fixtures::basilica(6);
    auto bf = gaps_of(B);
    CHECK(gap_period(B, face(bf, {C(1, 6, 5, 6), C(1, 3, 2, 3)})) == GapPeriod{0, 2});
    CHECK(gap_period(B, face(bf, {C(1, 6, 5, 6), C(1, 12, 11, 12)})) == GapPeriod{1, 2});
    auto R = fixtures::rabbit(5);
    auto rf = gaps_of(R);
    CHECK(gap_period(R, face(rf, {C(1, 7, 2, 7), C(2, 7, 4, 7)})) == GapPeriod{0, 1});
}

TEST_CASE("boundary degree") {
    auto B = fixtures::basilica(6);
    auto bf = gaps_of(B);
    CHECK(boundary_degree(B, face(bf, {C(1, 6, 5, 6), C(1, 3, 2, 3)}), 2) == 2);
    auto R = fixtures::rabbit(5);
    auto rf = gaps_of(R);
    CHECK(boundary_degree(R, face(rf, {C(1, 7, 2, 7), C(2, 7, 4, 7)}), 1) == 1);
    auto L = fixtures::l12(6);
    auto lf = gaps_of(L);
    CHECK(boundary_degree(L, face(lf, {C(0, 1, 1, 2), C(1, 4, 1, 2)}), 1) == 1);
    try {
        boundary_degree(B, face(bf, {C(1, 6, 5, 6), C(1, 12, 11, 12)}), 2);
        FAIL("expected not periodic");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::not_periodic);
    }
}

TEST_CASE("classification") {
    auto R = fixtures::rabbit(5);
    auto rf = gaps_of(R);
    auto t = classify_gap(R, face(rf, {C(1, 7, 2, 7), C(2, 7, 4, 7)}));
    CHECK(t.kind == GapKind::finite);
    CHECK(t.k == 3);
    CHECK(t.period == std::optional<std::size_t>(1));

    auto B = fixtures::basilica(6);
    auto bf = gaps_of(B);
    auto u = classify_gap(B, face(bf, {C(1, 6, 5, 6), C(1, 3, 2, 3)}));
    CHECK(u.kind == GapKind::fatou);
    CHECK(u.k == 2);
    CHECK(u.period == std::optional<std::size_t>(2));
    CHECK(u.preperiod == std::optional<std::size_t>(0));

    auto A = fixtures::airplane(6);
    auto af = gaps_of(A);
    auto w = classify_gap(A, face(af, {C(2, 7, 5, 7), C(3, 14, 11, 14)}));
    CHECK(w.kind == GapKind::fatou);
    CHECK(w.period == std::optional<std::size_t>(3));

    auto L = fixtures::l12(6);
    auto lf = gaps_of(L);
    auto g = classify_gap(L, face(lf, {C(0, 1, 1, 2), C(1, 4, 1, 2)}));
    CHECK(g.kind == GapKind::caterpillar);
    CHECK(g.period == std::optional<std::size_t>(1));

    for (const auto& f : bf)
        if (f.frontier_exempt) CHECK(classify_gap(B, f).kind == GapKind::undetermined);
}

TEST_CASE("caterpillar gaps have degree one and a periodic basis point") {
    for (int n = 4; n <= 7; ++n) {
        auto L = fixtures::l12(n);
        for (const auto& f : gaps_of(L)) {
            auto k = classify_gap(L, f);
            if (k.kind != GapKind::caterpillar) continue;
            CHECK(boundary_degree(L, f, *k.period) == 1);
            CHECK(std::any_of(f.vertices.begin(), f.vertices.end(), [](const Angle& a) { return is_periodic(2, a); }));
        }
    }
}

TEST_CASE("Siegel fixture") {
    auto S = fixtures::siegel(8);
    auto sf = gaps_of(S);
    auto D = fixtures::siegel_diameter();
    int siegel = 0;
    for (const auto& f : sf) {
        auto k = classify_gap(S, f);
        if (k.kind != GapKind::siegel) continue;
        ++siegel;
        CHECK(std::find(f.edges.begin(), f.edges.end(), D) != f.edges.end());
        CHECK(std::none_of(f.vertices.begin(), f.vertices.end(), [](const Angle& a) { return is_periodic(2, a); }));
        CHECK(boundary_degree(S, f, *k.period) == 1);
    }
    CHECK(siegel == 1);
}

TEST_CASE("edge fates") {
    auto B = fixtures::basilica(6);
    auto bf = gaps_of(B);
    auto r = check_edge_fate(B, face(bf, {C(1, 6, 5, 6), C(1, 3, 2, 3)}));
    CHECK(r.violations == 0);
    for (const auto& e : r.entries) {
        CHECK(e.fate != EdgeFate::unresolved);
        if (e.edge == C(1, 3, 2, 3)) CHECK(e.fate == EdgeFate::periodic);
        if (e.edge == C(1, 6, 5, 6)) CHECK(e.fate == EdgeFate::preperiodic);
    }

    auto L = fixtures::l12(6);
    auto lf = gaps_of(L);
    auto c = check_edge_fate(L, face(lf, {C(0, 1, 1, 2), C(1, 4, 1, 2)}));
    CHECK(c.violations == 0);
    for (const auto& e : c.entries) {
        CHECK(e.fate == EdgeFate::precritical);
        // each edge moves one step towards the critical leaf
        CHECK(e.steps == static_cast<std::size_t>(escape_depth(2, e.edge)) + 1);
    }

    auto R = fixtures::rabbit(5);
    for (const auto& f : gaps_of(R)) {
        if (f.frontier_exempt || f.infinite() || f.vertices.size() < 3) continue;
        auto k = classify_gap(R, f);
        if (k.preperiod && *k.preperiod > 0) {
            auto rep = check_edge_fate(R, f);
            CHECK(rep.violations == 0);
            for (const auto& e : rep.entries) CHECK(e.fate == EdgeFate::preperiodic);
        }
    }
}

TEST_CASE("every (pre)periodic gap passes the edge fate check") {
    for (const auto& L : {fixtures::basilica(6), fixtures::rabbit(5), fixtures::airplane(5), fixtures::l12(6)})
        for (const auto& f : gaps_of(L)) {
            auto k = classify_gap(L, f);
            if (!k.period) continue;
            CHECK(check_edge_fate(L, f).violations == 0);
        }
}

TEST_CASE("gap report") {
    auto B = fixtures::basilica(5);
    auto bf = gaps_of(B);
    auto txt = gap_report(B, face(bf, {C(1, 6, 5, 6), C(1, 3, 2, 3)}), true);
    CHECK(txt.find("fatou degree 2") != std::string::npos);
    CHECK(txt.find("period: 2") != std::string::npos);
}
