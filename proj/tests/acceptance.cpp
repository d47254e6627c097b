// One line per acceptance criterion; exit status 1 if any fails.
#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <string>

#include "lamination/error.hpp"
#include "lamination/fixtures.hpp"
#include "lamination/quadratic.hpp"
#include "oracle.hpp"

using namespace lam;

namespace {

struct Outcome {
    bool ok = true;
    std::string note;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            note = what;
        }
    }
};

Chord C(long a, long b, long c, long d) { return Chord(Angle(a, b), Angle(c, d)); }

std::vector<Angle> reduced_angles(long max_den) {
    std::vector<Angle> out{Angle()};
    for (long q = 2; q <= max_den; ++q)
        for (long p = 1; p < q; ++p)
            if (std::gcd(p, q) == 1) out.emplace_back(p, q);
    return out;
}

bool has_witness(const InvarianceReport& r, const Chord& w) {
    for (const auto& v : r.violations)
        if (std::find(v.witness.begin(), v.witness.end(), w) != v.witness.end()) return true;
    return false;
}

Outcome invariance_discrimination() {
    Outcome o;
    auto L = fixtures::l12(7);
    o.require(is_sibling_invariant(L).pass(), "L12 fails sibling invariance");
    o.require(is_thurston_invariant(L).pass(), "L12 fails Thurston invariance");
    auto La = fixtures::l12a(7);
    auto s = is_sibling_invariant(La);
    o.require(is_thurston_invariant(La).pass(), "L12a fails Thurston invariance");
    o.require(!s.pass(), "L12a passes sibling invariance");
    o.require(has_witness(s, C(0, 1, 1, 4)), "witness {0,1/4} missing");
    return o;
}

Outcome pullback_equivalence() {
    Outcome o;
    for (int n = 4; n <= 8; ++n) {
        auto b = from_equivalence(2, {{Angle(1, 3), Angle(2, 3)}}, n);
        auto r = from_equivalence(2, {{Angle(1, 7), Angle(2, 7), Angle(4, 7)}}, n);
        o.require(fixtures::basilica(n).same_leaves(b), "basilica differs at depth " + std::to_string(n));
        o.require(fixtures::rabbit(n).same_leaves(r), "rabbit differs at depth " + std::to_string(n));
    }
    return o;
}

Outcome qml_census(int jobs) {
    Outcome o;
    for (int k = 2; k <= 4; ++k) {
        auto q = qml_approx(k, 8, jobs);
        o.require(q.leaves == oracle::lavaurs(k), "differs from Lavaurs at period " + std::to_string(k));
        o.require(q.leaves == oracle::minors_by_criteria(k), "differs from criteria oracle at period " + std::to_string(k));
        o.require(verify_unlinked(qml_geolamination(q)).pass(), "linked leaves");
        std::vector<Chord> p2, p3;
        for (const auto& c : q.leaves) {
            auto per = orbit_info(2, c.p()).period;
            if (per == 2) p2.push_back(c);
            if (per == 3) p3.push_back(c);
        }
        o.require(p2 == std::vector<Chord>{C(1, 3, 2, 3)}, "period 2 leaves");
        if (k >= 3) o.require(p3 == std::vector<Chord>{C(1, 7, 2, 7), C(3, 7, 4, 7), C(5, 7, 6, 7)}, "period 3 leaves");
    }
    return o;
}

Outcome gap_taxonomy() {
    Outcome o;
    auto B = fixtures::basilica(7);
    auto bf = gaps_of(B);
    auto u = face_with_edges(bf, {C(1, 6, 5, 6), C(1, 3, 2, 3)});
    o.require(u.has_value(), "basilica critical gap not found");
    if (u) {
        auto k = classify_gap(B, bf[*u]);
        o.require(k.kind == GapKind::fatou && k.k == 2 && k.period == std::optional<std::size_t>(2),
                  "basilica critical gap is " + k.note);
    }
    auto R = fixtures::rabbit(6);
    auto rf = gaps_of(R);
    auto t = face_with_edges(rf, {C(1, 7, 2, 7), C(2, 7, 4, 7), C(1, 7, 4, 7)});
    o.require(t.has_value(), "rabbit triangle not found");
    if (t) {
        auto k = classify_gap(R, rf[*t]);
        o.require(k.kind == GapKind::finite && k.k == 3 && k.period == std::optional<std::size_t>(1), "rabbit triangle");
    }
    auto L = fixtures::l12(7);
    auto lf = gaps_of(L);
    auto g = face_with_edges(lf, {C(0, 1, 1, 2), C(1, 4, 1, 2)});
    o.require(g.has_value(), "L12 gap not found");
    if (g) o.require(classify_gap(L, lf[*g]).kind == GapKind::caterpillar, "L12 gap G is not a caterpillar");

    for (const auto& X : {B, R, L, fixtures::l12(6), fixtures::airplane(6)}) {
        for (const auto& f : gaps_of(X)) {
            auto k = classify_gap(X, f);
            if (k.kind == GapKind::caterpillar) {
                o.require(boundary_degree(X, f, *k.period) == 1, "caterpillar with degree above one");
                o.require(std::any_of(f.vertices.begin(), f.vertices.end(),
                                      [](const Angle& a) { return is_periodic(2, a); }),
                          "caterpillar without periodic basis point");
            }
            if (k.period) o.require(check_edge_fate(X, f).violations == 0, "edge fate violation in " + f.str());
        }
    }
    return o;
}

struct Dsu {
    std::vector<std::size_t> p;
    explicit Dsu(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    std::size_t find(std::size_t x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void join(std::size_t a, std::size_t b) { p[find(a)] = find(b); }
};

Outcome limit_geolaminations_check() {
    Outcome o;
    for (const auto& Lq : {fixtures::basilica(7), fixtures::rabbit(7)}) {
        auto lims = limit_geolaminations(Lq, 7);
        o.require(!lims.empty(), "no limits for " + Lq.label);
        std::vector<Chord> minors{majors_and_minor(Lq).minor};
        for (const auto& X : lims) {
            o.require(is_sibling_invariant(X).pass(), X.label + " is not sibling invariant");
            const Chord m = majors_and_minor(X).minor;
            minors.push_back(m);
            auto cp = critical_points(critical_set(X));
            std::vector<Angle> pre = preimages(2, m.p());
            if (!m.degenerate()) {
                auto t = preimages(2, m.q());
                pre.insert(pre.end(), t.begin(), t.end());
            }
            std::sort(pre.begin(), pre.end());
            o.require(cp == pre, X.label + ": critical set is not the preimage of the minor");
            std::set<Angle> vs;
            for (const auto& [c, g] : X.leaves()) {
                vs.insert(c.p());
                vs.insert(c.q());
            }
            for (const auto& v : vs) {
                if (!is_periodic(2, v)) continue;
                auto a = analyze_cone(X, cone_at(X, v));
                if (a.all_periodic) o.require(a.at_most_two_leaves, X.label + ": finite cone with three leaves at " + v.str());
            }
        }
        Dsu dsu(minors.size());
        for (std::size_t i = 0; i < minors.size(); ++i)
            for (std::size_t j = i + 1; j < minors.size(); ++j)
                if (intersects(minors[i], minors[j])) dsu.join(i, j);
        for (std::size_t i = 1; i < minors.size(); ++i)
            o.require(dsu.find(i) == dsu.find(0), Lq.label + ": minors are not connected");
    }
    return o;
}

Outcome quotient_check(int jobs) {
    Outcome o;
    const int N = 6;
    std::vector<Geolamination> family;
    std::vector<std::vector<Angle>> expected;
    const std::vector<std::pair<Geolamination, std::vector<Angle>>> gens{
        {fixtures::basilica(N), {Angle(1, 3), Angle(2, 3)}},
        {fixtures::rabbit(N), {Angle(1, 7), Angle(2, 7)}},
        {fixtures::airplane(N), {Angle(3, 7), Angle(4, 7)}}};
    for (const auto& [G, cls] : gens) {
        family.push_back(G);
        expected.push_back(cls);
        for (auto& X : limit_geolaminations(G, N)) {
            family.push_back(std::move(X));
            expected.push_back(cls);
        }
    }
    auto q = qml_approx(4, N, jobs);
    auto classes = minor_quotient(family, &q);
    o.require(classes.size() == 3, "expected 3 classes, got " + std::to_string(classes.size()));
    for (std::size_t i = 0; i < family.size(); ++i)
        o.require(psi(family[i], q) == expected[i], family[i].label + " maps to the wrong class");
    return o;
}

Geolamination random_family(std::mt19937& rng) {
    std::uniform_int_distribution<int> den(6, 24), count(1, 8);
    return oracle::random_geolamination(rng, den(rng), count(rng));
}

Outcome hausdorff_check(unsigned seed, int jobs) {
    Outcome o;
    const int res = 256;
    std::vector<Geolamination> pool{fixtures::basilica(4), fixtures::basilica(6), fixtures::rabbit(5),
                                    fixtures::airplane(5), fixtures::l12(6),     fixtures::l12a(6),
                                    fixtures::siegel(5)};
    std::mt19937 rng(seed);
    while (pool.size() < 16) pool.push_back(random_family(rng));
    for (const auto& L : pool) o.require(hausdorff_distance(L, L, res, jobs) == 0.0, "d(L,L) != 0 for " + L.label);
    Geolamination h(2, 0), v(2, 0);
    h.insert(C(0, 1, 1, 2));
    v.insert(C(1, 4, 3, 4));
    const double dd = hausdorff_distance(h, v, res, jobs);
    o.require(std::abs(dd - 0.5) <= 2.0 / res, "diameters at distance " + std::to_string(dd));

    const std::size_t n = pool.size();
    std::vector<std::vector<double>> D(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) D[i][j] = D[j][i] = hausdorff_distance(pool[i], pool[j], res, jobs);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (int t = 0; t < 100; ++t) {
        std::size_t a = pick(rng), b = pick(rng), c = pick(rng);
        o.require(D[a][c] <= D[a][b] + D[b][c] + 4.0 / res, "triangle inequality fails");
    }
    return o;
}

mpq_class doubled_length(const mpq_class& len) { return len <= mpq_class(1, 4) ? mpq_class(2 * len) : mpq_class(1 - 2 * len); }

Outcome kernel_sweep() {
    Outcome o;
    const auto all = reduced_angles(255);
    const auto partners = reduced_angles(12);
    for (const auto& a : all) {
        for (int d : {2, 3}) {
            auto info = orbit_info(d, a);
            auto ref = oracle::orbit(d, a);
            o.require(info.preperiod == ref.preperiod && info.period == ref.period, "orbit of " + a.str());
            o.require(info.orbit.size() == info.preperiod + info.period, "orbit size of " + a.str());
            std::set<Angle> distinct(info.orbit.begin(), info.orbit.end());
            o.require(distinct.size() == info.orbit.size(), "orbit repeats for " + a.str());
            o.require(sigma(d, info.orbit.back()) == info.orbit[info.preperiod], "orbit does not close for " + a.str());
            if (d == 2 && a.den() % 2 == 1) {
                o.require(info.preperiod == 0 && is_periodic(2, a), a.str() + " should be periodic");
                const unsigned long q = a.den().get_ui();
                unsigned long x = 2 % q, ord = 1;
                while (x != 1 % q) {
                    x = (2 * x) % q;
                    ++ord;
                }
                o.require(q == 1 || info.period == ord, "period of " + a.str());
            }
        }
        for (const auto& b : partners) {
            if (a == b) continue;
            Chord c(a, b);
            o.require(chord_length(image(2, c)) == doubled_length(chord_length(c)), "doubling law for " + c.brace());
            if (is_critical(2, c)) continue;
            auto cols = sibling_collections(2, c);
            std::size_t matchings = 0;
            auto pa = preimages(2, c.p()), pb = preimages(2, c.q());
            for (int s = 0; s < 2; ++s) {
                Chord x(pa[0], pb[static_cast<std::size_t>(s)]), y(pa[1], pb[static_cast<std::size_t>(1 - s)]);
                if (!oracle::crosses(x, y) && !x.has_endpoint(y.p()) && !x.has_endpoint(y.q())) ++matchings;
            }
            o.require(cols.size() == matchings, "collection count for " + c.brace());
            for (const auto& col : cols) {
                o.require(col.leaves.size() == 2 && disjoint(col.leaves[0], col.leaves[1]),
                          "collection not disjoint for " + c.brace());
                for (const auto& l : col.leaves) o.require(image(2, l) == c, "collection leaf off target");
            }
        }
    }
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance checks"};
    unsigned seed = 0;
    int jobs = 4;
    app.add_option("--seed", seed, "seed for sampled checks");
    app.add_option("--jobs", jobs, "worker threads");
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"invariance discrimination", invariance_discrimination},
        {"pullback/equivalence agreement", pullback_equivalence},
        {"QML desk census", [&] { return qml_census(jobs); }},
        {"gap taxonomy", gap_taxonomy},
        {"limit geolaminations", limit_geolaminations_check},
        {"quotient correctness", [&] { return quotient_check(jobs); }},
        {"Hausdorff sanity", [&] { return hausdorff_check(seed, jobs); }},
        {"circle/chord kernel", kernel_sweep},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.ok = false;
            o.note = e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %zu: %s  %s (%.2fs)%s%s\n", i + 1, o.ok ? "PASS" : "FAIL", criteria[i].first.c_str(), secs,
                    o.ok ? "" : ": ", o.note.c_str());
        std::fflush(stdout);
        if (!o.ok) ++failed;
    }
    return failed ? 1 : 0;
}
