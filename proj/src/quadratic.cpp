#include "lamination/quadratic.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <thread>

#include <json.hpp>

#include "lamination/error.hpp"

namespace lam {

MajorPair majors_and_minor(const Geolamination& L) {
    if (L.empty()) throw Error(ErrorCode::empty_lamination, "no leaves");
    mpq_class best = 0;
    std::vector<Chord> top;
    for (const auto& [c, g] : L.leaves()) {
        mpq_class len = chord_length(c);
        if (len > best) {
            best = len;
            top.clear();
        }
        if (len == best) top.push_back(c);
    }
    const int d = L.degree();
    if (top.size() == 1) {
        if (!is_critical(d, top[0]))
            throw Error(ErrorCode::inconsistent_majors, "longest leaf has no sibling", {top[0].str()});
        return {top[0], top[0], image(d, top[0])};
    }
    if (top.size() == 2 && image(d, top[0]) == image(d, top[1]) && disjoint(top[0], top[1]))
        return {top[0], top[1], image(d, top[0])};
    std::vector<std::string> w;
    for (const auto& c : top) w.push_back(c.str());
    throw Error(ErrorCode::inconsistent_majors, "longest leaves do not form a sibling pair", w);
}

CriticalSet critical_set(const Geolamination& L) {
    for (const auto& [c, g] : L.leaves())
        if (is_critical(L.degree(), c)) return c;
    for (const auto& G : gaps_of(L)) {
        if (G.frontier_exempt || G.vertices.size() < 3) continue;
        if (gap_image(L.degree(), G).degree >= 2) return G;
    }
    throw Error(ErrorCode::undetermined_critical, "no critical leaf or critical gap within depth");
}

std::vector<Angle> critical_points(const CriticalSet& c) {
    if (auto* ch = std::get_if<Chord>(&c)) return {ch->p(), ch->q()};
    return std::get<Gap>(c).vertices;
}

bool is_hyperbolic(const Geolamination& L) {
    CriticalSet cs;
    try {
        cs = critical_set(L);
    } catch (const Error&) {
        return false;
    }
    auto* G = std::get_if<Gap>(&cs);
    if (!G || !G->infinite()) return false;
    GapClass k = classify_gap(L, *G);
    return k.kind == GapKind::fatou && k.k == 2 && k.preperiod && *k.preperiod == 0;
}

bool is_fixed_return(const Chord& m) {
    auto a = orbit_info(2, m.p()), b = orbit_info(2, m.q());
    if (m.degenerate() || a.preperiod != 0 || b.preperiod != 0 || a.period != b.period)
        throw Error(ErrorCode::not_periodic, "endpoints of " + m.brace() + " are not periodic of equal period");
    std::vector<Chord> orb{m};
    for (std::size_t i = 1; i < a.period; ++i) orb.push_back(image(2, orb.back()));
    for (std::size_t i = 0; i < orb.size(); ++i)
        for (std::size_t j = i + 1; j < orb.size(); ++j)
            if (!disjoint(orb[i], orb[j])) return false;
    return true;
}

CriticalPortrait minor_portrait(const Chord& m) {
    CriticalPortrait P;
    std::vector<Angle> s = preimages(2, m.p());
    if (!m.degenerate()) {
        auto t = preimages(2, m.q());
        s.insert(s.end(), t.begin(), t.end());
    }
    std::sort(s.begin(), s.end());
    P.sets.push_back(s);
    return P;
}

namespace {

Geolamination build_from_minor(const Chord& m, int depth) {
    PullbackRequest req;
    req.portrait = minor_portrait(m);
    req.depth = depth;
    // a non-periodic minor has the whole quadrilateral as its critical class
    req.store_polygon_edges = !m.degenerate() && !(is_periodic(2, m.p()) && is_periodic(2, m.q()));
    Geolamination L = pullback_extend(req);
    L.label = "minor " + m.str();
    return L;
}

}  // namespace

QmlVerdict qml_check(const Chord& m, int depth) {
    if (m.degenerate()) return {true, "degenerate"};
    if (chord_length(m) > mpq_class(1, 3)) return {false, "longer than 1/3"};
    std::vector<Chord> orb;
    std::set<Chord> seen;
    for (Chord c = m; !seen.count(c); c = image(2, c)) {
        if (c.degenerate()) return {false, "orbit collapses"};
        seen.insert(c);
        orb.push_back(c);
    }
    for (std::size_t i = 1; i < orb.size(); ++i) {
        if (chord_length(orb[i]) < chord_length(m)) return {false, "image " + orb[i].brace() + " shorter than m"};
    }
    for (std::size_t i = 0; i < orb.size(); ++i)
        for (std::size_t j = i + 1; j < orb.size(); ++j)
            if (linked(orb[i], orb[j])) return {false, "orbit leaves " + orb[i].brace() + " and " + orb[j].brace() + " cross"};
    for (const auto& e : minor_portrait(m).edges())
        for (const auto& c : orb)
            if (linked(e, c)) return {false, "preimage quadrilateral crosses " + c.brace()};
    try {
        Geolamination L = build_from_minor(m, depth);
        auto rep = is_sibling_invariant(L);
        if (!rep.pass()) return {false, "construction is not sibling invariant"};
        if (majors_and_minor(L).minor != m) return {false, "minor of the construction differs"};
    } catch (const Error& e) {
        return {false, e.what()};
    }
    return {true, ""};
}

bool is_qml_leaf(const Chord& m, int depth) { return qml_check(m, depth).ok; }

Geolamination lamination_from_minor(const Chord& m, int depth) {
    if (!m.degenerate()) {
        auto v = qml_check(m, depth);
        if (!v) throw Error(ErrorCode::not_a_minor, m.brace() + ": " + v.reason, {m.str()});
    }
    return build_from_minor(m, depth);
}

QmlApprox qml_approx(int max_period, int depth, int jobs) {
    if (max_period < 1) throw Error(ErrorCode::invalid_input, "max_period must be positive");
    QmlApprox q;
    q.max_period = max_period;
    std::vector<Chord> cands;
    std::vector<Angle> points;
    for (int n = 1; n <= max_period; ++n) {
        auto pts = periodic_angles(2, n);
        points.insert(points.end(), pts.begin(), pts.end());
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j) {
                Chord c(pts[i], pts[j]);
                if (chord_length(c) <= mpq_class(1, 3)) cands.push_back(c);
            }
    }
    std::vector<char> ok(cands.size(), 0);
    jobs = std::max(1, jobs);
    auto work = [&](int w) {
        for (std::size_t i = static_cast<std::size_t>(w); i < cands.size(); i += static_cast<std::size_t>(jobs))
            ok[i] = is_qml_leaf(cands[i], depth) ? 1 : 0;
    };
    if (jobs == 1) {
        work(0);
    } else {
        std::vector<std::thread> ts;
        for (int w = 0; w < jobs; ++w) ts.emplace_back(work, w);
        for (auto& t : ts) t.join();
    }
    std::set<Angle> used;
    for (std::size_t i = 0; i < cands.size(); ++i)
        if (ok[i]) {
            q.leaves.push_back(cands[i]);
            used.insert(cands[i].p());
            used.insert(cands[i].q());
        }
    std::sort(q.leaves.begin(), q.leaves.end());
    for (const auto& a : points)
        if (!used.count(a)) q.degenerate.push_back(a);
    std::sort(q.degenerate.begin(), q.degenerate.end());
    return q;
}

Geolamination qml_geolamination(const QmlApprox& q) {
    Geolamination L(2, 0);
    for (const auto& c : q.leaves) L.insert(c);
    L.label = "qml";
    return L;
}

namespace {

Chord periodic_major(const MajorPair& mp) {
    for (const Chord& c : {mp.M, mp.M_sibling})
        if (is_periodic(2, c.p()) && is_periodic(2, c.q())) return c;
    throw Error(ErrorCode::wrong_input, "no periodic major");
}

Geolamination quad_geolamination(const Geolamination& Lq, const Chord& m, int depth) {
    PullbackRequest req;
    req.portrait = minor_portrait(m);
    req.depth = depth;
    req.base = Lq.leaf_list();
    req.store_polygon_edges = true;
    Geolamination L = pullback_extend(req);
    L.label = Lq.label + " collapsing quadrilateral";
    return L;
}

}  // namespace

std::vector<Geolamination> limit_geolaminations(const Geolamination& Lq, int depth) {
    if (Lq.degree() != 2 || Lq.generator.kind == GeneratorKind::explicit_list ||
        (Lq.generator.kind == GeneratorKind::critical_portrait && Lq.generator.policy != "canonical"))
        throw Error(ErrorCode::wrong_input, "not a q-geolamination");
    MajorPair mp = majors_and_minor(Lq);
    const Chord m = mp.minor;
    std::vector<Geolamination> out;
    if (m.degenerate()) return out;
    CriticalSet cs = critical_set(Lq);

    if (is_hyperbolic(Lq)) {
        const Chord M = periodic_major(mp);
        const bool fixed = is_fixed_return(m);
        Geolamination quad = fixed ? quad_geolamination(Lq, m, depth) : Geolamination(2, depth);
        for (const Angle& e : {M.p(), M.q()}) {
            const Angle b(e.value() + mpq_class(1, 2));
            const Chord c(e, b);
            const Angle& f = M.other(e);
            const Arc toward = strictly_between(e, f, b) ? Arc{e, b, Closure::open} : Arc{b, e, Closure::open};
            const Arc away = toward.start == e ? Arc{b, e, Closure::open} : Arc{e, b, Closure::open};
            for (int variant = 0; variant < 2; ++variant) {
                PullbackRequest req;
                req.portrait.sets.push_back({c.p(), c.q()});
                req.depth = depth;
                req.policy.kind = ChoicePolicy::Kind::scripted;
                req.policy.side_rules.push_back({e, variant == 0 ? away : toward});
                if (variant == 0 && fixed) {
                    req.base = quad.leaf_list();
                } else {
                    req.constraints = Lq.leaf_list();
                    if (variant == 1) req.seeds.push_back(M);
                }
                Geolamination L = pullback_extend(req);
                L.generator.policy = "scripted";
                L.label = Lq.label + " critical leaf " + c.str() + (variant == 0 ? " away" : " toward");
                out.push_back(std::move(L));
            }
        }
        if (fixed) out.push_back(std::move(quad));
        return out;
    }

    auto* P = std::get_if<Gap>(&cs);
    if (!P) return out;  // a critical leaf is its own generalized quadrilateral
    if (P->infinite()) throw Error(ErrorCode::wrong_input, "critical gap is neither finite nor a periodic Fatou gap");
    std::set<std::vector<Angle>> quads;
    const auto& E = P->edges;
    for (std::size_t i = 0; i < E.size(); ++i)
        for (std::size_t j = i + 1; j < E.size(); ++j) {
            if (image(2, E[i]) != image(2, E[j]) || image(2, E[i]).degenerate() || !disjoint(E[i], E[j])) continue;
            std::vector<Angle> q{E[i].p(), E[i].q(), E[j].p(), E[j].q()};
            std::sort(q.begin(), q.end());
            q.erase(std::unique(q.begin(), q.end()), q.end());
            if (q == P->vertices) continue;
            quads.insert(q);
        }
    // critical diagonals are degenerate quadrilaterals
    const auto& V = P->vertices;
    for (std::size_t i = 0; i < V.size(); ++i)
        for (std::size_t j = i + 1; j < V.size(); ++j)
            if (sigma(2, V[i]) == sigma(2, V[j])) quads.insert({V[i], V[j]});
    for (const auto& q : quads) {
        PullbackRequest req;
        req.portrait.sets.push_back(q);
        req.depth = depth;
        req.base = Lq.leaf_list();
        req.store_polygon_edges = true;
        Geolamination L = pullback_extend(req);
        std::string s;
        for (const auto& a : q) s += " " + a.str();
        L.label = Lq.label + (q.size() == 2 ? " critical leaf" : " quadrilateral") + s;
        out.push_back(std::move(L));
    }
    return out;
}

namespace {

struct Dsu {
    std::vector<std::size_t> p;
    explicit Dsu(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    std::size_t find(std::size_t x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(std::size_t a, std::size_t b) { p[find(a)] = find(b); }
};

}  // namespace

std::vector<Angle> psi(const Geolamination& L, const QmlApprox& qml) {
    Chord m = majors_and_minor(L).minor;
    // QML classes: connected unions of leaves
    std::map<Angle, std::size_t> id;
    for (const auto& c : qml.leaves) {
        id.emplace(c.p(), id.size());
        id.emplace(c.q(), id.size());
    }
    Dsu dsu(id.size());
    for (const auto& c : qml.leaves) dsu.unite(id[c.p()], id[c.q()]);
    auto class_of = [&](const Angle& x) -> std::optional<std::vector<Angle>> {
        auto it = id.find(x);
        if (it != id.end()) {
            std::vector<Angle> cls;
            for (const auto& [a, i] : id)
                if (dsu.find(i) == dsu.find(it->second)) cls.push_back(a);
            return cls;
        }
        if (std::binary_search(qml.degenerate.begin(), qml.degenerate.end(), x)) return std::vector<Angle>{x};
        auto o = orbit_info(2, x);
        if (o.preperiod == 0 && static_cast<int>(o.period) <= qml.max_period) return std::vector<Angle>{x};
        return std::nullopt;
    };
    auto a = class_of(m.p());
    if (!a) throw Error(ErrorCode::insufficient_period, "minor endpoint " + m.p().str() + " beyond the QML period bound");
    if (!m.degenerate()) {
        auto b = class_of(m.q());
        if (!b || *a != *b)
            throw Error(ErrorCode::insufficient_period, "minor " + m.brace() + " is not inside one QML class");
    }
    return *a;
}

std::vector<MinorEquivClass> minor_quotient(const std::vector<Geolamination>& family, const QmlApprox* qml) {
    const std::size_t n = family.size();
    std::vector<Chord> minors;
    for (const auto& L : family) minors.push_back(majors_and_minor(L).minor);
    Dsu dsu(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (intersects(minors[i], minors[j])) dsu.unite(i, j);
    std::map<std::size_t, std::size_t> slot;
    std::vector<MinorEquivClass> out;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = dsu.find(i);
        if (!slot.count(r)) {
            slot[r] = out.size();
            out.emplace_back();
        }
        auto& C = out[slot[r]];
        C.members.push_back(family[i].label.empty() ? "#" + std::to_string(i) : family[i].label);
        if (std::find(C.minors.begin(), C.minors.end(), minors[i]) == C.minors.end()) C.minors.push_back(minors[i]);
        if (qml && C.qml_class.empty()) {
            try {
                C.qml_class = psi(family[i], *qml);
            } catch (const Error&) {
            }
        }
    }
    return out;
}

std::string quotient_json(const std::vector<MinorEquivClass>& classes) {
    using nlohmann::json;
    json j = json::array();
    for (const auto& c : classes) {
        json m = json::array(), q = json::array();
        for (const auto& x : c.minors) m.push_back(x.str());
        for (const auto& a : c.qml_class) q.push_back(a.str());
        j.push_back({{"members", c.members}, {"minors", m}, {"qml_class", q}});
    }
    return j.dump(2);
}

SiegelSample siegel_set(const Chord& l, int iterations) {
    if (chord_length(l) != mpq_class(1, 2)) throw Error(ErrorCode::invalid_input, l.brace() + " is not a diameter");
    if (l == Chord(Angle(0, 1), Angle(1, 2))) throw Error(ErrorCode::invalid_input, "the diameter {0,1/2} is excluded");
    const Arc A{l.p(), l.q(), Closure::closed};
    const long bound = std::max(32L, 2L * iterations);
    std::set<Angle> pts{l.p(), l.q()};
    for (long den = 1; den <= bound; ++den)
        for (long k = 0; k < den; ++k) {
            Angle x(k, den);
            if (x.den() != den) continue;
            Angle y = x;
            bool stays = true;
            for (int j = 0; j <= iterations && stays; ++j) {
                if (!A.contains(y)) stays = false;
                y = sigma(2, y);
            }
            if (stays) pts.insert(x);
        }
    SiegelSample s;
    s.survivors.assign(pts.begin(), pts.end());
    for (const auto& a : s.survivors)
        if (is_periodic(2, a)) s.periodic.push_back(a);
    return s;
}

const char* rigidity_name(Rigidity r) {
    switch (r) {
        case Rigidity::rigid: return "rigid";
        case Rigidity::not_rigid: return "not-rigid";
        case Rigidity::unknown: return "unknown";
    }
    return "unknown";
}

namespace {

struct RigidityContext {
    const Geolamination& L;
    std::vector<Gap> faces;
    std::map<std::size_t, GapClass> cls;

    const GapClass& klass(std::size_t i) {
        auto it = cls.find(i);
        if (it == cls.end()) it = cls.emplace(i, classify_gap(L, faces[i])).first;
        return it->second;
    }

    std::vector<std::size_t> adjacent(const Chord& c) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < faces.size(); ++i)
            if (std::find(faces[i].edges.begin(), faces[i].edges.end(), c) != faces[i].edges.end()) out.push_back(i);
        return out;
    }

    bool is_gap(std::size_t i) { return !faces[i].frontier_exempt && klass(i).kind != GapKind::undetermined; }

    // face reached after n steps from face i
    std::optional<std::size_t> forward(std::size_t i, std::size_t n) const {
        std::size_t f = i;
        for (std::size_t k = 0; k < n; ++k) {
            std::vector<Angle> img;
            for (const auto& a : faces[f].vertices) img.push_back(sigma(2, a));
            std::sort(img.begin(), img.end());
            img.erase(std::unique(img.begin(), img.end()), img.end());
            auto nf = image_face(faces, img);
            if (!nf) return std::nullopt;
            f = *nf;
        }
        return f;
    }

    std::optional<std::string> leaf_rule(const Chord& l, int budget) {
        const bool periodic = is_periodic(2, l.p()) && is_periodic(2, l.q());
        auto adj = adjacent(l);
        if (periodic && std::none_of(adj.begin(), adj.end(), [&](std::size_t i) { return is_gap(i); }))
            return "l:limleaf2";
        for (std::size_t i : adj) {
            if (!is_gap(i)) continue;
            const GapClass& k = klass(i);
            auto h = forward(i, *k.preperiod);
            if (!h) continue;
            Chord e = image_n(2, l, *k.preperiod);
            const auto& he = faces[*h].edges;
            if (std::find(he.begin(), he.end(), e) != he.end() && is_periodic(2, e.p()) && is_periodic(2, e.q()))
                return "l:limgap3";
        }
        if (budget <= 0) return std::nullopt;
        // pullback of a rigid leaf avoiding collapsing polygons
        Chord c = l;
        for (int k = 1; k <= budget; ++k) {
            if (is_critical(2, c)) return std::nullopt;
            if (max_collapsing_polygon(L, {c}).size() > 2) return std::nullopt;
            c = image(2, c);
            if (c.degenerate() || !L.contains(c)) return std::nullopt;
            if (leaf_rule(c, 0)) return "l:rigipul";
        }
        return std::nullopt;
    }
};

}  // namespace

RigidityCertificate rigidity_certificate(const Geolamination& L, const std::variant<Chord, Gap>& target) {
    RigidityContext ctx{L, gaps_of(L), {}};
    if (auto* l = std::get_if<Chord>(&target)) {
        if (!L.contains(*l)) return {Rigidity::unknown, "", "not a leaf"};
        if (auto rule = ctx.leaf_rule(*l, L.depth())) return {Rigidity::rigid, *rule, l->str()};
        return {};
    }
    const Gap& G = std::get<Gap>(target);
    auto idx = face_with_edges(ctx.faces, G.edges);
    if (!idx) return {Rigidity::unknown, "", "not a gap of the geolamination"};
    const GapClass& k = ctx.klass(*idx);
    if (k.kind == GapKind::finite) return {Rigidity::rigid, "l:limgap3", G.str()};
    if (k.kind == GapKind::fatou && k.preperiod && *k.preperiod == 0) {
        bool critical_edge = false;
        std::size_t f = *idx;
        for (std::size_t s = 0; s < *k.period && !critical_edge; ++s) {
            for (const auto& e : ctx.faces[f].edges)
                if (is_critical(2, e)) critical_edge = true;
            auto nf = ctx.forward(f, 1);
            if (!nf) break;
            f = *nf;
        }
        if (!critical_edge) return {Rigidity::rigid, "l:rigigap1", G.str()};
    }
    if (k.kind == GapKind::siegel) return {Rigidity::not_rigid, "siegel", G.str()};
    return {};
}

}  // namespace lam
