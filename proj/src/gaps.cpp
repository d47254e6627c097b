#include "lamination/gaps.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "lamination/error.hpp"

namespace lam {

bool Gap::has_vertex(const Angle& a) const {
    return std::binary_search(vertices.begin(), vertices.end(), a);
}

std::string Gap::str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < vertices.size(); ++i) s += (i ? "," : "") + vertices[i].str();
    return s + "}";
}

std::optional<Chord> GapImage::leaf() const {
    if (kind != ImageKind::leaf) return std::nullopt;
    return Chord(vertices[0], vertices[1]);
}

const char* image_kind_name(ImageKind k) {
    switch (k) {
        case ImageKind::point: return "point";
        case ImageKind::leaf: return "leaf";
        case ImageKind::gap: return "gap";
    }
    return "point";
}

const char* gap_kind_name(GapKind k) {
    switch (k) {
        case GapKind::finite: return "finite";
        case GapKind::caterpillar: return "caterpillar";
        case GapKind::siegel: return "siegel";
        case GapKind::fatou: return "fatou";
        case GapKind::undetermined: return "undetermined";
    }
    return "undetermined";
}

const char* edge_fate_name(EdgeFate f) {
    switch (f) {
        case EdgeFate::periodic: return "periodic";
        case EdgeFate::preperiodic: return "preperiodic";
        case EdgeFate::precritical: return "precritical";
        case EdgeFate::unresolved: return "unresolved";
    }
    return "unresolved";
}

namespace {

struct FaceBuilder {
    const Geolamination& L;
    Gap g;
    Angle cur;
    bool started = false;

    void edge(const Chord& c, const Angle& from, const Angle& to) {
        if (!started) {
            g.vertices.push_back(from);
            cur = from;
            started = true;
        }
        if (cur != from) {
            g.holes.push_back({cur, from, Closure::open});
            g.vertices.push_back(from);
        }
        g.edges.push_back(c);
        if (to != g.vertices.front()) g.vertices.push_back(to);
        cur = to;
    }

    Gap finish(const Angle& close) {
        if (started && cur != close) g.holes.push_back({cur, close, Closure::open});
        g.frontier_exempt = !g.edges.empty() && std::all_of(g.edges.begin(), g.edges.end(), [&](const Chord& c) {
            return L.is_frontier(c);
        });
        std::sort(g.vertices.begin(), g.vertices.end());
        g.vertices.erase(std::unique(g.vertices.begin(), g.vertices.end()), g.vertices.end());
        return g;
    }
};

}  // namespace

std::vector<Gap> gaps_of(const Geolamination& L) {
    std::vector<Chord> cs = L.leaf_list();
    std::sort(cs.begin(), cs.end(), [](const Chord& a, const Chord& b) {
        if (a.p() != b.p()) return a.p() < b.p();
        return a.q() > b.q();
    });
    const std::size_t n = cs.size();
    std::vector<std::vector<std::size_t>> children(n + 1);  // n is the outer face
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < n; ++i) {
        while (!stack.empty() && cs[stack.back()].q() <= cs[i].p()) stack.pop_back();
        if (!stack.empty() && cs[stack.back()].q() < cs[i].q())
            throw Error(ErrorCode::not_a_lamination, "leaves cross", {cs[stack.back()].str(), cs[i].str()});
        children[stack.empty() ? n : stack.back()].push_back(i);
        stack.push_back(i);
    }
    std::vector<Gap> out;
    out.reserve(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        FaceBuilder fb{L, {}, {}, false};
        if (i < n) {
            fb.g.vertices.push_back(cs[i].p());
            fb.cur = cs[i].p();
            fb.started = true;
        }
        for (std::size_t c : children[i]) fb.edge(cs[c], cs[c].p(), cs[c].q());
        if (i < n) {
            if (fb.cur != cs[i].q()) {
                fb.g.holes.push_back({fb.cur, cs[i].q(), Closure::open});
                fb.g.vertices.push_back(cs[i].q());
            }
            fb.g.edges.push_back(cs[i]);
            fb.cur = cs[i].p();
            out.push_back(fb.finish(cs[i].p()));
        } else {
            out.push_back(fb.finish(fb.started ? fb.g.vertices.front() : Angle()));
        }
    }
    return out;
}

std::optional<std::size_t> face_containing(const std::vector<Gap>& faces, const std::vector<Angle>& pts) {
    if (pts.size() < 3) return std::nullopt;
    for (std::size_t i = 0; i < faces.size(); ++i)
        if (std::all_of(pts.begin(), pts.end(), [&](const Angle& a) { return faces[i].has_vertex(a); }))
            return i;
    return std::nullopt;
}

// Truncation can hide some image vertices behind deeper leaves; fall back to the
// unique face sharing the most image points.
std::optional<std::size_t> image_face(const std::vector<Gap>& faces, const std::vector<Angle>& pts) {
    if (auto f = face_containing(faces, pts)) return f;
    std::size_t best = 0, hits = 0;
    bool tie = false;
    for (std::size_t i = 0; i < faces.size(); ++i) {
        auto h = static_cast<std::size_t>(
            std::count_if(pts.begin(), pts.end(), [&](const Angle& a) { return faces[i].has_vertex(a); }));
        if (h > hits) {
            best = i, hits = h, tie = false;
        } else if (h == hits) {
            tie = true;
        }
    }
    if (hits < 3 || tie) return std::nullopt;
    return best;
}

std::optional<std::size_t> face_with_edges(const std::vector<Gap>& faces, const std::vector<Chord>& edges) {
    for (std::size_t i = 0; i < faces.size(); ++i)
        if (std::all_of(edges.begin(), edges.end(), [&](const Chord& e) {
                return std::find(faces[i].edges.begin(), faces[i].edges.end(), e) != faces[i].edges.end();
            }))
            return i;
    return std::nullopt;
}

std::optional<Chord> leaf_inside_hull(const Geolamination& L, const std::vector<Angle>& S, int max_generation) {
    const std::size_t n = S.size();
    if (n < 3) return std::nullopt;
    auto pos = [&](const Angle& x) -> std::pair<std::size_t, bool> {
        auto it = std::lower_bound(S.begin(), S.end(), x);
        if (it != S.end() && *it == x) return {static_cast<std::size_t>(it - S.begin()), true};
        std::size_t i = static_cast<std::size_t>(it - S.begin());
        return {(i + n - 1) % n, false};  // hole following vertex i
    };
    for (const auto& [c, g] : L.leaves()) {
        if (g > max_generation) continue;
        auto [i1, v1] = pos(c.p());
        auto [i2, v2] = pos(c.q());
        bool outside;
        if (!v1 && !v2) outside = i1 == i2;
        else if (v1 && v2) outside = (i1 + 1) % n == i2 || (i2 + 1) % n == i1;
        else {
            std::size_t vi = v1 ? i1 : i2, hi = v1 ? i2 : i1;
            outside = hi == vi || (hi + 1) % n == vi;
        }
        if (!outside) return c;
    }
    return std::nullopt;
}

GapImage gap_image(int d, const Gap& G) {
    GapImage r;
    const std::size_t k = G.vertices.size();
    std::vector<Angle> img(k);
    for (std::size_t i = 0; i < k; ++i) img[i] = sigma(d, G.vertices[i]);
    r.vertices = img;
    std::sort(r.vertices.begin(), r.vertices.end());
    r.vertices.erase(std::unique(r.vertices.begin(), r.vertices.end()), r.vertices.end());
    r.kind = r.vertices.size() <= 1 ? ImageKind::point : (r.vertices.size() == 2 ? ImageKind::leaf : ImageKind::gap);
    mpq_class w = 0;
    for (std::size_t i = 0; i < k; ++i) w += arc_length(img[i], img[(i + 1) % k]);
    r.degree = static_cast<int>(w.get_d() + 0.5);
    return r;
}

GapImage gap_image(const Geolamination& L, const Gap& G) {
    GapImage r = gap_image(L.degree(), G);
    if (r.kind == ImageKind::gap) {
        if (auto c = leaf_inside_hull(L, r.vertices, L.depth() - 1))
            throw Error(ErrorCode::invariance_violation, "image hull of gap " + G.str() + " is crossed",
                        {c->str()});
    } else if (r.kind == ImageKind::leaf) {
        Chord c = *r.leaf();
        if (!L.contains(c) && escape_depth(L.degree(), c) < L.depth())
            throw Error(ErrorCode::invariance_violation, "gap image " + c.brace() + " is not a leaf", {c.str()});
    }
    return r;
}

namespace {

std::vector<Angle> distinct_image(int d, const std::vector<Angle>& pts) {
    std::vector<Angle> out;
    for (const auto& a : pts) out.push_back(sigma(d, a));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct Orbit {
    std::vector<long> face;  // -1 once the orbit has collapsed to a leaf or point
    std::optional<GapPeriod> period;
};

Orbit face_orbit(const Geolamination& L, const std::vector<Gap>& faces, std::size_t start, std::size_t bound) {
    Orbit o;
    std::map<std::pair<long, std::vector<Angle>>, std::size_t> seen;
    long f = static_cast<long>(start);
    std::vector<Angle> pts;
    for (std::size_t j = 0; j <= bound; ++j) {
        std::pair<long, std::vector<Angle>> key{f, f >= 0 ? std::vector<Angle>{} : pts};
        if (auto it = seen.find(key); it != seen.end()) {
            o.period = GapPeriod{it->second, j - it->second};
            return o;
        }
        seen.emplace(key, j);
        o.face.push_back(f);
        const auto& src = f >= 0 ? faces[static_cast<std::size_t>(f)].vertices : pts;
        pts = distinct_image(L.degree(), src);
        if (pts.size() >= 3) {
            auto nf = image_face(faces, pts);
            if (!nf) return o;
            f = static_cast<long>(*nf);
        } else {
            f = -1;
        }
    }
    return o;
}

std::size_t index_of(const std::vector<Gap>& faces, const Gap& G) {
    for (std::size_t i = 0; i < faces.size(); ++i)
        if (faces[i] == G) return i;
    throw Error(ErrorCode::invalid_input, "gap " + G.str() + " is not a face of the geolamination");
}

int winding(int d, const std::vector<Angle>& v, std::size_t n) {
    mpq_class w = 0;
    std::vector<Angle> img;
    for (const auto& a : v) img.push_back(sigma_n(d, a, n));
    for (std::size_t i = 0; i < img.size(); ++i) w += arc_length(img[i], img[(i + 1) % img.size()]);
    return static_cast<int>(w.get_d() + 0.5);
}

int degree_on(const Geolamination& L, const std::vector<Gap>& faces, std::size_t idx, std::size_t n) {
    auto o = face_orbit(L, faces, idx, n);
    if (o.face.size() <= n || o.face[n] != static_cast<long>(idx)) {
        // the orbit may have closed before step n
        bool back = o.period && o.period->preperiod == 0 && n % o.period->period == 0;
        if (!back) throw Error(ErrorCode::not_periodic, "gap " + faces[idx].str() + " is not mapped to itself");
    }
    return winding(L.degree(), faces[idx].vertices, n);
}

GapClass classify_index(const Geolamination& L, const std::vector<Gap>& faces, std::size_t idx, int guard) {
    const Gap& G = faces[idx];
    GapClass r;
    if (G.frontier_exempt) {
        r.note = "frontier";
        return r;
    }
    auto o = face_orbit(L, faces, idx, default_search_bound);
    if (!o.period || G.vertices.size() < 3) {
        r.note = "no period within bound";
        return r;
    }
    r.period = o.period->period;
    r.preperiod = o.period->preperiod;
    if (!G.infinite()) {
        r.kind = GapKind::finite;
        r.k = static_cast<int>(G.vertices.size());
        return r;
    }
    if (*r.preperiod > 0) {
        long h = o.face[*r.preperiod];
        if (h < 0 || guard > 0) {
            r.note = "preperiodic";
            return r;
        }
        GapClass H = classify_index(L, faces, static_cast<std::size_t>(h), guard + 1);
        if (H.kind == GapKind::fatou) {
            r.kind = GapKind::fatou;
            r.k = H.k;
        } else {
            r.note = std::string("preperiodic to ") + gap_kind_name(H.kind);
        }
        return r;
    }
    const int d = L.degree();
    const std::size_t k = *r.period;
    int deg = degree_on(L, faces, idx, k);
    if (deg >= 2) {
        r.kind = GapKind::fatou;
        r.k = deg;
        return r;
    }
    std::vector<Angle> periodic;
    for (const auto& v : G.vertices)
        if (is_periodic(d, v)) periodic.push_back(v);
    if (L.generator.siegel_construction) {
        if (periodic.empty()) r.kind = GapKind::siegel;
        else r.note = "periodic basis point in a Siegel construction";
        return r;
    }
    if (periodic.empty()) {
        r.note = "degree one without periodic basis points";
        return r;
    }
    // every hole has an endpoint landing on a periodic vertex under the return map
    auto lands = [&](Angle a) {
        for (std::size_t j = 0; j < 64 + G.vertices.size(); ++j) {
            if (std::binary_search(periodic.begin(), periodic.end(), a)) return true;
            a = sigma_n(d, a, k);
        }
        return false;
    };
    bool ok = std::all_of(G.holes.begin(), G.holes.end(), [&](const Arc& h) { return lands(h.start) || lands(h.end); });
    if (ok) r.kind = GapKind::caterpillar;
    else r.note = "degree one without a countable-basis certificate";
    return r;
}

}  // namespace

std::optional<GapPeriod> gap_period(const Geolamination& L, const Gap& G, std::size_t search_bound) {
    auto faces = gaps_of(L);
    return face_orbit(L, faces, index_of(faces, G), search_bound).period;
}

int boundary_degree(const Geolamination& L, const Gap& G, std::size_t n) {
    auto faces = gaps_of(L);
    return degree_on(L, faces, index_of(faces, G), n);
}

GapClass classify_gap(const Geolamination& L, const Gap& G) {
    auto faces = gaps_of(L);
    return classify_index(L, faces, index_of(faces, G), 0);
}

EdgeFateReport check_edge_fate(const Geolamination& L, const Gap& G, std::size_t search_bound) {
    const int d = L.degree();
    EdgeFateReport r;
    for (const auto& e : G.edges) {
        EdgeFateEntry x{e, EdgeFate::unresolved, 0};
        Chord c = e;
        for (std::size_t j = 0; j <= search_bound; ++j) {
            if (is_periodic(d, c.p()) && is_periodic(d, c.q())) {
                x.fate = j == 0 ? EdgeFate::periodic : EdgeFate::preperiodic;
                x.steps = j;
                break;
            }
            Chord n = image(d, c);
            if (n.degenerate()) {
                x.fate = EdgeFate::precritical;
                x.steps = j + 1;
                break;
            }
            c = n;
        }
        if (x.fate == EdgeFate::unresolved) ++r.violations;
        r.entries.push_back(x);
    }
    return r;
}

std::string gap_report(const Geolamination& L, const Gap& G, bool classify) {
    std::ostringstream os;
    os << "gap " << G.str() << "\n";
    os << "  edges:";
    for (const auto& e : G.edges) os << " {" << e.p().str() << "," << e.q().str() << "}";
    os << "\n  holes:";
    for (const auto& h : G.holes) os << " " << h.str();
    os << "\n  frontier_exempt: " << (G.frontier_exempt ? "true" : "false") << "\n";
    if (!classify) return os.str();
    GapClass c = classify_gap(L, G);
    os << "  kind: " << gap_kind_name(c.kind);
    if (c.kind == GapKind::finite) os << " " << c.k << "-gon";
    if (c.kind == GapKind::fatou) os << " degree " << c.k;
    os << "\n";
    if (c.period) os << "  period: " << *c.period << "\n  preperiod: " << *c.preperiod << "\n";
    if (!c.note.empty()) os << "  note: " << c.note << "\n";
    if (c.period) {
        for (const auto& e : check_edge_fate(L, G).entries)
            os << "  edge " << e.edge.str() << ": " << edge_fate_name(e.fate) << " after " << e.steps << "\n";
    }
    return os.str();
}

}  // namespace lam
