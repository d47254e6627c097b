#include "lamination/geolam.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "lamination/error.hpp"
#include "lamination/gaps.hpp"

namespace lam {

const char* generator_kind_name(GeneratorKind k) {
    switch (k) {
        case GeneratorKind::critical_portrait: return "critical-portrait";
        case GeneratorKind::equivalence_relation: return "equivalence-relation";
        case GeneratorKind::explicit_list: return "explicit-list";
    }
    return "explicit-list";
}

std::vector<Chord> CriticalPortrait::critical_leaves() const {
    std::vector<Chord> out;
    for (const auto& s : sets)
        if (s.size() == 2) out.emplace_back(s[0], s[1]);
    return out;
}

std::vector<Chord> CriticalPortrait::edges() const {
    std::vector<Chord> out;
    for (const auto& s : sets) {
        auto e = hull_edges(s);
        out.insert(out.end(), e.begin(), e.end());
    }
    return out;
}

std::vector<Chord> hull_edges(std::vector<Angle> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::vector<Chord> out;
    if (pts.size() < 2) return out;
    if (pts.size() == 2) return {Chord(pts[0], pts[1])};
    for (std::size_t i = 0; i < pts.size(); ++i) out.emplace_back(pts[i], pts[(i + 1) % pts.size()]);
    std::sort(out.begin(), out.end());
    return out;
}

Geolamination::Geolamination(int degree, int depth) : degree_(degree), depth_(depth) {
    require_degree(degree);
}

std::vector<Chord> Geolamination::leaf_list() const {
    std::vector<Chord> out;
    out.reserve(leaves_.size());
    for (const auto& [c, g] : leaves_) out.push_back(c);
    return out;
}

int Geolamination::generation(const Chord& c) const {
    auto it = leaves_.find(c);
    if (it != leaves_.end()) return it->second;
    return escape_depth(degree_, c);
}

bool Geolamination::insert(const Chord& c) {
    if (c.degenerate()) return false;
    if (leaves_.count(c)) return false;
    leaves_.emplace(c, escape_depth(degree_, c));
    return true;
}

std::vector<Chord> Geolamination::preimage_leaves(const Chord& target) const {
    std::vector<Chord> out;
    for (const auto& [c, g] : leaves_)
        if (image(degree_, c) == target) out.push_back(c);
    return out;
}

bool Geolamination::same_leaves(const Geolamination& o) const {
    if (leaves_.size() != o.leaves_.size()) return false;
    auto a = leaves_.begin();
    auto b = o.leaves_.begin();
    for (; a != leaves_.end(); ++a, ++b)
        if (a->first != b->first) return false;
    return true;
}

std::string InvarianceReport::to_json() const {
    using nlohmann::json;
    json j;
    j["verdict"] = pass() ? "pass" : "fail";
    json v = json::array();
    for (const auto& x : violations) {
        json w = json::array();
        for (const auto& c : x.witness) w.push_back(c.str());
        v.push_back({{"rule", x.rule}, {"witness", w}, {"detail", x.detail}});
    }
    j["violations"] = v;
    json e = json::array();
    for (const auto& x : exemptions) e.push_back({{"rule", x.rule}, {"leaf", x.leaf.str()}});
    j["exemptions"] = e;
    j["exempt_gaps"] = exempt_gaps;
    return j.dump(2);
}

namespace {

// endpoint intervals cut at 0: chords cross iff their intervals interleave strictly
bool has_crossing(const std::vector<Chord>& cs) {
    std::vector<Chord> v = cs;
    std::sort(v.begin(), v.end(), [](const Chord& a, const Chord& b) {
        if (a.p() != b.p()) return a.p() < b.p();
        return a.q() > b.q();
    });
    std::vector<const Chord*> stack;
    for (const auto& c : v) {
        while (!stack.empty() && stack.back()->q() <= c.p()) stack.pop_back();
        if (!stack.empty() && stack.back()->q() < c.q() && stack.back()->p() < c.p()) return true;
        stack.push_back(&c);
    }
    return false;
}

}  // namespace

InvarianceReport verify_unlinked(const Geolamination& L) {
    InvarianceReport r;
    auto cs = L.leaf_list();
    if (!has_crossing(cs)) return r;
    for (std::size_t i = 0; i < cs.size(); ++i)
        for (std::size_t j = i + 1; j < cs.size(); ++j)
            if (linked(cs[i], cs[j])) r.violations.push_back({"E2", {cs[i], cs[j]}, "leaves cross"});
    return r;
}

namespace {

std::map<Chord, std::vector<Chord>> image_index(const Geolamination& L) {
    std::map<Chord, std::vector<Chord>> idx;
    for (const auto& [c, g] : L.leaves()) {
        Chord im = image(L.degree(), c);
        if (!im.degenerate()) idx[im].push_back(c);
    }
    return idx;
}

// some k-subset of cs is pairwise disjoint
bool has_disjoint_family(const std::vector<Chord>& cs, std::size_t k, std::size_t start,
                         std::vector<Chord>& pick) {
    if (pick.size() == k) return true;
    for (std::size_t i = start; i < cs.size(); ++i) {
        bool ok = std::all_of(pick.begin(), pick.end(), [&](const Chord& p) { return disjoint(p, cs[i]); });
        if (!ok) continue;
        pick.push_back(cs[i]);
        if (has_disjoint_family(cs, k, i + 1, pick)) return true;
        pick.pop_back();
    }
    return false;
}

void image_stored(const Geolamination& L, const char* rule, InvarianceReport& r) {
    for (const auto& [c, g] : L.leaves()) {
        Chord im = image(L.degree(), c);
        if (!im.degenerate() && !L.contains(im))
            r.violations.push_back({rule, {c, im}, "image is not a leaf"});
    }
}

// image hull of a gap must be a point, a stored leaf or a gap with the same cyclic order
void check_gap(const Geolamination& L, const Gap& G, InvarianceReport& r) {
    const int d = L.degree();
    const std::size_t k = G.vertices.size();
    if (k < 2) return;
    std::vector<Angle> img(k);
    for (std::size_t i = 0; i < k; ++i) img[i] = sigma(d, G.vertices[i]);
    std::vector<Angle> S = img;
    std::sort(S.begin(), S.end());
    S.erase(std::unique(S.begin(), S.end()), S.end());
    if (S.size() == 1) return;
    for (std::size_t i = 0; i < k; ++i) {
        const Angle& a = img[i];
        const Angle& b = img[(i + 1) % k];
        if (a == b) continue;
        for (const auto& s : S)
            if (strictly_between(a, s, b)) {
                r.violations.push_back({"T2", G.edges, "boundary map reverses circular order"});
                return;
            }
    }
    if (S.size() == 2) {
        Chord c(S[0], S[1]);
        if (!L.contains(c) && escape_depth(d, c) < L.depth())
            r.violations.push_back({"T2", {c}, "gap image is a chord that is not a leaf"});
        return;
    }
    if (auto c = leaf_inside_hull(L, S, L.depth() - 1))
        r.violations.push_back({"T2", {*c}, "leaf inside the image hull of a gap"});
}

}  // namespace

InvarianceReport is_sibling_invariant(const Geolamination& L) {
    InvarianceReport r = verify_unlinked(L);
    if (!r.pass()) return r;
    const int d = L.degree();
    const int N = L.depth();
    image_stored(L, "S1", r);
    auto idx = image_index(L);
    for (const auto& [c, g] : L.leaves()) {
        if (g >= N) {
            r.exemptions.push_back({"S2", c});
            continue;
        }
        if (!idx.count(c)) r.violations.push_back({"S2", {c}, "no preimage leaf"});
    }
    for (const auto& [c, g] : L.leaves()) {
        Chord im = image(d, c);
        if (im.degenerate()) continue;
        if (!L.contains(im)) continue;  // reported under S1
        if (L.generation(im) + 1 > N) {
            r.exemptions.push_back({"S3", c});
            continue;
        }
        bool found = false;
        for (const auto& col : sibling_collections(d, im)) {
            if (std::find(col.leaves.begin(), col.leaves.end(), c) == col.leaves.end()) continue;
            if (std::all_of(col.leaves.begin(), col.leaves.end(), [&](const Chord& x) { return L.contains(x); })) {
                found = true;
                break;
            }
        }
        if (!found) r.violations.push_back({"S3", {c}, "no full collection of disjoint siblings"});
    }
    return r;
}

InvarianceReport is_thurston_invariant(const Geolamination& L) {
    InvarianceReport r = verify_unlinked(L);
    if (!r.pass()) return r;
    const int d = L.degree();
    const int N = L.depth();
    image_stored(L, "T1", r);
    auto idx = image_index(L);
    for (const auto& [c, g] : L.leaves()) {
        if (g >= N) {
            r.exemptions.push_back({"T1", c});
            continue;
        }
        auto it = idx.find(c);
        std::vector<Chord> pick;
        if (it == idx.end() || !has_disjoint_family(it->second, static_cast<std::size_t>(d), 0, pick))
            r.violations.push_back({"T1", {c}, "fewer than d disjoint preimage leaves"});
    }
    for (const auto& G : gaps_of(L)) {
        if (G.frontier_exempt) {
            ++r.exempt_gaps;
            continue;
        }
        check_gap(L, G, r);
    }
    return r;
}

std::vector<SiblingCollection> preimage_collections(int d, const Chord& l) {
    return sibling_collections(d, l);
}

namespace {

void require_portrait(int d, const CriticalPortrait& P) {
    for (const auto& s : P.sets) {
        if (s.size() < 2) throw Error(ErrorCode::invalid_portrait, "portrait member with fewer than 2 points");
        std::map<Angle, int> count;
        for (const auto& a : s) ++count[sigma(d, a)];
        for (const auto& [y, n] : count)
            if (n < 2) {
                std::string w;
                for (const auto& a : s) w += a.str() + " ";
                throw Error(ErrorCode::invalid_portrait, "portrait member is not critical: " + w);
            }
    }
    auto e = P.edges();
    for (std::size_t i = 0; i < e.size(); ++i)
        for (std::size_t j = i + 1; j < e.size(); ++j)
            if (linked(e[i], e[j]))
                throw Error(ErrorCode::invalid_portrait, "portrait members cross",
                            {e[i].str(), e[j].str()});
}

class Builder {
public:
    Builder(const PullbackRequest& req) : req_(req), L_(req.degree, req.depth) {}

    Geolamination run() {
        const int d = req_.degree;
        require_portrait(d, req_.portrait);
        constraints_ = req_.constraints;
        auto pe = req_.portrait.edges();
        for (const auto& c : req_.portrait.critical_leaves()) L_.insert(c);
        if (req_.store_polygon_edges)
            for (const auto& c : pe) L_.insert(c);
        else
            constraints_.insert(constraints_.end(), pe.begin(), pe.end());
        for (const auto& c : req_.base) L_.insert(c);
        for (const auto& s : req_.portrait.sets) {
            std::vector<Angle> im;
            for (const auto& a : s) im.push_back(sigma(d, a));
            for (const auto& c : hull_edges(im)) insert_orbit(c);
        }
        for (const auto& c : req_.seeds) insert_orbit(c);
        check_consistent();

        for (int level = 0; level < req_.depth; ++level) run_level(level);
        L_.generator.kind = GeneratorKind::critical_portrait;
        L_.generator.portrait = req_.portrait;
        L_.generator.policy = req_.policy.name();
        return L_;
    }

private:
    void insert_orbit(Chord c) {
        while (!c.degenerate() && L_.insert(c)) c = image(req_.degree, c);
    }

    void check_consistent() {
        auto all = L_.leaf_list();
        all.insert(all.end(), constraints_.begin(), constraints_.end());
        for (std::size_t i = 0; i < all.size(); ++i)
            for (std::size_t j = i + 1; j < all.size(); ++j)
                if (linked(all[i], all[j]))
                    throw Error(ErrorCode::invalid_portrait, "initial leaves cross",
                                {all[i].str(), all[j].str()});
    }

    bool crosses(const Chord& c) const {
        for (const auto& [l, g] : L_.leaves())
            if (linked(c, l)) return true;
        for (const auto& k : constraints_)
            if (linked(c, k)) return true;
        return false;
    }

    // compatible collections, restricted to those reusing the most stored leaves
    std::vector<SiblingCollection> candidates(const Chord& l, bool& satisfied) const {
        satisfied = false;
        std::vector<SiblingCollection> ok;
        for (auto& col : sibling_collections(req_.degree, l)) {
            bool good = std::none_of(col.leaves.begin(), col.leaves.end(), [&](const Chord& c) {
                return !L_.contains(c) && crosses(c);
            });
            if (good) ok.push_back(std::move(col));
        }
        std::size_t best = 0;
        std::vector<std::size_t> present(ok.size());
        for (std::size_t i = 0; i < ok.size(); ++i) {
            present[i] = static_cast<std::size_t>(std::count_if(
                ok[i].leaves.begin(), ok[i].leaves.end(), [&](const Chord& c) { return L_.contains(c); }));
            best = std::max(best, present[i]);
        }
        if (best == static_cast<std::size_t>(req_.degree)) satisfied = true;
        std::vector<SiblingCollection> out;
        for (std::size_t i = 0; i < ok.size(); ++i)
            if (present[i] == best) out.push_back(ok[i]);
        return out;
    }

    void add(const SiblingCollection& col, std::vector<Chord>& pending, int level) {
        for (const auto& c : col.leaves)
            if (L_.insert(c) && L_.generation(c) <= level) pending.push_back(c);
    }

    SiblingCollection decide(const Chord& l, std::vector<SiblingCollection> cands) const {
        const auto& pol = req_.policy;
        if (pol.home) {
            std::vector<SiblingCollection> keep;
            for (const auto& col : cands)
                if (std::any_of(col.leaves.begin(), col.leaves.end(), [&](const Chord& c) {
                        return pol.home->contains(c.p()) && pol.home->contains(c.q());
                    }))
                    keep.push_back(col);
            if (!keep.empty()) cands = keep;
        }
        if (pol.kind == ChoicePolicy::Kind::scripted) {
            auto it = pol.schedule.find(l);
            if (it != pol.schedule.end()) {
                std::vector<SiblingCollection> keep;
                for (const auto& col : cands)
                    if (std::all_of(it->second.begin(), it->second.end(), [&](const Chord& c) {
                            return std::find(col.leaves.begin(), col.leaves.end(), c) != col.leaves.end();
                        }))
                        keep.push_back(col);
                cands = keep;
            }
            for (const auto& rule : pol.side_rules) {
                std::vector<SiblingCollection> keep;
                for (const auto& col : cands) {
                    bool touches = false, good = true;
                    for (const auto& c : col.leaves)
                        if (c.has_endpoint(rule.vertex)) {
                            touches = true;
                            if (!rule.region.contains(c.other(rule.vertex))) good = false;
                        }
                    if (touches && good) keep.push_back(col);
                }
                if (!keep.empty()) cands = keep;
            }
            if (cands.size() == 1) return cands[0];
            throw Error(ErrorCode::ambiguous_pullback, "scripted policy cannot resolve " + l.brace(), {l.str()});
        }
        // canonical: longest shortest leaf, then lexicographic
        auto score = [](const SiblingCollection& col) {
            mpq_class m = chord_length(col.leaves[0]);
            for (const auto& c : col.leaves) m = std::min(m, chord_length(c));
            return m;
        };
        std::size_t best = 0;
        for (std::size_t i = 1; i < cands.size(); ++i)
            if (score(cands[i]) > score(cands[best])) best = i;
        return cands[best];
    }

    void run_level(int level) {
        std::vector<Chord> pending;
        for (const auto& [c, g] : L_.leaves())
            if (g == level) pending.push_back(c);
        std::set<Chord> done;
        while (true) {
            std::sort(pending.begin(), pending.end());
            pending.erase(std::unique(pending.begin(), pending.end()), pending.end());
            std::erase_if(pending, [&](const Chord& c) { return done.count(c) != 0; });
            if (pending.empty()) return;
            bool progress = false;
            std::optional<std::pair<Chord, std::vector<SiblingCollection>>> open;
            std::vector<Chord> added;
            for (const auto& l : pending) {
                bool satisfied = false;
                auto cands = candidates(l, satisfied);
                if (cands.empty())
                    throw Error(ErrorCode::not_invariant, "no compatible pullback of " + l.brace(), {l.str()});
                if (satisfied || cands.size() == 1) {
                    if (!satisfied) add(cands[0], added, level);
                    done.insert(l);
                    progress = true;
                } else if (!open) {
                    open.emplace(l, std::move(cands));
                }
            }
            if (!progress && open) {
                add(decide(open->first, open->second), added, level);
                done.insert(open->first);
            }
            pending.insert(pending.end(), added.begin(), added.end());
        }
    }

    const PullbackRequest& req_;
    Geolamination L_;
    std::vector<Chord> constraints_;
};

}  // namespace

Geolamination pullback_extend(const PullbackRequest& req) { return Builder(req).run(); }

Geolamination pullback_construct(int d, const CriticalPortrait& portrait, int depth,
                                 const ChoicePolicy& policy) {
    PullbackRequest req;
    req.degree = d;
    req.portrait = portrait;
    req.depth = depth;
    req.policy = policy;
    return pullback_extend(req);
}

namespace {

using Class = std::vector<Angle>;

std::string class_str(const Class& c) {
    std::string s = "{";
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + c[i].str();
    return s + "}";
}

// index of the hole of sorted set A containing x (x not in A)
std::size_t hole_of(const Class& A, const Angle& x) {
    auto i = static_cast<std::size_t>(std::lower_bound(A.begin(), A.end(), x) - A.begin());
    return i % A.size();
}

bool hulls_disjoint(const Class& A, const Class& B) {
    for (const auto& b : B)
        if (std::binary_search(A.begin(), A.end(), b)) return false;
    if (A.size() < 2 || B.size() < 2) return true;
    std::size_t h = hole_of(A, B[0]);
    return std::all_of(B.begin(), B.end(), [&](const Angle& b) { return hole_of(A, b) == h; });
}

Class image_set(int d, const Class& C) {
    Class T;
    for (const auto& a : C) T.push_back(sigma(d, a));
    std::sort(T.begin(), T.end());
    T.erase(std::unique(T.begin(), T.end()), T.end());
    return T;
}

// each hole (a,b) of C maps onto a hole of sigma(C) or collapses
bool hole_condition(int d, const Class& C) {
    Class T = image_set(d, C);
    if (T.size() < 2) return true;
    for (std::size_t i = 0; i < C.size(); ++i) {
        Angle a = sigma(d, C[i]), b = sigma(d, C[(i + 1) % C.size()]);
        if (a == b) continue;
        for (const auto& t : T)
            if (strictly_between(a, t, b)) return false;
    }
    return true;
}

int class_generation(int d, const Class& C) {
    int g = -1;
    for (const auto& e : hull_edges(C)) {
        int x = escape_depth(d, e);
        g = g < 0 ? x : std::min(g, x);
    }
    return std::max(g, 0);
}

class ClassClosure {
public:
    ClassClosure(int d, int depth) : d_(d), depth_(depth) {}

    void add_initial(Class C) {
        std::sort(C.begin(), C.end());
        C.erase(std::unique(C.begin(), C.end()), C.end());
        if (C.size() < 2) return;
        for (const auto& E : classes_)
            if (!hulls_disjoint(E, C))
                throw Error(ErrorCode::not_a_lamination, "class hulls meet",
                            {class_str(E), class_str(C)});
        add(C);
    }

    void forward() {
        for (std::size_t i = 0; i < classes_.size(); ++i) {
            Class C = classes_[i];
            if (!hole_condition(d_, C))
                throw Error(ErrorCode::not_invariant, "class map reverses order (D2)", {class_str(C)});
            Class T = image_set(d_, C);
            if (T.size() == 1) {
                auto it = owner_.find(T[0]);
                if (it != owner_.end())
                    throw Error(ErrorCode::not_invariant, "class collapses into a larger class (D1)",
                                {class_str(C), class_str(classes_[it->second])});
                continue;
            }
            auto existing = match(T);
            if (existing) continue;
            for (const auto& E : classes_)
                if (!hulls_disjoint(E, T))
                    throw Error(ErrorCode::not_invariant, "image of a class is not a class (D1)",
                                {class_str(C), class_str(E)});
            add(T);
        }
    }

    void backward() {
        std::vector<std::size_t> queue;
        for (std::size_t i = 0; i < classes_.size(); ++i) queue.push_back(i);
        std::size_t head = 0;
        while (head < queue.size()) {
            Class C = classes_[queue[head++]];
            if (class_generation(d_, C) >= depth_) continue;
            for (std::size_t id : pull(C)) queue.push_back(id);
        }
    }

    Geolamination result(const std::vector<Class>& initial) const {
        Geolamination L(d_, depth_);
        for (const auto& C : classes_)
            for (const auto& e : hull_edges(C))
                if (escape_depth(d_, e) <= depth_) L.insert(e);
        L.generator.kind = GeneratorKind::equivalence_relation;
        L.generator.classes = initial;
        return L;
    }

private:
    std::optional<std::size_t> match(const Class& T) const {
        auto it = owner_.find(T[0]);
        if (it == owner_.end()) return std::nullopt;
        if (classes_[it->second] != T)
            throw Error(ErrorCode::not_invariant, "image of a class meets another class (D1)",
                        {class_str(T), class_str(classes_[it->second])});
        return it->second;
    }

    std::size_t add(const Class& C) {
        classes_.push_back(C);
        for (const auto& a : C) owner_[a] = classes_.size() - 1;
        return classes_.size() - 1;
    }

    // partitions of pts into parts each covering every point of C equally often
    void partitions(const Class& C, std::vector<Angle> rest, std::vector<Class>& cur,
                    std::vector<std::vector<Class>>& out) const {
        if (rest.empty()) {
            out.push_back(cur);
            return;
        }
        std::sort(rest.begin(), rest.end());
        Angle first = rest[0];
        Angle target = sigma(d_, first);
        // per image point, the remaining preimages
        std::map<Angle, std::vector<Angle>> by;
        for (const auto& a : rest) by[sigma(d_, a)].push_back(a);
        std::size_t maxj = by[target].size();
        for (const auto& [y, v] : by) maxj = std::min(maxj, v.size());
        for (std::size_t j = 1; j <= maxj; ++j) {
            // choose j preimages of each point of C, the first point forced in
            std::vector<std::vector<std::vector<Angle>>> choices;
            for (const auto& c : C) {
                auto& v = by[c];
                std::vector<std::vector<Angle>> subs;
                std::size_t n = v.size();
                for (unsigned mask = 0; mask < (1u << n); ++mask) {
                    if (static_cast<std::size_t>(__builtin_popcount(mask)) != j) continue;
                    std::vector<Angle> s;
                    for (std::size_t k = 0; k < n; ++k)
                        if (mask & (1u << k)) s.push_back(v[k]);
                    if (c == target && std::find(s.begin(), s.end(), first) == s.end()) continue;
                    subs.push_back(s);
                }
                choices.push_back(subs);
            }
            std::vector<std::size_t> idx(choices.size(), 0);
            bool empty = std::any_of(choices.begin(), choices.end(), [](const auto& v) { return v.empty(); });
            while (!empty) {
                Class part;
                for (std::size_t k = 0; k < choices.size(); ++k)
                    part.insert(part.end(), choices[k][idx[k]].begin(), choices[k][idx[k]].end());
                std::sort(part.begin(), part.end());
                std::vector<Angle> left;
                std::set_difference(rest.begin(), rest.end(), part.begin(), part.end(), std::back_inserter(left));
                cur.push_back(part);
                partitions(C, left, cur, out);
                cur.pop_back();
                std::size_t k = 0;
                while (k < idx.size() && ++idx[k] == choices[k].size()) idx[k++] = 0;
                if (k == idx.size()) break;
            }
        }
    }

    std::vector<std::size_t> pull(const Class& C) {
        std::vector<Angle> P;
        for (const auto& c : C) {
            auto pre = preimages(d_, c);
            P.insert(P.end(), pre.begin(), pre.end());
        }
        std::sort(P.begin(), P.end());
        std::set<std::size_t> present;
        for (const auto& a : P) {
            auto it = owner_.find(a);
            if (it != owner_.end()) present.insert(it->second);
        }
        std::vector<Angle> rest = P;
        for (std::size_t id : present) {
            const Class& E = classes_[id];
            if (image_set(d_, E) != C || !std::includes(P.begin(), P.end(), E.begin(), E.end()))
                throw Error(ErrorCode::not_invariant, "class meets the preimage of a class it does not cover",
                            {class_str(E), class_str(C)});
            std::vector<Angle> left;
            std::set_difference(rest.begin(), rest.end(), E.begin(), E.end(), std::back_inserter(left));
            rest = left;
        }
        if (rest.empty()) return {};
        std::vector<std::vector<Class>> all;
        std::vector<Class> cur;
        partitions(C, rest, cur, all);
        std::vector<std::vector<Class>> good;
        for (const auto& parts : all) {
            bool ok = true;
            for (std::size_t i = 0; i < parts.size() && ok; ++i) {
                if (!hole_condition(d_, parts[i])) ok = false;
                for (std::size_t j = i + 1; j < parts.size() && ok; ++j)
                    if (!hulls_disjoint(parts[i], parts[j])) ok = false;
                for (const auto& E : classes_)
                    if (ok && !hulls_disjoint(E, parts[i])) ok = false;
            }
            if (ok) good.push_back(parts);
        }
        if (good.empty())
            throw Error(ErrorCode::not_invariant, "no admissible preimage classes", {class_str(C)});
        // shortest hull edges first, then fewest critical classes
        auto longest = [](const std::vector<Class>& parts) {
            mpq_class m = 0;
            for (const auto& p : parts)
                for (const auto& e : hull_edges(p)) m = std::max(m, chord_length(e));
            return m;
        };
        mpq_class shortest = longest(good[0]);
        for (const auto& g : good) shortest = std::min(shortest, longest(g));
        std::erase_if(good, [&](const auto& g) { return longest(g) != shortest; });
        std::size_t most = 0;
        for (const auto& g : good) most = std::max(most, g.size());
        std::erase_if(good, [&](const auto& g) { return g.size() != most; });
        if (good.size() > 1)
            throw Error(ErrorCode::ambiguous_pullback, "preimage classes not determined", {class_str(C)});
        std::vector<std::size_t> ids;
        for (const auto& part : good[0]) ids.push_back(add(part));
        return ids;
    }

    int d_;
    int depth_;
    std::vector<Class> classes_;
    std::map<Angle, std::size_t> owner_;
};

}  // namespace

Geolamination from_equivalence(int d, const std::vector<std::vector<Angle>>& classes, int depth) {
    require_degree(d);
    ClassClosure cl(d, depth);
    for (const auto& C : classes) cl.add_initial(C);
    cl.forward();
    cl.backward();
    return cl.result(classes);
}

const char* motion_name(Motion m) {
    switch (m) {
        case Motion::positive: return "positive";
        case Motion::negative: return "negative";
        case Motion::mixed: return "mixed";
        case Motion::collapses: return "collapses-to-vertex";
        case Motion::none: return "none";
    }
    return "none";
}

Cone cone_at(const Geolamination& L, const Angle& v) {
    Cone C{v, {}};
    for (const auto& [c, g] : L.leaves())
        if (c.has_endpoint(v)) C.leaves.push_back(c);
    return C;
}

ConeAnalysis analyze_cone(const Geolamination& L, const Cone& C) {
    const int d = L.degree();
    const Angle& v = C.vertex;
    auto vi = orbit_info(d, v);
    if (vi.preperiod != 0) throw Error(ErrorCode::unsupported_vertex, "cone vertex " + v.str() + " is not periodic");
    ConeAnalysis A;
    A.vertex = v;
    A.period = vi.period;
    for (const auto& c : C.leaves) A.basis.push_back(c.other(v));
    std::sort(A.basis.begin(), A.basis.end(),
              [&](const Angle& a, const Angle& b) { return arc_length(v, a) < arc_length(v, b); });
    A.all_periodic = std::all_of(A.basis.begin(), A.basis.end(), [&](const Angle& a) { return is_periodic(d, a); });
    for (const auto& a : A.basis)
        if (is_periodic(d, a) && orbit_info(d, a).period != vi.period) A.periods_match = false;
    if (A.all_periodic && A.basis.size() > 2) A.at_most_two_leaves = false;

    for (const auto& a : A.basis)
        if (sigma_n(d, a, A.period) == a) A.fixed_rays.push_back(a);
    std::vector<Angle> cuts;
    cuts.push_back(v);
    cuts.insert(cuts.end(), A.fixed_rays.begin(), A.fixed_rays.end());
    cuts.push_back(v);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        ConeInterval I{cuts[i], cuts[i + 1], Motion::none};
        bool pos = false, neg = false, col = false;
        mpq_class lo = arc_length(v, cuts[i]);
        mpq_class hi = i + 2 == cuts.size() ? mpq_class(1) : arc_length(v, cuts[i + 1]);
        for (const auto& a : A.basis) {
            mpq_class x = arc_length(v, a);
            if (x <= lo || x >= hi) continue;
            Angle b = sigma_n(d, a, A.period);
            if (b == v) {
                col = true;
                continue;
            }
            mpq_class y = arc_length(v, b);
            (y > x ? pos : neg) = true;
        }
        if (pos && neg) I.motion = Motion::mixed;
        else if (pos) I.motion = Motion::positive;
        else if (neg) I.motion = Motion::negative;
        else if (col) I.motion = Motion::collapses;
        if (I.motion == Motion::mixed) A.mixed_interval = true;
        A.intervals.push_back(I);
    }
    return A;
}

std::vector<Angle> max_collapsing_polygon(const Geolamination& L, const std::vector<Chord>& chain) {
    const int d = L.degree();
    if (chain.empty()) throw Error(ErrorCode::invalid_chain, "empty chain");
    Chord target = image(d, chain[0]);
    if (target.degenerate()) throw Error(ErrorCode::invalid_chain, "chain leaves are critical");
    for (std::size_t i = 0; i < chain.size(); ++i) {
        if (image(d, chain[i]) != target)
            throw Error(ErrorCode::invalid_chain, "chain images differ", {chain[0].str(), chain[i].str()});
        if (i > 0) {
            const auto& a = chain[i - 1];
            const auto& b = chain[i];
            if (!a.has_endpoint(b.p()) && !a.has_endpoint(b.q()))
                throw Error(ErrorCode::invalid_chain, "chain is not a concatenation", {a.str(), b.str()});
        }
    }
    std::set<Angle> P;
    for (const auto& c : chain) {
        P.insert(c.p());
        P.insert(c.q());
    }
    auto same = L.preimage_leaves(target);
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& c : same) {
            if (P.count(c.p()) == P.count(c.q())) continue;
            P.insert(c.p());
            P.insert(c.q());
            grew = true;
        }
    }
    return {P.begin(), P.end()};
}

namespace {

struct Seg {
    double ax, ay, bx, by;
};

Seg segment(const Chord& c) {
    double t1 = 2 * M_PI * c.p().to_double(), t2 = 2 * M_PI * c.q().to_double();
    return {std::cos(t1), std::sin(t1), std::cos(t2), std::sin(t2)};
}

double point_segment(double x, double y, const Seg& s) {
    double dx = s.bx - s.ax, dy = s.by - s.ay;
    double len2 = dx * dx + dy * dy;
    double t = len2 > 0 ? ((x - s.ax) * dx + (y - s.ay) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    double px = s.ax + t * dx - x, py = s.ay + t * dy - y;
    return std::sqrt(px * px + py * py);
}

double directed(const Geolamination& A, const Geolamination& B, int res, int jobs) {
    std::vector<Chord> own;
    for (const auto& [c, g] : A.leaves())
        if (!B.contains(c)) own.push_back(c);
    std::vector<Seg> other;
    for (const auto& [c, g] : B.leaves()) other.push_back(segment(c));
    jobs = std::max(1, jobs);
    std::vector<double> best(static_cast<std::size_t>(jobs), 0.0);
    auto work = [&](int w) {
        for (std::size_t i = static_cast<std::size_t>(w); i < own.size(); i += static_cast<std::size_t>(jobs)) {
            Seg s = segment(own[i]);
            for (int k = 0; k < res; ++k) {
                double t = res == 1 ? 0.0 : static_cast<double>(k) / (res - 1);
                double x = s.ax + t * (s.bx - s.ax), y = s.ay + t * (s.by - s.ay);
                double m = 1.0 - std::sqrt(x * x + y * y);
                for (const auto& o : other) m = std::min(m, point_segment(x, y, o));
                best[static_cast<std::size_t>(w)] = std::max(best[static_cast<std::size_t>(w)], m);
            }
        }
    };
    if (jobs == 1) {
        work(0);
    } else {
        std::vector<std::thread> ts;
        for (int w = 0; w < jobs; ++w) ts.emplace_back(work, w);
        for (auto& t : ts) t.join();
    }
    return *std::max_element(best.begin(), best.end());
}

}  // namespace

double hausdorff_distance(const Geolamination& L1, const Geolamination& L2, int resolution, int jobs) {
    if (resolution < 8) throw Error(ErrorCode::invalid_input, "resolution must be at least 8");
    return std::max(directed(L1, L2, resolution, jobs), directed(L2, L1, resolution, jobs));
}

}  // namespace lam
