#include "lamination/chords.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "lamination/error.hpp"

namespace lam {

Chord::Chord(const Angle& a, const Angle& b) : p_(a < b ? a : b), q_(a < b ? b : a) {}

Chord Chord::parse(std::string_view s) {
    std::string t(s);
    for (char& c : t)
        if (c == '{' || c == '}' || c == ',') c = ' ';
    std::vector<std::string> tok;
    std::size_t i = 0;
    while (i < t.size()) {
        while (i < t.size() && std::isspace(static_cast<unsigned char>(t[i]))) ++i;
        std::size_t j = i;
        while (j < t.size() && !std::isspace(static_cast<unsigned char>(t[j]))) ++j;
        if (j > i) tok.push_back(t.substr(i, j - i));
        i = j;
    }
    if (tok.size() != 2) throw Error(ErrorCode::parse_error, "chord needs two angles: '" + std::string(s) + "'");
    return Chord(Angle::parse(tok[0]), Angle::parse(tok[1]));
}

bool linked(const Chord& l1, const Chord& l2) {
    if (l1.degenerate() || l2.degenerate()) return false;
    if (l1.has_endpoint(l2.p()) || l1.has_endpoint(l2.q())) return false;
    bool a = strictly_between(l1.p(), l2.p(), l1.q());
    bool b = strictly_between(l1.p(), l2.q(), l1.q());
    return a != b;
}

bool intersects(const Chord& l1, const Chord& l2) {
    if (l1.has_endpoint(l2.p()) || l1.has_endpoint(l2.q())) return true;
    return linked(l1, l2);
}

bool disjoint(const Chord& l1, const Chord& l2) { return !intersects(l1, l2); }

mpq_class chord_length(const Chord& l) {
    mpq_class a = arc_length(l.p(), l.q());
    mpq_class b = arc_length(l.q(), l.p());
    if (l.degenerate()) return 0;
    return a < b ? a : b;
}

Chord image(int d, const Chord& l) { return Chord(sigma(d, l.p()), sigma(d, l.q())); }

Chord image_n(int d, const Chord& l, std::size_t n) {
    Chord c = l;
    for (std::size_t i = 0; i < n; ++i) c = image(d, c);
    return c;
}

bool is_critical(int d, const Chord& l) { return !l.degenerate() && image(d, l).degenerate(); }

std::vector<SiblingCollection> sibling_collections(int d, const Chord& l) {
    require_degree(d);
    if (l.degenerate()) throw Error(ErrorCode::no_sibling_decomposition, "degenerate chord " + l.brace());
    auto P = preimages(d, l.p());
    auto Q = preimages(d, l.q());
    std::vector<int> perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<SiblingCollection> out;
    do {
        SiblingCollection c;
        for (int i = 0; i < d; ++i) c.leaves.emplace_back(P[i], Q[perm[i]]);
        bool ok = true;
        for (int i = 0; i < d && ok; ++i)
            for (int j = i + 1; j < d && ok; ++j)
                if (!disjoint(c.leaves[i], c.leaves[j])) ok = false;
        if (ok) {
            std::sort(c.leaves.begin(), c.leaves.end());
            out.push_back(std::move(c));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::sort(out.begin(), out.end());
    return out;
}

int escape_depth(int d, const Chord& l) {
    if (l.degenerate()) return 0;
    Angle a = l.p(), b = l.q();
    for (int n = 0;; ++n) {
        if (is_periodic(d, a) && is_periodic(d, b)) return n;
        Angle a2 = sigma(d, a), b2 = sigma(d, b);
        if (a2 == b2) return n;
        a = a2;
        b = b2;
    }
}

}  // namespace lam
