#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "lamination/circle.hpp"

namespace lam {

// Unordered pair of angles stored with p <= q. Degenerate iff p == q.
class Chord {
public:
    Chord() = default;
    Chord(const Angle& a, const Angle& b);
    static Chord point(const Angle& a) { return Chord(a, a); }
    static Chord parse(std::string_view s);

    const Angle& p() const { return p_; }
    const Angle& q() const { return q_; }
    bool degenerate() const { return p_ == q_; }
    bool has_endpoint(const Angle& a) const { return p_ == a || q_ == a; }
    // the endpoint that is not a; a must be an endpoint
    const Angle& other(const Angle& a) const { return p_ == a ? q_ : p_; }
    std::string str() const { return p_.str() + " " + q_.str(); }
    std::string brace() const { return "{" + p_.str() + "," + q_.str() + "}"; }

    friend bool operator==(const Chord&, const Chord&) = default;
    friend std::strong_ordering operator<=>(const Chord& a, const Chord& b) {
        if (auto c = a.p_ <=> b.p_; c != 0) return c;
        return a.q_ <=> b.q_;
    }

private:
    Angle p_, q_;
};

struct SiblingCollection {
    std::vector<Chord> leaves;
    friend bool operator==(const SiblingCollection&, const SiblingCollection&) = default;
    friend auto operator<=>(const SiblingCollection&, const SiblingCollection&) = default;
};

bool linked(const Chord& l1, const Chord& l2);
// closed chords meet (crossing, shared endpoint, or a degenerate chord lying on the other)
bool intersects(const Chord& l1, const Chord& l2);
// no crossing and no shared endpoint
bool disjoint(const Chord& l1, const Chord& l2);
mpq_class chord_length(const Chord& l);
Chord image(int d, const Chord& l);
Chord image_n(int d, const Chord& l, std::size_t n);
bool is_critical(int d, const Chord& l);
std::vector<SiblingCollection> sibling_collections(int d, const Chord& l);

// Minimal n >= 0 such that sigma^n(l) has both endpoints periodic or sigma^(n+1)(l)
// is degenerate. Serves as the pullback generation of l.
int escape_depth(int d, const Chord& l);

}  // namespace lam
