#include "lamination/fixtures.hpp"

#include "lamination/quadratic.hpp"

namespace lam::fixtures {

namespace {

Geolamination from_minor(const Chord& m, int depth, const char* label) {
    Geolamination L = pullback_construct(2, minor_portrait(m), depth, ChoicePolicy::canonical());
    L.label = label;
    return L;
}

CriticalPortrait diameter() { return CriticalPortrait{{{Angle(0, 1), Angle(1, 2)}}}; }

}  // namespace

Geolamination basilica(int depth) { return from_minor(Chord(Angle(1, 3), Angle(2, 3)), depth, "basilica"); }
Geolamination rabbit(int depth) { return from_minor(Chord(Angle(1, 7), Angle(2, 7)), depth, "rabbit"); }
Geolamination airplane(int depth) { return from_minor(Chord(Angle(3, 7), Angle(4, 7)), depth, "airplane"); }

ChoicePolicy l12_policy() {
    ChoicePolicy p;
    p.kind = ChoicePolicy::Kind::scripted;
    p.schedule[Chord(Angle(0, 1), Angle(1, 2))] = {Chord(Angle(1, 4), Angle(1, 2)), Chord(Angle(3, 4), Angle(0, 1))};
    return p;
}

Geolamination l12(int depth) {
    Geolamination L = pullback_construct(2, diameter(), depth, l12_policy());
    L.label = "L12";
    return L;
}

Geolamination l12a(int depth) {
    PullbackRequest req;
    req.portrait = diameter();
    req.depth = depth;
    req.policy = l12_policy();
    req.base = l12(depth).leaf_list();
    req.seeds = {Chord(Angle(0, 1), Angle(1, 4))};
    Geolamination L = pullback_extend(req);
    L.label = "L12a";
    return L;
}

Chord siegel_diameter() { return Chord(Angle(744283, 2097152), Angle(1792859, 2097152)); }

Geolamination siegel(int depth) {
    const Chord l = siegel_diameter();
    ChoicePolicy pol;
    pol.home = Arc{l.p(), l.q(), Closure::closed};
    Geolamination L = pullback_construct(2, CriticalPortrait{{{l.p(), l.q()}}}, depth, pol);
    L.generator.siegel_construction = true;
    L.label = "siegel";
    return L;
}

}  // namespace lam::fixtures
