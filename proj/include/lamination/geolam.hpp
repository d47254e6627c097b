#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lamination/chords.hpp"

namespace lam {

enum class GeneratorKind { critical_portrait, equivalence_relation, explicit_list };

const char* generator_kind_name(GeneratorKind k);

// Critical leaves (2-point sets) and critical polygons, each stored sorted.
struct CriticalPortrait {
    std::vector<std::vector<Angle>> sets;

    std::vector<Chord> critical_leaves() const;
    // boundary edges of all members
    std::vector<Chord> edges() const;
    friend bool operator==(const CriticalPortrait&, const CriticalPortrait&) = default;
};

struct GeneratorMeta {
    GeneratorKind kind = GeneratorKind::explicit_list;
    std::optional<CriticalPortrait> portrait;
    std::optional<std::vector<std::vector<Angle>>> classes;
    std::string policy;
    // basis certified uncountable by construction (Siegel diameter)
    bool siegel_construction = false;
};

class Geolamination {
public:
    explicit Geolamination(int degree = 2, int depth = 0);

    int degree() const { return degree_; }
    int depth() const { return depth_; }
    void set_depth(int n) { depth_ = n; }

    // leaf -> pullback generation
    const std::map<Chord, int>& leaves() const { return leaves_; }
    std::vector<Chord> leaf_list() const;
    std::size_t size() const { return leaves_.size(); }
    bool empty() const { return leaves_.empty(); }
    bool contains(const Chord& c) const { return leaves_.count(c) != 0; }
    // generation of any chord; stored leaves use the cached value
    int generation(const Chord& c) const;
    bool is_frontier(const Chord& c) const { return generation(c) >= depth_; }
    // inserts a non-degenerate chord; returns true if new
    bool insert(const Chord& c);
    void erase(const Chord& c) { leaves_.erase(c); }
    // stored leaves with the given image
    std::vector<Chord> preimage_leaves(const Chord& target) const;

    GeneratorMeta generator;
    std::string label;

    // equality of degree, depth and leaf set
    friend bool operator==(const Geolamination& a, const Geolamination& b) {
        return a.degree_ == b.degree_ && a.depth_ == b.depth_ && a.same_leaves(b);
    }
    bool same_leaves(const Geolamination& o) const;

private:
    int degree_;
    int depth_;
    std::map<Chord, int> leaves_;
};

struct Violation {
    std::string rule;  // E1 E2 E3 D1 D2 S1 S2 S3 T1 T2
    std::vector<Chord> witness;
    std::string detail;
};

struct Exemption {
    std::string rule;
    Chord leaf;
};

struct InvarianceReport {
    std::vector<Violation> violations;
    std::vector<Exemption> exemptions;
    std::size_t exempt_gaps = 0;

    bool pass() const { return violations.empty(); }
    std::string to_json() const;
};

InvarianceReport verify_unlinked(const Geolamination& L);
InvarianceReport is_sibling_invariant(const Geolamination& L);
InvarianceReport is_thurston_invariant(const Geolamination& L);

// When several sibling collections are compatible with the leaves built so far.
struct SideRule {
    Angle vertex;  // the chosen leaf at this vertex must end inside `region`
    Arc region;
};

struct ChoicePolicy {
    enum class Kind { canonical, scripted };
    Kind kind = Kind::canonical;
    // leaf being pulled back -> leaves the chosen collection must contain
    std::map<Chord, std::vector<Chord>> schedule;
    std::vector<SideRule> side_rules;
    // if set, prefer collections with a leaf inside this closed arc
    std::optional<Arc> home;

    static ChoicePolicy canonical() { return {}; }
    std::string name() const { return kind == Kind::canonical ? "canonical" : "scripted"; }
};

struct PullbackRequest {
    int degree = 2;
    CriticalPortrait portrait;
    int depth = 0;
    ChoicePolicy policy;
    std::vector<Chord> base;         // stored as is, pulled back if young enough
    std::vector<Chord> seeds;        // stored with their forward orbits
    std::vector<Chord> constraints;  // never crossed, never stored
    bool store_polygon_edges = false;
};

// All collections of d pairwise disjoint chords mapping onto l; l may be critical.
std::vector<SiblingCollection> preimage_collections(int d, const Chord& l);

Geolamination pullback_construct(int d, const CriticalPortrait& portrait, int depth,
                                 const ChoicePolicy& policy);
Geolamination pullback_extend(const PullbackRequest& req);

Geolamination from_equivalence(int d, const std::vector<std::vector<Angle>>& classes, int depth);

// sorted convex hull boundary edges of a finite angle set
std::vector<Chord> hull_edges(std::vector<Angle> pts);

struct Cone {
    Angle vertex;
    std::vector<Chord> leaves;
};

enum class Motion { positive, negative, mixed, collapses, none };
const char* motion_name(Motion m);

struct ConeInterval {
    Angle from, to;  // consecutive fixed rays (or the vertex) in positive order from the vertex
    Motion motion = Motion::none;
};

struct ConeAnalysis {
    Angle vertex;
    std::size_t period = 0;
    std::vector<Angle> basis;        // other endpoints, positive order from the vertex
    std::vector<Angle> fixed_rays;
    std::vector<ConeInterval> intervals;
    bool all_periodic = false;       // finite cone in the limit
    bool periods_match = true;       // endpoint periods of periodic leaves coincide
    bool at_most_two_leaves = true;  // checked for finite periodic cones
    bool mixed_interval = false;
};

Cone cone_at(const Geolamination& L, const Angle& v);
ConeAnalysis analyze_cone(const Geolamination& L, const Cone& C);

std::vector<Angle> max_collapsing_polygon(const Geolamination& L, const std::vector<Chord>& chain);

double hausdorff_distance(const Geolamination& L1, const Geolamination& L2, int resolution,
                          int jobs = 1);

}  // namespace lam
