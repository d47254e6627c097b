#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lamination/geolam.hpp"

namespace lam {

// Face of the truncated chord arrangement. Vertices ascend from the smallest one;
// consecutive vertices are joined either by an edge or by a hole.
struct Gap {
    std::vector<Angle> vertices;
    std::vector<Chord> edges;
    std::vector<Arc> holes;
    bool frontier_exempt = false;

    bool has_vertex(const Angle& a) const;
    bool infinite() const { return !holes.empty(); }
    std::string str() const;
    friend bool operator==(const Gap& a, const Gap& b) {
        return a.vertices == b.vertices && a.edges == b.edges;
    }
};

std::vector<Gap> gaps_of(const Geolamination& L);

// the face having every point of pts as a vertex (needs >= 3 distinct points)
std::optional<std::size_t> face_containing(const std::vector<Gap>& faces, const std::vector<Angle>& pts);
// face_containing, or else the unique face sharing the most (at least 3) points
std::optional<std::size_t> image_face(const std::vector<Gap>& faces, const std::vector<Angle>& pts);
// the face bounded by all given chords
std::optional<std::size_t> face_with_edges(const std::vector<Gap>& faces, const std::vector<Chord>& edges);

// a stored leaf of generation <= max_generation crossing CH(S) or lying inside it (S sorted)
std::optional<Chord> leaf_inside_hull(const Geolamination& L, const std::vector<Angle>& S, int max_generation);

enum class ImageKind { point, leaf, gap };
const char* image_kind_name(ImageKind k);

struct GapImage {
    ImageKind kind = ImageKind::point;
    std::vector<Angle> vertices;  // distinct image points, ascending
    int degree = 0;               // winding of the boundary map
    std::optional<Chord> leaf() const;
};

GapImage gap_image(int d, const Gap& G);
// same, and throws invariance-violation when the image hull is crossed by a stored leaf
GapImage gap_image(const Geolamination& L, const Gap& G);

struct GapPeriod {
    std::size_t preperiod = 0;
    std::size_t period = 1;
    friend bool operator==(const GapPeriod&, const GapPeriod&) = default;
};

inline constexpr std::size_t default_search_bound = 1u << 16;

std::optional<GapPeriod> gap_period(const Geolamination& L, const Gap& G,
                                    std::size_t search_bound = default_search_bound);
int boundary_degree(const Geolamination& L, const Gap& G, std::size_t n);

enum class GapKind { finite, caterpillar, siegel, fatou, undetermined };
const char* gap_kind_name(GapKind k);

struct GapClass {
    GapKind kind = GapKind::undetermined;
    int k = 0;  // polygon size for finite, covering degree for fatou
    std::optional<std::size_t> period;
    std::optional<std::size_t> preperiod;
    std::string note;
};

GapClass classify_gap(const Geolamination& L, const Gap& G);

enum class EdgeFate { periodic, preperiodic, precritical, unresolved };
const char* edge_fate_name(EdgeFate f);

struct EdgeFateEntry {
    Chord edge;
    EdgeFate fate = EdgeFate::unresolved;
    std::size_t steps = 0;
};

struct EdgeFateReport {
    std::vector<EdgeFateEntry> entries;
    std::size_t violations = 0;
};

EdgeFateReport check_edge_fate(const Geolamination& L, const Gap& G,
                               std::size_t search_bound = default_search_bound);

std::string gap_report(const Geolamination& L, const Gap& G, bool classify);

}  // namespace lam
