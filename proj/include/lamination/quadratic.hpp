#pragma once

#include <string>
#include <variant>
#include <vector>

#include "lamination/gaps.hpp"
#include "lamination/geolam.hpp"

namespace lam {

struct MajorPair {
    Chord M;
    Chord M_sibling;
    Chord minor;  // possibly degenerate
};

MajorPair majors_and_minor(const Geolamination& L);

using CriticalSet = std::variant<Chord, Gap>;
CriticalSet critical_set(const Geolamination& L);
// vertex set of a critical set
std::vector<Angle> critical_points(const CriticalSet& c);

bool is_hyperbolic(const Geolamination& L);
bool is_fixed_return(const Chord& m);

// sigma_2 preimage of a minor: a critical leaf or a collapsing quadrilateral
CriticalPortrait minor_portrait(const Chord& m);

struct QmlVerdict {
    bool ok = false;
    std::string reason;
    explicit operator bool() const { return ok; }
};

QmlVerdict qml_check(const Chord& m, int depth);
bool is_qml_leaf(const Chord& m, int depth);
Geolamination lamination_from_minor(const Chord& m, int depth);

struct QmlApprox {
    int max_period = 0;
    std::vector<Chord> leaves;
    std::vector<Angle> degenerate;  // periodic points on no leaf
    friend bool operator==(const QmlApprox&, const QmlApprox&) = default;
};

QmlApprox qml_approx(int max_period, int depth, int jobs = 1);
Geolamination qml_geolamination(const QmlApprox& q);

std::vector<Geolamination> limit_geolaminations(const Geolamination& Lq, int depth);

struct MinorEquivClass {
    std::vector<std::string> members;
    std::vector<Chord> minors;
    std::vector<Angle> qml_class;
};

std::vector<MinorEquivClass> minor_quotient(const std::vector<Geolamination>& family,
                                            const QmlApprox* qml = nullptr);
std::string quotient_json(const std::vector<MinorEquivClass>& classes);

std::vector<Angle> psi(const Geolamination& L, const QmlApprox& qml);

struct SiegelSample {
    std::vector<Angle> survivors;
    std::vector<Angle> periodic;  // periodic survivors; a Siegel certificate needs none
    bool periodic_free() const { return periodic.empty(); }
};

SiegelSample siegel_set(const Chord& l, int iterations);

enum class Rigidity { rigid, not_rigid, unknown };
const char* rigidity_name(Rigidity r);

struct RigidityCertificate {
    Rigidity verdict = Rigidity::unknown;
    std::string rule;
    std::string witness;
};

RigidityCertificate rigidity_certificate(const Geolamination& L, const std::variant<Chord, Gap>& target);

}  // namespace lam
