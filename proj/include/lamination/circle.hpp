#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace lam {

// Exact point of R/Z, reduced and normalized into [0,1).
class Angle {
public:
    Angle() = default;
    Angle(long num, long den);
    explicit Angle(const mpq_class& q);

    static Angle parse(std::string_view s);

    const mpq_class& value() const { return v_; }
    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }
    double to_double() const { return v_.get_d(); }
    std::string str() const;

    friend bool operator==(const Angle& a, const Angle& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Angle& a, const Angle& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class v_{0};
};

enum class Closure { open, closed, half_open_left, half_open_right };

struct Arc {
    Angle start, end;
    Closure closure = Closure::open;

    mpq_class length() const;
    bool contains(const Angle& x) const;
    std::string str() const;
    friend bool operator==(const Arc&, const Arc&) = default;
};

struct OrbitInfo {
    std::size_t preperiod = 0;
    std::size_t period = 1;
    std::vector<Angle> orbit;  // a, sigma(a), ... up to preperiod+period-1
};

void require_degree(int d);
Angle sigma(int d, const Angle& a);
Angle sigma_n(int d, const Angle& a, std::size_t n);
bool circular_order(const Angle& a, const Angle& b, const Angle& c);
// b in the open positive arc (a, c); no distinctness requirement, false on ties
bool strictly_between(const Angle& a, const Angle& b, const Angle& c);
mpq_class arc_length(const Angle& a, const Angle& b);
OrbitInfo orbit_info(int d, const Angle& a);
bool is_periodic(int d, const Angle& a);
// angles with exact period n under sigma_d, ascending
std::vector<Angle> periodic_angles(int d, int n);
// all d preimages, ascending
std::vector<Angle> preimages(int d, const Angle& a);

}  // namespace lam

template <>
struct std::hash<lam::Angle> {
    std::size_t operator()(const lam::Angle& a) const noexcept;
};
