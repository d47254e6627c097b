#include "lamination/circle.hpp"

#include <algorithm>
#include <map>

#include "lamination/error.hpp"

namespace lam {

namespace {

mpq_class frac(mpq_class q) {
    q.canonicalize();
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    q -= fl;
    return q;
}

}  // namespace

Angle::Angle(long num, long den) {
    if (den == 0) throw Error(ErrorCode::invalid_input, "zero denominator");
    v_ = frac(mpq_class(num, den));
}

Angle::Angle(const mpq_class& q) : v_(frac(q)) {}

Angle Angle::parse(std::string_view s) {
    std::string t(s);
    auto slash = t.find('/');
    auto digits = [](const std::string& x, bool allow_sign) {
        if (x.empty()) return false;
        std::size_t i = (allow_sign && x[0] == '-') ? 1 : 0;
        if (i == x.size()) return false;
        return std::all_of(x.begin() + i, x.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    mpq_class q;
    if (slash == std::string::npos) {
        if (!digits(t, true)) throw Error(ErrorCode::parse_error, "bad angle '" + t + "'");
        q = mpq_class(mpz_class(t));
    } else {
        std::string n = t.substr(0, slash), d = t.substr(slash + 1);
        if (!digits(n, true) || !digits(d, false))
            throw Error(ErrorCode::parse_error, "bad angle '" + t + "'");
        mpz_class dz(d);
        if (dz == 0) throw Error(ErrorCode::parse_error, "zero denominator in '" + t + "'");
        q = mpq_class(mpz_class(n), dz);
    }
    return Angle(q);
}

std::string Angle::str() const {
    if (v_ == 0) return "0";
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

mpq_class Arc::length() const { return arc_length(start, end); }

bool Arc::contains(const Angle& x) const {
    if (x == start) return closure == Closure::closed || closure == Closure::half_open_right;
    if (x == end) return closure == Closure::closed || closure == Closure::half_open_left;
    return strictly_between(start, x, end);
}

std::string Arc::str() const {
    const char* l = (closure == Closure::closed || closure == Closure::half_open_right) ? "[" : "(";
    const char* r = (closure == Closure::closed || closure == Closure::half_open_left) ? "]" : ")";
    return std::string(l) + start.str() + "," + end.str() + r;
}

void require_degree(int d) {
    if (d < 2) throw Error(ErrorCode::invalid_degree, "degree " + std::to_string(d) + " < 2");
}

Angle sigma(int d, const Angle& a) {
    require_degree(d);
    // d*p mod q keeps the numerator small before reduction
    mpz_class n = a.num() * d;
    mpz_class q = a.den();
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), n.get_mpz_t(), q.get_mpz_t());
    return Angle(mpq_class(r, q));
}

Angle sigma_n(int d, const Angle& a, std::size_t n) {
    Angle x = a;
    for (std::size_t i = 0; i < n; ++i) x = sigma(d, x);
    return x;
}

bool strictly_between(const Angle& a, const Angle& b, const Angle& c) {
    if (a == c) return b != a;
    if (a < c) return a < b && b < c;
    return b > a || b < c;
}

bool circular_order(const Angle& a, const Angle& b, const Angle& c) {
    if (a == b || b == c || a == c)
        throw Error(ErrorCode::degenerate_triple, a.str() + ", " + b.str() + ", " + c.str());
    return strictly_between(a, b, c);
}

mpq_class arc_length(const Angle& a, const Angle& b) {
    mpq_class r = b.value() - a.value();
    if (r < 0) r += 1;
    return r;
}

OrbitInfo orbit_info(int d, const Angle& a) {
    require_degree(d);
    OrbitInfo info;
    // residues of the numerator modulo the fixed denominator identify orbit points
    const mpz_class q = a.den();
    std::map<mpz_class, std::size_t> seen;
    mpz_class r = a.num();
    while (true) {
        auto it = seen.find(r);
        if (it != seen.end()) {
            info.preperiod = it->second;
            info.period = info.orbit.size() - it->second;
            return info;
        }
        seen.emplace(r, info.orbit.size());
        info.orbit.emplace_back(mpq_class(r, q));
        r *= d;
        mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), q.get_mpz_t());
    }
}

bool is_periodic(int d, const Angle& a) {
    mpz_class g;
    mpz_class dd(d);
    mpz_class den = a.den();
    mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), dd.get_mpz_t());
    return g == 1;
}

std::vector<Angle> periodic_angles(int d, int n) {
    require_degree(d);
    std::vector<Angle> out;
    mpz_class m;
    mpz_ui_pow_ui(m.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(n));
    m -= 1;
    for (mpz_class k = 0; k < m; ++k) {
        Angle a(mpq_class(k, m));
        if (orbit_info(d, a).period == static_cast<std::size_t>(n)) out.push_back(a);
    }
    return out;
}

std::vector<Angle> preimages(int d, const Angle& a) {
    require_degree(d);
    std::vector<Angle> out;
    for (int k = 0; k < d; ++k) out.emplace_back((a.value() + k) / d);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace lam

std::size_t std::hash<lam::Angle>::operator()(const lam::Angle& a) const noexcept {
    std::size_t h1 = mpz_get_ui(a.value().get_num_mpz_t());
    std::size_t h2 = mpz_get_ui(a.value().get_den_mpz_t());
    return h1 * 1000003u ^ (h2 + 0x9e3779b97f4a7c15ull + (h1 << 6) + (h1 >> 2));
}
