#include "lamination/render.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <string>

#include "lamination/error.hpp"

namespace lam {

namespace {

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    std::string s = buf;
    if (s == "-0.000") s = "0.000";
    return s;
}

struct Pt {
    double x, y;
};

}  // namespace

std::string render_svg(const Geolamination& L, const RenderOptions& opt) {
    if (opt.size_px < 64) throw Error(ErrorCode::invalid_input, "size must be at least 64 px");
    const double c = opt.size_px / 2.0;
    const double r = c - (opt.labels ? 40.0 : 8.0);
    auto at = [&](const Angle& a, double scale = 1.0) {
        double t = 2 * M_PI * a.to_double();
        return Pt{c + r * scale * std::cos(t), c - r * scale * std::sin(t)};
    };
    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(opt.size_px) + "\" height=\"" +
         std::to_string(opt.size_px) + "\" viewBox=\"0 0 " + std::to_string(opt.size_px) + " " +
         std::to_string(opt.size_px) + "\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s += "<circle cx=\"" + num(c) + "\" cy=\"" + num(c) + "\" r=\"" + num(r) +
         "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    s += "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
    std::set<Angle> ends;
    for (const auto& [ch, g] : L.leaves()) {
        ends.insert(ch.p());
        ends.insert(ch.q());
        Pt a = at(ch.p()), b = at(ch.q());
        double delta = 2 * M_PI * chord_length(ch).get_d();
        if (!opt.geodesic || std::abs(delta - M_PI) < 1e-9) {
            s += "<line x1=\"" + num(a.x) + "\" y1=\"" + num(a.y) + "\" x2=\"" + num(b.x) + "\" y2=\"" + num(b.y) +
                 "\"/>\n";
            continue;
        }
        double rad = r * std::tan(delta / 2);
        double mx = (a.x + b.x) / 2 - c, my = (a.y + b.y) / 2 - c;
        double len = std::sqrt(mx * mx + my * my);
        double k = r * (1 / std::cos(delta / 2) - std::tan(delta / 2)) / len;
        Pt m{c + mx * k, c + my * k};
        double cross = (m.x - a.x) * (b.y - m.y) - (m.y - a.y) * (b.x - m.x);
        s += "<path d=\"M " + num(a.x) + " " + num(a.y) + " A " + num(rad) + " " + num(rad) + " 0 0 " +
             (cross > 0 ? "1" : "0") + " " + num(b.x) + " " + num(b.y) + "\"/>\n";
    }
    s += "</g>\n";
    if (opt.labels) {
        s += "<g font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\" dominant-baseline=\"middle\">\n";
        for (const auto& a : ends) {
            Pt p = at(a, 1.0 + 20.0 / r);
            s += "<text x=\"" + num(p.x) + "\" y=\"" + num(p.y) + "\">" + a.str() + "</text>\n";
        }
        s += "</g>\n";
    }
    s += "</svg>\n";
    return s;
}

}  // namespace lam
