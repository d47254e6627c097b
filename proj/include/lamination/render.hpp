#pragma once

#include <string>

#include "lamination/geolam.hpp"

namespace lam {

struct RenderOptions {
    int size_px = 512;
    bool geodesic = false;
    bool labels = false;
};

std::string render_svg(const Geolamination& L, const RenderOptions& opt = {});

}  // namespace lam
