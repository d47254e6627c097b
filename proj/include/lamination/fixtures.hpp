#pragma once

#include "lamination/geolam.hpp"

namespace lam::fixtures {

Geolamination basilica(int depth);   // minor {1/3,2/3}
Geolamination rabbit(int depth);     // minor {1/7,2/7}
Geolamination airplane(int depth);   // minor {3/7,4/7}

// critical leaf {0,1/2} pulled back to {1/4,1/2} and {3/4,0}
ChoicePolicy l12_policy();
Geolamination l12(int depth);
// l12 plus the leaf {0,1/4} and its pullbacks
Geolamination l12a(int depth);

// rational diameter close to the golden-mean Siegel diameter
Chord siegel_diameter();
Geolamination siegel(int depth);

}  // namespace lam::fixtures
