#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lamination/geolam.hpp"
#include "lamination/quadratic.hpp"

namespace lam {

// ".lam": "degree d depth N" header, one "p/q r/s" chord per line, '#' comments.
// "#! key value" lines carry generator metadata.
std::string serialize(const Geolamination& L);
Geolamination parse_lam(const std::string& text);

std::string serialize_qml(const QmlApprox& q);
QmlApprox parse_qml(const std::string& text);

// ".cls": one "{a1,a2,...}" per line
std::string serialize_classes(const std::vector<std::vector<Angle>>& classes);
std::vector<std::vector<Angle>> parse_classes(const std::string& text);

// pullback script: "p/q r/s : a/b c/d, e/f g/h" lines and "side v start end" lines
ChoicePolicy parse_script(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace lam
