#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fresnel/matrix_optics.hpp"

namespace fresnel {

struct SystemElement {
  std::string kind;  // "free" | "lens" | "magnifier" | "matrix"
  std::vector<double> params;
  RayMatrix matrix;
};

struct OpticalSystem {
  std::vector<SystemElement> elements;  // in beam-traversal order

  // composed right-to-left: last element leftmost
  RayMatrix composed() const;
};

// JSON: either a top-level array of elements or {"elements": [...]};
// each element {"kind": "...", "params": [...]}. Throws ParseError.
OpticalSystem load_system(std::istream& is);
OpticalSystem load_system_file(const std::string& path);

}  // namespace fresnel
