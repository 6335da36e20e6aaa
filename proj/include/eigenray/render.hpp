#pragma once

#include "eigenray/diagram.hpp"
#include "eigenray/nodal.hpp"

#include <string>
#include <vector>

namespace eigenray {

struct RenderOptions {
  int width = 640;
  std::vector<GeodesicPath> geodesics;
};

// Deterministic SVG, y axis pointing up; the view box is the bounding box of nodes, bases, the origin
// and bounded geodesic pieces, enlarged by 10% on each side.
std::string render_svg(const EigenrayDiagram& d, const RenderOptions& opt = {});

}  // namespace eigenray
