#pragma once

#include "eigenray/diagram.hpp"

#include <optional>
#include <string>
#include <vector>

namespace eigenray {

// The two-node diagram with nodes (1,0) and (0,1) on the positive coordinate rays.
EigenrayDiagram five_charts_diagram();

struct EigenrayPair {
  std::string name;              // e.g. "(l_x-, l_y)"
  Vec2Q node_x, node_y;
  int sign_x = 1, sign_y = 1;
  bool disjoint = false;
  std::optional<Vec2Q> meet;     // a common point when they intersect
};

struct FiveChartsReport {
  EigenrayDiagram diagram;
  std::vector<EigenrayPair> direct;       // the four sign choices on the original diagram
  std::vector<EigenrayPair> after_slides; // (l'_x-, l'_y-) after each of the two slides
  std::vector<EigenrayDiagram> slid;      // the slid diagrams, in the same order
  int direct_count = 0;
  int slide_count = 0;
  bool ok() const { return direct_count == 3 && slide_count == 2; }
  std::string tally() const;
};

EigenrayPair eigenray_pair(const EigenrayDiagram& d, const Vec2Q& nx, int sx, const Vec2Q& ny, int sy);
FiveChartsReport five_charts();

}  // namespace eigenray
