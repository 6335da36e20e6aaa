#include "eigenray/fivecharts.hpp"

#include "eigenray/nodal.hpp"

#include <sstream>

namespace eigenray {

EigenrayDiagram five_charts_diagram() {
  return EigenrayDiagram({Ray{{Q(1), Q(0)}, {1, 0}, {Node{{Q(1), Q(0)}, 1}}},
                          Ray{{Q(0), Q(1)}, {0, 1}, {Node{{Q(0), Q(1)}, 1}}}});
}

EigenrayPair eigenray_pair(const EigenrayDiagram& d, const Vec2Q& nx, int sx, const Vec2Q& ny, int sy) {
  ChartAtlas atlas(d);
  EigenrayPair p;
  p.node_x = nx;
  p.node_y = ny;
  p.sign_x = sx;
  p.sign_y = sy;
  p.name = std::string("(l_x") + (sx < 0 ? "-" : "") + ", l_y" + (sy < 0 ? "-" : "") + ")";
  GeodesicPath a = trace_eigenray(atlas, nx, sx), b = trace_eigenray(atlas, ny, sy);
  p.meet = paths_meet(a, b);
  p.disjoint = !p.meet;
  return p;
}

std::string FiveChartsReport::tally() const {
  std::ostringstream os;
  os << direct_count << " direct + " << slide_count << " after slides = " << direct_count + slide_count;
  return os.str();
}

FiveChartsReport five_charts() {
  FiveChartsReport rep;
  rep.diagram = five_charts_diagram();
  Vec2Q nx(Q(1), Q(0)), ny(Q(0), Q(1));
  for (int sx : {1, -1})
    for (int sy : {1, -1}) {
      rep.direct.push_back(eigenray_pair(rep.diagram, nx, sx, ny, sy));
      if (rep.direct.back().disjoint) ++rep.direct_count;
    }
  struct Slide {
    Vec2Q from, to;
  };
  for (const Slide& s : {Slide{nx, {Q(-1), Q(0)}}, Slide{ny, {Q(0), Q(-1)}}}) {
    EigenrayDiagram d = nodal_slide(rep.diagram, s.from, s.to);
    Vec2Q px = s.from == nx ? s.to : nx, py = s.from == ny ? s.to : ny;
    EigenrayPair p = eigenray_pair(d, px, -1, py, -1);
    p.name = "(l'_x-, l'_y-)";
    rep.slid.push_back(d);
    rep.after_slides.push_back(p);
    if (p.disjoint) ++rep.slide_count;
  }
  return rep;
}

}  // namespace eigenray
