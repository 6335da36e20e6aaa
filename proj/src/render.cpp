#include "eigenray/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace eigenray {

namespace {

struct Box {
  double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
  void add(double x, double y) {
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

// Parameter at which base + t dir leaves the box.
double exit_time(const Box& b, double px, double py, double dx, double dy) {
  double t = std::numeric_limits<double>::infinity();
  if (dx > 0) t = std::min(t, (b.x1 - px) / dx);
  if (dx < 0) t = std::min(t, (b.x0 - px) / dx);
  if (dy > 0) t = std::min(t, (b.y1 - py) / dy);
  if (dy < 0) t = std::min(t, (b.y0 - py) / dy);
  return std::max(t, 0.0);
}

}  // namespace

std::string render_svg(const EigenrayDiagram& d, const RenderOptions& opt) {
  Box box;
  for (const auto& r : d.rays()) {
    box.add(r.base.x.get_d(), r.base.y.get_d());
    for (const auto& n : r.nodes) box.add(n.position.x.get_d(), n.position.y.get_d());
  }
  for (const auto& g : opt.geodesics)
    for (const auto& s : g.segments) {
      box.add(s.start.x.get_d(), s.start.y.get_d());
      if (s.length) {
        Vec2Q e = s.start + s.dir * *s.length;
        box.add(e.x.get_d(), e.y.get_d());
      }
    }
  if (box.x1 - box.x0 < 1) {
    double c = (box.x0 + box.x1) / 2;
    box.x0 = std::min(box.x0, c - 1);
    box.x1 = std::max(box.x1, c + 1);
  }
  if (box.y1 - box.y0 < 1) {
    double c = (box.y0 + box.y1) / 2;
    box.y0 = std::min(box.y0, c - 1);
    box.y1 = std::max(box.y1, c + 1);
  }
  double mx = 0.1 * (box.x1 - box.x0), my = 0.1 * (box.y1 - box.y0);
  box.x0 -= mx;
  box.x1 += mx;
  box.y0 -= my;
  box.y1 += my;

  const double W = opt.width;
  const double scale = W / (box.x1 - box.x0);
  double H = std::clamp(std::round((box.y1 - box.y0) * scale), 50.0, 4 * W);
  const double sy = H / (box.y1 - box.y0);
  auto X = [&](double x) { return num((x - box.x0) * scale); };
  auto Y = [&](double y) { return num((box.y1 - y) * sy); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(W) << "\" height=\"" << num(H) << "\" viewBox=\"0 0 "
     << num(W) << " " << num(H) << "\">\n";
  os << "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"8\" markerHeight=\"8\" "
        "orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"#222\"/></marker></defs>\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << num(W) << "\" height=\"" << num(H) << "\" fill=\"white\"/>\n";
  os << "<g id=\"axes\" stroke=\"#bbb\" stroke-width=\"1\">\n";
  os << "<line x1=\"" << X(box.x0) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(box.x1) << "\" y2=\"" << Y(0) << "\"/>\n";
  os << "<line x1=\"" << X(0) << "\" y1=\"" << Y(box.y0) << "\" x2=\"" << X(0) << "\" y2=\"" << Y(box.y1) << "\"/>\n";
  os << "</g>\n";

  os << "<g id=\"rays\" stroke=\"#222\" stroke-width=\"2\">\n";
  for (const auto& r : d.rays()) {
    double bx = r.base.x.get_d(), by = r.base.y.get_d(), dx = r.dir.x.get_d(), dy = r.dir.y.get_d();
    double t = exit_time(box, bx, by, dx, dy);
    os << "<line x1=\"" << X(bx) << "\" y1=\"" << Y(by) << "\" x2=\"" << X(bx + t * dx) << "\" y2=\"" << Y(by + t * dy)
       << "\" marker-end=\"url(#arrow)\"/>\n";
  }
  os << "</g>\n";

  if (!opt.geodesics.empty()) {
    os << "<g id=\"geodesics\" stroke=\"#1f5fbf\" stroke-width=\"1.5\" fill=\"none\" stroke-dasharray=\"6 3\">\n";
    for (const auto& g : opt.geodesics) {
      os << "<polyline points=\"";
      bool first = true;
      for (const auto& s : g.segments) {
        double px = s.start.x.get_d(), py = s.start.y.get_d(), dx = s.dir.x.get_d(), dy = s.dir.y.get_d();
        double t = s.length ? s.length->get_d() : exit_time(box, px, py, dx, dy);
        if (first) os << X(px) << "," << Y(py);
        first = false;
        os << " " << X(px + t * dx) << "," << Y(py + t * dy);
      }
      os << "\"/>\n";
    }
    os << "</g>\n";
  }

  os << "<g id=\"nodes\" stroke=\"#c0392b\" stroke-width=\"2\">\n";
  for (const auto& n : d.nodes()) {
    double px = (n.position.x.get_d() - box.x0) * scale, py = (box.y1 - n.position.y.get_d()) * sy;
    os << "<line x1=\"" << num(px - 6) << "\" y1=\"" << num(py - 6) << "\" x2=\"" << num(px + 6) << "\" y2=\"" << num(py + 6)
       << "\"/>\n";
    os << "<line x1=\"" << num(px - 6) << "\" y1=\"" << num(py + 6) << "\" x2=\"" << num(px + 6) << "\" y2=\"" << num(py - 6)
       << "\"/>\n";
    os << "<text x=\"" << num(px + 8) << "\" y=\"" << num(py - 8) << "\" font-size=\"12\" fill=\"#c0392b\" stroke=\"none\">"
       << n.multiplicity.get_str() << "</text>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace eigenray
