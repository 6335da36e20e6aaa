#include "eigenray/nodal.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace eigenray {

IntegralAffineMap Cut::crossing(int sign) const {
  Z k = sign > 0 ? Z(-mult) : mult;
  return IntegralAffineMap::fixing(shear_matrix(dir, k), node);
}

ChartAtlas::ChartAtlas(EigenrayDiagram d) : diagram_(std::move(d)) {
  const auto& rays = diagram_.rays();
  for (size_t i = 0; i < rays.size(); ++i)
    for (const auto& n : rays[i].nodes) cuts_.push_back(Cut{n.position, rays[i].dir, n.multiplicity, static_cast<int>(i)});
}

bool ChartAtlas::on_cut(const Vec2Q& p) const {
  for (const auto& r : diagram_.rays())
    if (r.contains(p)) return true;
  return false;
}

bool ChartAtlas::is_node(const Vec2Q& p) const { return diagram_.find_node(p) != nullptr; }

std::string to_string(GeodesicStatus s) {
  switch (s) {
    case GeodesicStatus::extended_to_budget: return "extended-to-budget";
    case GeodesicStatus::converged_to_eigenray_point: return "converged-to-eigenray-point";
    case GeodesicStatus::hit_node: return "hit-node";
  }
  return "?";
}

namespace {

int sgn(const Q& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

std::string where(const Vec2Q& p) {
  std::ostringstream os;
  os << p;
  return os.str();
}

}  // namespace

std::vector<Crossing> segment_crossings(const ChartAtlas& atlas, const Vec2Q& p, const Vec2Q& q) {
  std::vector<std::pair<Q, Crossing>> hits;
  Vec2Q d = q - p;
  const auto& cuts = atlas.cuts();
  for (size_t i = 0; i < cuts.size(); ++i) {
    const Cut& c = cuts[i];
    Vec2Q e = c.dir.q();
    Q den = det2(e, d);
    if (den == 0) {
      if (det2(e, p - c.node) != 0) continue;
      Q ee = dot(e, e);
      Q s0 = dot(p - c.node, e) / ee, s1 = dot(q - c.node, e) / ee;
      if (s0 < 0 && s1 < 0) continue;
      if ((s0 <= 0 && s1 >= 0) || (s1 <= 0 && s0 >= 0)) throw precondition_error("path touches node " + where(c.node));
      throw precondition_error("path runs along the cut from " + where(c.node));
    }
    Q u = det2(e, c.node - p) / den;
    Q s = det2(p - c.node, d) / den;
    if (s < 0 || u < 0 || u > 1) continue;
    if (s == 0) throw precondition_error("path touches node " + where(c.node));
    if (u == 0 || u == 1) throw precondition_error("path vertex lies on the cut from " + where(c.node));
    hits.push_back({u, Crossing{static_cast<int>(i), p + d * u, sgn(den), -1}});
  }
  std::stable_sort(hits.begin(), hits.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Crossing> out;
  for (auto& h : hits) out.push_back(std::move(h.second));
  return out;
}

IntegralAffineMap develop(const ChartAtlas& atlas, const std::vector<Vec2Q>& path) {
  IntegralAffineMap acc;
  for (size_t i = 0; i + 1 < path.size(); ++i)
    for (const auto& c : segment_crossings(atlas, path[i], path[i + 1]))
      acc = compose(atlas.cuts()[c.cut].crossing(c.sign), acc);
  return acc;
}

IntegralAffineMap holonomy(const ChartAtlas& atlas, const std::vector<Vec2Q>& loop) {
  if (loop.size() < 2) throw precondition_error("loop needs at least two vertices");
  std::vector<Vec2Q> closed = loop;
  closed.push_back(loop.front());
  return develop(atlas, closed);
}

std::pair<Ray, Ray> eigen_directions(const ChartAtlas& atlas, const Vec2Q& node) {
  int r = atlas.diagram().ray_of_node(node);
  if (r < 0) throw precondition_error("no node at " + where(node));
  const Node* n = atlas.diagram().find_node(node);
  const Vec2Z& e = atlas.diagram().rays()[r].dir;
  return {Ray{node, e, {*n}}, Ray{node, -e, {*n}}};
}

namespace {

struct Event {
  Q t;
  bool node = false;
  Vec2Q node_pos;
  std::vector<std::pair<int, int>> cuts;  // (cut index, sign)
};

std::optional<Event> next_event(const ChartAtlas& atlas, const Vec2Q& pos, const Vec2Q& d) {
  std::optional<Event> best;
  auto offer = [&](const Q& t, bool node, const Vec2Q& at, int cut, int sign) {
    if (best && t > best->t) return;
    if (!best || t < best->t) best = Event{t, false, {}, {}};
    if (node) {
      best->node = true;
      best->node_pos = at;
    } else {
      best->cuts.push_back({cut, sign});
    }
  };
  const auto& cuts = atlas.cuts();
  for (size_t i = 0; i < cuts.size(); ++i) {
    const Cut& c = cuts[i];
    Vec2Q e = c.dir.q();
    Q den = det2(e, d);
    if (den == 0) {
      if (det2(e, pos - c.node) != 0) continue;
      // Moving along the line of the cut: only the base can be met from outside.
      if (dot(pos - c.node, e) < 0 && dot(d, e) > 0) offer(dot(c.node - pos, d) / dot(d, d), true, c.node, -1, 0);
      continue;
    }
    Q t = det2(e, c.node - pos) / den;
    Q s = det2(pos - c.node, d) / den;
    if (t <= 0 || s < 0) continue;
    if (s == 0)
      offer(t, true, c.node, -1, 0);
    else
      offer(t, false, {}, static_cast<int>(i), sgn(den));
  }
  return best;
}

GeodesicPath trace_from(const ChartAtlas& atlas, Vec2Q pos, Vec2Q d, const std::optional<Q>& budget,
                        size_t max_crossings) {
  GeodesicPath path;
  Q used = 0;
  while (true) {
    std::optional<Event> ev = next_event(atlas, pos, d);
    std::optional<Q> remaining;
    if (budget) remaining = *budget - used;
    if (!ev || (remaining && ev->t > *remaining) || (remaining && ev->t == *remaining && !ev->node)) {
      path.segments.push_back(Segment{pos, d, remaining});
      path.status = GeodesicStatus::extended_to_budget;
      return path;
    }
    path.segments.push_back(Segment{pos, d, ev->t});
    pos = pos + d * ev->t;
    used += ev->t;
    if (ev->node) {
      path.status = GeodesicStatus::hit_node;
      path.end = ev->node_pos;
      return path;
    }
    Mat2Z L = Mat2Z::identity();
    int seg = static_cast<int>(path.segments.size());
    for (auto [ci, sign] : ev->cuts) {
      L = atlas.cuts()[ci].crossing(sign).linear() * L;
      path.crossings.push_back(Crossing{ci, pos, sign, seg});
    }
    d = L * d;
    if (path.crossings.size() > max_crossings) {
      path.segments.push_back(Segment{pos, d, Q(0)});
      path.status = GeodesicStatus::converged_to_eigenray_point;
      path.end = pos;
      return path;
    }
  }
}

}  // namespace

GeodesicPath trace_geodesic(const ChartAtlas& atlas, const Vec2Q& start, const Vec2Q& dir,
                            const std::optional<Q>& budget, size_t max_crossings) {
  if (dir.x == 0 && dir.y == 0) throw precondition_error("geodesic direction is zero");
  if (atlas.on_cut(start)) throw precondition_error("geodesic starts on a cut");
  if (budget && *budget < 0) throw precondition_error("negative budget");
  return trace_from(atlas, start, dir, budget, max_crossings);
}

GeodesicPath trace_eigenray(const ChartAtlas& atlas, const Vec2Q& node, int sign, size_t max_crossings) {
  auto [plus, minus] = eigen_directions(atlas, node);
  if (sign > 0) {
    GeodesicPath p;
    p.segments.push_back(Segment{node, plus.dir.q(), std::nullopt});
    return p;
  }
  return trace_from(atlas, node, minus.dir.q(), std::nullopt, max_crossings);
}

GaussBonnetReport gauss_bonnet_check(const ChartAtlas& atlas, const Vec2Q& node, const GeodesicPath& path) {
  GaussBonnetReport rep;
  int idx = -1;
  for (size_t i = 0; i < atlas.cuts().size(); ++i)
    if (atlas.cuts()[i].node == node) idx = static_cast<int>(i);
  if (idx < 0) throw precondition_error("no node at " + where(node));
  const Cut& cut = atlas.cuts()[idx];
  Vec2Q e = cut.dir.q();
  for (size_t k = 0; k < path.crossings.size(); ++k) {
    const Crossing& c = path.crossings[k];
    if (c.cut != idx) continue;
    const Segment& after = path.segments.at(c.segment);
    Q tr = det2(e, after.dir);
    if (tr == 0) {
      ++rep.tangential;
      continue;
    }
    ++rep.crossings_checked;
    // The developed continuation is the straight line c.point + s * after.dir; a second meeting
    // with the eigenray would need s > 0 with c.point + s * after.dir on the ray.
    Q s_hit = det2(e, cut.node - c.point) / tr;
    if (s_hit > 0) ++rep.double_hits;
    // The next crossing event of the recorded path, if it is the same eigenray again.
    for (size_t j = k + 1; j < path.crossings.size(); ++j) {
      if (path.crossings[j].point == c.point) continue;
      if (path.crossings[j].cut == idx) ++rep.double_hits;
      break;
    }
    double ux = e.x.get_d(), uy = e.y.get_d(), vx = after.dir.x.get_d(), vy = after.dir.y.get_d();
    double a0 = std::atan2(ux * vy - uy * vx, ux * vx + uy * vy);
    double a1 = std::atan2(vx * uy - vy * ux, vx * ux + vy * uy);
    rep.angles.push_back({a0, a1});
    if (std::abs(a0 + a1) > 1e-12) rep.passes = false;
  }
  if (path.status == GeodesicStatus::hit_node && path.end && *path.end == node && !path.segments.empty() &&
      det2(e, path.segments.back().dir) == 0)
    ++rep.tangential;
  if (rep.double_hits > 0) rep.passes = false;
  return rep;
}

namespace {

std::optional<Vec2Q> segments_meet(const Segment& a, const Segment& b) {
  Q den = det2(a.dir, b.dir);
  Vec2Q w = b.start - a.start;
  if (den != 0) {
    Q t1 = det2(w, b.dir) / den, t2 = det2(w, a.dir) / den;
    if (t1 < 0 || t2 < 0) return std::nullopt;
    if (a.length && t1 > *a.length) return std::nullopt;
    if (b.length && t2 > *b.length) return std::nullopt;
    return a.start + a.dir * t1;
  }
  if (det2(a.dir, w) != 0) return std::nullopt;
  Q aa = dot(a.dir, a.dir);
  Q lo_a = 0;
  std::optional<Q> hi_a;
  if (a.length) hi_a = *a.length;
  // b in the parameter of a
  Q b0 = dot(w, a.dir) / aa, k = dot(b.dir, a.dir) / aa;
  Q blo, bhi;
  bool b_unbounded_up = false, b_unbounded_down = false;
  if (b.length) {
    Q b1 = b0 + k * *b.length;
    blo = b0 < b1 ? b0 : b1;
    bhi = b0 < b1 ? b1 : b0;
  } else if (k > 0) {
    blo = b0;
    b_unbounded_up = true;
  } else {
    bhi = b0;
    b_unbounded_down = true;
  }
  Q lo = lo_a;
  if (!b_unbounded_down && blo > lo) lo = blo;
  if (b_unbounded_down) {
    if (bhi < lo_a) return std::nullopt;
  }
  if (hi_a) {
    if (!b_unbounded_down && !b_unbounded_up && bhi < lo) return std::nullopt;
    if (lo > *hi_a) return std::nullopt;
  } else if (!b_unbounded_up && !b_unbounded_down && bhi < lo) {
    return std::nullopt;
  }
  return a.start + a.dir * lo;
}

}  // namespace

std::optional<Vec2Q> paths_meet(const GeodesicPath& a, const GeodesicPath& b) {
  for (const auto& sa : a.segments)
    for (const auto& sb : b.segments)
      if (auto p = segments_meet(sa, sb)) return p;
  return std::nullopt;
}

}  // namespace eigenray
