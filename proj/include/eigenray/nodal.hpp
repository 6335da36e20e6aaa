#pragma once

#include "eigenray/diagram.hpp"

#include <optional>
#include <string>
#include <vector>

namespace eigenray {

// One branch cut per multiset element l^n.
struct Cut {
  Vec2Q node;
  Vec2Z dir;
  Z mult;
  int ray = -1;  // index of the containing ray in the diagram

  // Chart change applied when a path crosses this cut with det(dir, velocity) of the given sign.
  IntegralAffineMap crossing(int sign) const;
};

class ChartAtlas {
 public:
  explicit ChartAtlas(EigenrayDiagram d);

  const EigenrayDiagram& diagram() const { return diagram_; }
  const std::vector<Cut>& cuts() const { return cuts_; }

  bool on_cut(const Vec2Q& p) const;
  bool is_node(const Vec2Q& p) const;

 private:
  EigenrayDiagram diagram_;
  std::vector<Cut> cuts_;
};

struct Crossing {
  int cut = -1;
  Vec2Q point;
  int sign = 0;
  int segment = -1;  // index of the segment that starts at this crossing (traced paths only)
};

enum class GeodesicStatus { extended_to_budget, converged_to_eigenray_point, hit_node };
std::string to_string(GeodesicStatus s);

struct Segment {
  Vec2Q start;
  Vec2Q dir;
  std::optional<Q> length;  // nullopt: unbounded
};

struct GeodesicPath {
  std::vector<Segment> segments;
  std::vector<Crossing> crossings;
  GeodesicStatus status = GeodesicStatus::extended_to_budget;
  std::optional<Vec2Q> end;  // node reached when status is hit_node
};

// Crossings met by the segment from p to q, in order. Throws when the segment touches a node,
// runs along a cut, or has an endpoint on a cut.
std::vector<Crossing> segment_crossings(const ChartAtlas& atlas, const Vec2Q& p, const Vec2Q& q);

IntegralAffineMap develop(const ChartAtlas& atlas, const std::vector<Vec2Q>& path);
IntegralAffineMap holonomy(const ChartAtlas& atlas, const std::vector<Vec2Q>& loop);

std::pair<Ray, Ray> eigen_directions(const ChartAtlas& atlas, const Vec2Q& node);

// Budget nullopt traces until the path leaves every cut behind (last segment unbounded).
GeodesicPath trace_geodesic(const ChartAtlas& atlas, const Vec2Q& start, const Vec2Q& dir,
                            const std::optional<Q>& budget, size_t max_crossings = 100000);
// The eigenray of a node in direction sign * e, traced through the atlas.
GeodesicPath trace_eigenray(const ChartAtlas& atlas, const Vec2Q& node, int sign, size_t max_crossings = 1000);

struct GaussBonnetReport {
  bool passes = true;
  int crossings_checked = 0;
  int double_hits = 0;
  int tangential = 0;
  std::vector<std::pair<double, double>> angles;  // (alpha0, alpha1) per checked crossing
};
GaussBonnetReport gauss_bonnet_check(const ChartAtlas& atlas, const Vec2Q& node, const GeodesicPath& path);

// Exact test for a common point of two traced polylines.
std::optional<Vec2Q> paths_meet(const GeodesicPath& a, const GeodesicPath& b);

}  // namespace eigenray
