#pragma once

#include "eigenray/affine.hpp"

#include <optional>
#include <string>
#include <vector>

namespace eigenray {

struct Node {
  Vec2Q position;
  Z multiplicity;
};

// {base + t dir : t >= 0}; nodes sorted by position along the ray, the first one at base.
struct Ray {
  Vec2Q base;
  Vec2Z dir;
  std::vector<Node> nodes;

  bool contains(const Vec2Q& p) const;
  Z total_multiplicity() const;
  // Parameter t with p = base + t dir; p must lie on the line.
  Q param(const Vec2Q& p) const;
};

// One multiset element l^n, carried with its copy count m(n).
struct SubRay {
  Vec2Q base;
  Vec2Z dir;
  Z count;

  bool operator==(const SubRay& o) const { return base == o.base && dir == o.dir && count == o.count; }
  bool operator<(const SubRay& o) const;
};

struct Violation {
  std::string kind;  // "non-primitive", "bad-multiplicity", "node-off-ray", "missing-base", "duplicate-node", "overlap", "cross"
  int ray_a = -1;
  int ray_b = -1;
  std::string detail;
};

struct ValidationReport {
  bool valid = true;
  std::vector<Violation> violations;
};

class EigenrayDiagram {
 public:
  EigenrayDiagram() = default;
  // Rays are sorted into canonical order; invariants are not enforced here (see validate).
  explicit EigenrayDiagram(std::vector<Ray> rays);
  // Groups nested sub-rays into rays; two sub-rays on one line with the same direction share a ray.
  static EigenrayDiagram from_multiset(const std::vector<SubRay>& elems);

  const std::vector<Ray>& rays() const { return rays_; }
  std::vector<SubRay> multiset() const;
  std::vector<Node> nodes() const;

  // Index of the ray holding a node at p, or -1.
  int ray_of_node(const Vec2Q& p) const;
  const Node* find_node(const Vec2Q& p) const;

  bool operator==(const EigenrayDiagram& o) const { return multiset() == o.multiset(); }

 private:
  std::vector<Ray> rays_;
};

struct RayIntersection {
  bool meets = false;
  bool colinear = false;
  std::optional<Vec2Q> point;  // a witness point when they meet
};

RayIntersection intersect_rays(const Vec2Q& b1, const Vec2Z& e1, const Vec2Q& b2, const Vec2Z& e2);
// Does the full line through b1 along e1 meet the ray b2 + t e2?
bool line_meets_ray(const Vec2Q& b1, const Vec2Z& e1, const Vec2Q& b2, const Vec2Z& e2);

ValidationReport validate(const EigenrayDiagram& d);
Z total_multiplicity(const EigenrayDiagram& d, const Ray& ray);
EigenrayDiagram node_removal(const EigenrayDiagram& d, const Vec2Q& node);
// Adds one copy of l^n; the inverse of node_removal at n.
EigenrayDiagram node_insertion(const EigenrayDiagram& d, const SubRay& elem);
EigenrayDiagram nodal_slide(const EigenrayDiagram& d, const Vec2Q& node, const Vec2Q& to);
bool is_mutable(const EigenrayDiagram& d, const Vec2Q& node);
EigenrayDiagram branch_move(const EigenrayDiagram& d, const Vec2Q& node);
PLShear branch_shear(const EigenrayDiagram& d, const Vec2Q& node);
std::optional<Vec2Q> is_exact(const EigenrayDiagram& d);

struct SeedPair {
  Vec2Z dir;
  Q flux;
  bool operator==(const SeedPair& o) const { return dir == o.dir && flux == o.flux; }
};
std::vector<SeedPair> seed_data(const EigenrayDiagram& d);

// Image of every multiset element under an integral affine map.
EigenrayDiagram apply_map(const EigenrayDiagram& d, const IntegralAffineMap& m);

struct Equivalence {
  enum class Status { found, none, indeterminate };
  Status status = Status::none;
  std::optional<IntegralAffineMap> map;
};
Equivalence affine_equivalent(const EigenrayDiagram& d1, const EigenrayDiagram& d2, long shear_bound = 64);

// Resolves colinear opposite overlaps of a weak diagram by generalized branch moves.
// Returns nullopt when an overlap cannot be resolved that way.
std::optional<EigenrayDiagram> normalize_weak(const std::vector<SubRay>& elems);

}  // namespace eigenray
