#pragma once

#include "eigenray/affine.hpp"
#include "eigenray/novikov.hpp"

#include <map>
#include <optional>
#include <vector>

namespace eigenray {

// Compact convex polygon with rational vertices, stored counterclockwise.
class RationalPolygon {
 public:
  explicit RationalPolygon(std::vector<Vec2Q> vertices);
  static RationalPolygon box(const Q& x0, const Q& x1, const Q& y0, const Q& y1);

  const std::vector<Vec2Q>& vertices() const { return v_; }
  bool contains(const Vec2Q& p) const;
  bool contains(const RationalPolygon& other) const;
  // min over the polygon of the linear form n.
  Q min_pairing(const Vec2Z& n) const;
  RationalPolygon image(const IntegralAffineMap& m) const;

 private:
  std::vector<Vec2Q> v_;
};

// Σ a_n z^n with coefficients in the Novikov field; characters are distinct.
struct KSElement {
  std::map<Vec2Z, NovikovElement> terms;
  Q precision = 20;

  static KSElement constant(const NovikovElement& a, const Q& precision = 20);
  static KSElement monomial(const Vec2Z& n, const NovikovElement& a = NovikovElement(1), const Q& precision = 20);

  bool is_zero() const { return terms.empty(); }
  size_t term_count() const;  // number of (exponent, character) monomials
  // Exact (untruncated) ring operations.
  KSElement operator+(const KSElement& o) const;
  KSElement operator-(const KSElement& o) const;
  KSElement operator*(const KSElement& o) const;
  bool operator==(const KSElement& o) const { return terms == o.terms; }
};

// nullopt is +∞.
std::optional<Q> ks_val(const KSElement& x, const RationalPolygon& p);
// Drops every monomial T^a z^n with a + min_P n >= precision.
KSElement ks_truncate(const KSElement& x, const RationalPolygon& p, const Q& precision);
KSElement ks_mul(const KSElement& x, const KSElement& y, const RationalPolygon& p, const Q& precision);
KSElement restrict(const KSElement& x, const RationalPolygon& big, const RationalPolygon& small);
// z^n -> T^{n(t)} z^{L^T n} for m = (L, t); val_P of the image equals val_{m(P)} of x.
KSElement monomial_transform(const KSElement& x, const IntegralAffineMap& m);

struct WallDatum {
  Vec2Z e;
  Q f;
  Z m = 1;
  int sign = 1;
};

// z^v -> z^v (1 + T^f z^e)^{sign m det(e, v)}, truncated at `precision` on p.
KSElement wall_cross(const KSElement& x, const WallDatum& w, const RationalPolygon& p, const Q& precision);
// The wall seen after transforming by m, so that transform o cross = cross' o transform.
WallDatum transform_wall(const WallDatum& w, const IntegralAffineMap& m);

struct GlueReport {
  bool relation_vanishes = false;
  bool x_invertible = false;
  bool seed_compatible = false;
  bool ok() const { return relation_vanishes && x_invertible && seed_compatible; }
};
// Substitutes x -> ξ, y -> ξ^{-1}(1 + η^{-1}), u -> η into u(xy - 1) - 1.
GlueReport glue_verify(const IntegralAffineMap& seed = IntegralAffineMap(Mat2Z{0, -1, 1, 0}, Vec2Q(Q(1), Q(0))));

}  // namespace eigenray
