#include "eigenray/affine.hpp"

namespace eigenray {

IntegralAffineMap::IntegralAffineMap(Mat2Z linear, Vec2Q translate)
    : linear_(std::move(linear)), translate_(std::move(translate)) {
  Z dt = linear_.det();
  if (dt != 1 && dt != -1) throw precondition_error("linear part is not in GL(2,Z)");
}

IntegralAffineMap IntegralAffineMap::fixing(const Mat2Z& L, const Vec2Q& p) {
  return {L, p - L * p};
}

IntegralAffineMap compose(const IntegralAffineMap& a, const IntegralAffineMap& b) {
  return {a.linear() * b.linear(), a.linear() * b.translate() + a.translate()};
}

IntegralAffineMap inverse(const IntegralAffineMap& m) {
  const Mat2Z& L = m.linear();
  Z dt = L.det();
  Mat2Z inv{L.d * dt, -L.b * dt, -L.c * dt, L.a * dt};
  return {inv, -(inv * m.translate())};
}

Mat2Z shear_matrix(const Vec2Z& e, const Z& k) {
  if (!e.is_primitive()) throw precondition_error("shear direction must be primitive");
  // det(e, v) = -e.y v.x + e.x v.y
  return {1 - k * e.x * e.y, k * e.x * e.x, -k * e.y * e.y, 1 + k * e.x * e.y};
}

IntegralAffineMap linear_shear(const Vec2Z& e, const Z& k) { return {shear_matrix(e, k), Vec2Q()}; }

PLShear::PLShear(Vec2Q b, Vec2Z dir, Z mult) : base(std::move(b)), e(std::move(dir)), m(std::move(mult)) {
  if (!e.is_primitive()) throw precondition_error("shear direction must be primitive");
  if (m <= 0) throw precondition_error("shear multiplicity must be positive");
}

IntegralAffineMap PLShear::global() const { return IntegralAffineMap::fixing(shear_matrix(e, m), base); }

IntegralAffineMap PLShear::piece_at(const Vec2Q& p) const {
  if (det2(e.q(), p - base) >= 0) return global();
  return IntegralAffineMap::identity();
}

Vec2Q PLShear::apply(const Vec2Q& p) const {
  Q d = det2(e.q(), p - base);
  if (d < 0) return p;
  return p + e.q() * (Q(m) * d);
}

Vec2Q shear_apply(const PLShear& s, const Vec2Q& p) { return s.apply(p); }

}  // namespace eigenray
