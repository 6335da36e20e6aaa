#pragma once

#include "eigenray/rational.hpp"

namespace eigenray {

struct Mat2Z {
  Z a, b, c, d;  // [[a, b], [c, d]]

  static Mat2Z identity() { return {1, 0, 0, 1}; }
  Z det() const { return a * d - b * c; }
  Z trace() const { return a + d; }
  Mat2Z transpose() const { return {a, c, b, d}; }
  Mat2Z operator*(const Mat2Z& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  Mat2Z operator-(const Mat2Z& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
  Vec2Q operator*(const Vec2Q& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
  Vec2Z operator*(const Vec2Z& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
  bool operator==(const Mat2Z& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
  bool is_zero() const { return a == 0 && b == 0 && c == 0 && d == 0; }
};

// p |-> linear * p + translate, with det(linear) = +-1.
class IntegralAffineMap {
 public:
  IntegralAffineMap() : linear_(Mat2Z::identity()) {}
  IntegralAffineMap(Mat2Z linear, Vec2Q translate);

  static IntegralAffineMap identity() { return {}; }
  static IntegralAffineMap translation(const Vec2Q& t) { return {Mat2Z::identity(), t}; }
  // The unique map with linear part L fixing the point p.
  static IntegralAffineMap fixing(const Mat2Z& L, const Vec2Q& p);

  const Mat2Z& linear() const { return linear_; }
  const Vec2Q& translate() const { return translate_; }

  Vec2Q apply(const Vec2Q& p) const { return linear_ * p + translate_; }
  Vec2Q apply_vector(const Vec2Q& v) const { return linear_ * v; }
  Vec2Z apply_vector(const Vec2Z& v) const { return linear_ * v; }

  bool operator==(const IntegralAffineMap& o) const {
    return linear_ == o.linear_ && translate_ == o.translate_;
  }

 private:
  Mat2Z linear_;
  Vec2Q translate_;
};

// (a o b)(p) = a(b(p)).
IntegralAffineMap compose(const IntegralAffineMap& a, const IntegralAffineMap& b);
IntegralAffineMap inverse(const IntegralAffineMap& m);

// v |-> v + k det(e, v) e. Throws on non-primitive e.
IntegralAffineMap linear_shear(const Vec2Z& e, const Z& k);
Mat2Z shear_matrix(const Vec2Z& e, const Z& k);

// v |-> v + m det(e, v - base) e on det(e, v - base) >= 0, identity elsewhere.
struct PLShear {
  Vec2Q base;
  Vec2Z e;
  Z m;

  PLShear(Vec2Q base, Vec2Z e, Z m);
  Vec2Q apply(const Vec2Q& p) const;
  // The affine piece in force on the closed half-plane containing p.
  IntegralAffineMap piece_at(const Vec2Q& p) const;
  // The global shear that agrees with this one on the sheared side.
  IntegralAffineMap global() const;
};

Vec2Q shear_apply(const PLShear& s, const Vec2Q& p);

}  // namespace eigenray
