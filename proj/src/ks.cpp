#include "eigenray/ks.hpp"

#include <algorithm>

namespace eigenray {

RationalPolygon::RationalPolygon(std::vector<Vec2Q> vertices) : v_(std::move(vertices)) {
  size_t n = v_.size();
  if (n < 3) throw precondition_error("degenerate polygon: fewer than three vertices");
  int orient = 0;
  for (size_t i = 0; i < n; ++i) {
    const Vec2Q &a = v_[i], &b = v_[(i + 1) % n], &c = v_[(i + 2) % n];
    Q cr = det2(b - a, c - b);
    int s = cr > 0 ? 1 : (cr < 0 ? -1 : 0);
    if (s == 0) continue;
    if (orient == 0) orient = s;
    if (s != orient) throw precondition_error("polygon is not convex");
  }
  if (orient == 0) throw precondition_error("degenerate polygon: vertices are colinear");
  if (orient < 0) std::reverse(v_.begin(), v_.end());
}

RationalPolygon RationalPolygon::box(const Q& x0, const Q& x1, const Q& y0, const Q& y1) {
  return RationalPolygon({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
}

bool RationalPolygon::contains(const Vec2Q& p) const {
  for (size_t i = 0; i < v_.size(); ++i)
    if (det2(v_[(i + 1) % v_.size()] - v_[i], p - v_[i]) < 0) return false;
  return true;
}

bool RationalPolygon::contains(const RationalPolygon& other) const {
  return std::all_of(other.v_.begin(), other.v_.end(), [&](const Vec2Q& p) { return contains(p); });
}

Q RationalPolygon::min_pairing(const Vec2Z& n) const {
  Vec2Q nq = n.q();
  Q best = dot(nq, v_[0]);
  for (const auto& p : v_) {
    Q x = dot(nq, p);
    if (x < best) best = x;
  }
  return best;
}

RationalPolygon RationalPolygon::image(const IntegralAffineMap& m) const {
  std::vector<Vec2Q> w;
  for (const auto& p : v_) w.push_back(m.apply(p));
  return RationalPolygon(std::move(w));
}

KSElement KSElement::constant(const NovikovElement& a, const Q& precision) { return monomial(Vec2Z(0, 0), a, precision); }

KSElement KSElement::monomial(const Vec2Z& n, const NovikovElement& a, const Q& precision) {
  KSElement x;
  x.precision = precision;
  if (!a.is_zero()) x.terms[n] = a;
  return x;
}

size_t KSElement::term_count() const {
  size_t c = 0;
  for (const auto& [n, a] : terms) c += a.terms().size();
  return c;
}

KSElement KSElement::operator+(const KSElement& o) const {
  KSElement r = *this;
  r.precision = std::min(precision, o.precision);
  for (const auto& [n, a] : o.terms) {
    NovikovElement s = r.terms[n] + a;
    if (s.is_zero())
      r.terms.erase(n);
    else
      r.terms[n] = s;
  }
  return r;
}

KSElement KSElement::operator-(const KSElement& o) const {
  KSElement neg = o;
  for (auto& [n, a] : neg.terms) a = -a;
  return *this + neg;
}

KSElement KSElement::operator*(const KSElement& o) const {
  KSElement r;
  r.precision = std::min(precision, o.precision);
  for (const auto& [n1, a1] : terms)
    for (const auto& [n2, a2] : o.terms) {
      Vec2Z n = n1 + n2;
      NovikovElement s = r.terms[n] + a1 * a2;
      if (s.is_zero())
        r.terms.erase(n);
      else
        r.terms[n] = s;
    }
  return r;
}

std::optional<Q> ks_val(const KSElement& x, const RationalPolygon& p) {
  std::optional<Q> best;
  for (const auto& [n, a] : x.terms) {
    Q v = *a.valuation() + p.min_pairing(n);
    if (!best || v < *best) best = v;
  }
  return best;
}

KSElement ks_truncate(const KSElement& x, const RationalPolygon& p, const Q& precision) {
  KSElement r;
  r.precision = precision;
  for (const auto& [n, a] : x.terms) {
    Q base = p.min_pairing(n);
    NovikovElement kept = a.truncate(precision - base);
    if (!kept.is_zero()) r.terms[n] = kept;
  }
  return r;
}

KSElement ks_mul(const KSElement& x, const KSElement& y, const RationalPolygon& p, const Q& precision) {
  return ks_truncate(x * y, p, precision);
}

KSElement restrict(const KSElement& x, const RationalPolygon& big, const RationalPolygon& small) {
  if (!big.contains(small)) throw precondition_error("restriction target is not contained in the source polygon");
  return ks_truncate(x, small, x.precision);
}

KSElement monomial_transform(const KSElement& x, const IntegralAffineMap& m) {
  KSElement r;
  r.precision = x.precision;
  Mat2Z Lt = m.linear().transpose();
  for (const auto& [n, a] : x.terms) r.terms[Lt * n] = a.shift(dot(n.q(), m.translate()));
  return r;
}

namespace {

// (1 + X)^k as Σ_j binom(k, j) X^j for j = 0 .. jmax.
std::vector<Q> binomials(const Z& k, size_t jmax) {
  std::vector<Q> c{Q(1)};
  for (size_t j = 1; j <= jmax; ++j) {
    Q next = c.back() * Q(k - Z(static_cast<long>(j - 1))) / Q(static_cast<long>(j));
    if (next == 0) break;
    c.push_back(next);
  }
  return c;
}

}  // namespace

KSElement wall_cross(const KSElement& x, const WallDatum& w, const RationalPolygon& p, const Q& precision) {
  if (!w.e.is_primitive()) throw precondition_error("wall direction must be primitive");
  Q gap = w.f + p.min_pairing(w.e);
  if (gap <= 0) throw precondition_error("wall crossing does not converge on this polygon: val(T^f z^e) <= 0");
  KSElement out;
  out.precision = precision;
  for (const auto& [v, a] : x.terms) {
    Z k = Z(w.sign) * w.m * det2(w.e, v);
    if (k == 0) {
      out = out + KSElement::monomial(v, a, precision);
      continue;
    }
    Q low = *a.valuation() + p.min_pairing(v);
    // Each further power of X raises the valuation by at least `gap`.
    size_t jmax = 0;
    while (low + gap * Q(static_cast<long>(jmax + 1)) < precision) ++jmax;
    std::vector<Q> c = binomials(k, jmax);
    for (size_t j = 0; j < c.size(); ++j) {
      Vec2Z ch = v + Vec2Z(w.e.x * static_cast<long>(j), w.e.y * static_cast<long>(j));
      out = out + KSElement::monomial(ch, a * NovikovElement::monomial(c[j], w.f * Q(static_cast<long>(j))), precision);
    }
  }
  return ks_truncate(out, p, precision);
}

WallDatum transform_wall(const WallDatum& w, const IntegralAffineMap& m) {
  WallDatum r;
  r.e = m.linear().transpose() * w.e;
  r.f = w.f + dot(w.e.q(), m.translate());
  r.m = w.m;
  r.sign = m.linear().det() > 0 ? w.sign : -w.sign;
  return r;
}

GlueReport glue_verify(const IntegralAffineMap& seed) {
  KSElement xi = KSElement::monomial({1, 0});
  KSElement xi_inv = KSElement::monomial({-1, 0});
  KSElement eta = KSElement::monomial({0, 1});
  KSElement one = KSElement::constant(NovikovElement(1));
  KSElement x = xi, y = xi_inv * (one + KSElement::monomial({0, -1})), u = eta;
  KSElement rel = u * (x * y - one) - one;
  GlueReport rep;
  rep.relation_vanishes = rel.is_zero();
  rep.x_invertible = (x * xi_inv) == one;
  auto T = [&](const KSElement& z) { return monomial_transform(z, seed); };
  KSElement rel_t = T(u) * (T(x) * T(y) - one) - one;
  rep.seed_compatible = rel_t.is_zero() && T(rel).is_zero();
  return rep;
}

}  // namespace eigenray
