#include "eigenray/local_models.hpp"

#include <cmath>
#include <stdexcept>

namespace eigenray {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

R4 to_r4(const C2Point& p) { return {p.z1.real(), p.z1.imag(), p.z2.real(), p.z2.imag()}; }
C2Point from_r4(const R4& q) { return {Cplx(q[0], q[1]), Cplx(q[2], q[3])}; }

double omega(const R4& u, const R4& v) { return u[0] * v[1] - u[1] * v[0] + u[2] * v[3] - u[3] * v[2]; }

std::pair<Cplx, double> hopf(const C2Point& p) {
  return {2 * kPi * p.z1 * p.z2, kPi * (std::norm(p.z1) - std::norm(p.z2))};
}

C2Point circle_act(const C2Point& p, double theta) {
  Cplx e = std::polar(1.0, 2 * kPi * theta);
  return {e * p.z1, std::conj(e) * p.z2};
}

namespace {

// Vector orthogonal to a, b, c in R⁴ (cofactor expansion of the formal determinant).
R4 cross3(const R4& a, const R4& b, const R4& c) {
  auto det3 = [](double a0, double a1, double a2, double b0, double b1, double b2, double c0, double c1, double c2) {
    return a0 * (b1 * c2 - b2 * c1) - a1 * (b0 * c2 - b2 * c0) + a2 * (b0 * c1 - b1 * c0);
  };
  return {det3(a[1], a[2], a[3], b[1], b[2], b[3], c[1], c[2], c[3]),
          -det3(a[0], a[2], a[3], b[0], b[2], b[3], c[0], c[2], c[3]),
          det3(a[0], a[1], a[3], b[0], b[1], b[3], c[0], c[1], c[3]),
          -det3(a[0], a[1], a[2], b[0], b[1], b[2], c[0], c[1], c[2])};
}

double norm4(const R4& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]); }
double dot4(const R4& u, const R4& v) { return u[0] * v[0] + u[1] * v[1] + u[2] * v[2] + u[3] * v[3]; }

R4 normalized(R4 v) {
  double n = norm4(v);
  for (auto& x : v) x /= n;
  return v;
}

}  // namespace

LagrangianReport lagrangian_fiber_check(const SubmersionSpec& spec, const C2Point& p, double tol) {
  LagrangianReport rep;
  const double h = spec.h;
  if (!(h > 1e-10) || !std::isfinite(h)) {
    rep.degenerate_step = true;
    rep.note = "finite-difference step too small";
    return rep;
  }
  auto F = [&](const R4& q) {
    auto [w, mu] = hopf(from_r4(q));
    return std::array<double, 2>{spec.g(w, mu), mu};
  };
  R4 q = to_r4(p);
  R4 r1{}, r2{};
  for (int i = 0; i < 4; ++i) {
    R4 qp = q, qm = q;
    qp[i] += h;
    qm[i] -= h;
    auto fp = F(qp), fm = F(qm);
    r1[i] = (fp[0] - fm[0]) / (2 * h);
    r2[i] = (fp[1] - fm[1]) / (2 * h);
  }
  for (int i = 0; i < 4; ++i)
    if (!std::isfinite(r1[i]) || !std::isfinite(r2[i])) {
      rep.degenerate_step = true;
      rep.note = "non-finite differences";
      return rep;
    }
  const double eps = 1e-7;
  double n1 = norm4(r1), n2 = norm4(r2);
  if (n1 < eps && n2 < eps) {
    rep.rank = 0;
  } else if (n1 < eps || n2 < eps) {
    rep.rank = 1;
  } else {
    double c = dot4(r1, r2) / (n1 * n2);
    rep.rank = 1 - c * c > 1e-10 ? 2 : 1;
  }
  if (rep.rank == 2) {
    R4 best{};
    double bn = -1;
    for (int i = 0; i < 4; ++i) {
      R4 e{};
      e[i] = 1;
      R4 k = cross3(r1, r2, e);
      if (norm4(k) > bn) {
        bn = norm4(k);
        best = k;
      }
    }
    R4 k1 = normalized(best);
    R4 k2 = normalized(cross3(r1, r2, k1));
    rep.omega_on_kernel = omega(k1, k2);
    rep.passes = std::abs(rep.omega_on_kernel) < tol;
    rep.note = rep.passes ? "lagrangian fiber" : "kernel is not isotropic";
    return rep;
  }
  if (rep.rank == 0) {
    auto [w, mu] = hopf(p);
    double gx = (spec.g(w + Cplx(h, 0), mu) - spec.g(w - Cplx(h, 0), mu)) / (2 * h);
    double gy = (spec.g(w + Cplx(0, h), mu) - spec.g(w - Cplx(0, h), mu)) / (2 * h);
    if (std::hypot(gx, gy) > eps) {
      rep.focus_focus_candidate = true;
      rep.note = "focus-focus candidate";
      return rep;
    }
  }
  rep.note = "rank drop";
  return rep;
}

namespace {

double mollifier(double t) { return t > 0 ? std::exp(-1 / t) : 0.0; }
// Smooth step: 0 for t <= 0, 1 for t >= 1, nondecreasing.
double smooth_step(double t) {
  double a = mollifier(t), b = mollifier(1 - t);
  return a / (a + b);
}

}  // namespace

double slide_psi(double c, const R3& q) {
  double r2 = q.y * q.y + q.z * q.z;
  double r = std::sqrt(r2);
  double rho = smooth_step((q.x + c) / (c / 2)) * (1 - smooth_step((r - c / 2) / (c / 2)));
  if (rho == 0) return 0;
  if (r2 == 0) return INFINITY;
  double lg = std::log(c * c / r2);
  return lg > 0 ? rho * lg : 0.0;
}

R3 slide_map(double a, double b, double c, const R3& q) {
  if (!(c > 0) || !(a > c) || !(b > c)) throw std::invalid_argument("slide_map needs a, b > c > 0");
  if (!(q.x > -b) || !(std::abs(q.y) < a) || !(std::abs(q.z) < a)) throw std::invalid_argument("point outside U");
  if (q.y == 0 && q.z == 0 && q.x >= 0) throw std::invalid_argument("point on the nonnegative x axis");
  return {q.x + slide_psi(c, q), q.y, q.z};
}

double hopf_annulus_area(double c, double rA, double rB) {
  return 0.5 * std::abs(std::sqrt(c * c + rB * rB) - std::sqrt(c * c + rA * rA));
}

double flat_annulus_area(double rA, double rB) { return kPi * std::abs(rB * rB - rA * rA); }

namespace {

R4 lift_point(double c, double rA, double rB, const FluxOptions& opt, double s, double theta) {
  double r = rA + s * (rB - rA);
  double phi = opt.phase ? opt.phase(s, theta) : 0.0;
  if (opt.model == FluxModel::flat) {
    return to_r4({std::polar(r, theta), std::polar(1.0, phi)});
  }
  double k = c / kPi;
  double rho1 = 0.5 * (k + std::sqrt(k * k + r * r / (kPi * kPi)));
  double rho2 = rho1 - k;
  if (rho2 < 0) rho2 = 0;
  return to_r4({std::polar(std::sqrt(rho1), phi), std::polar(std::sqrt(rho2), theta - phi)});
}

void check_endpoint(double c, double r, const FluxOptions& opt, const R4& x) {
  C2Point p = from_r4(x);
  double scale = 1 + std::abs(c) + r;
  if (opt.model == FluxModel::flat) {
    if (std::abs(std::abs(p.z1) - r) > 1e-9 * scale) throw std::invalid_argument("lift endpoint is off its orbit");
    return;
  }
  auto [w, mu] = hopf(p);
  if (std::abs(std::abs(w) - r) > 1e-9 * scale || std::abs(mu - c) > 1e-9 * scale)
    throw std::invalid_argument("lift endpoint is off its orbit");
}

// Tangent vectors by central differences with a fixed step, independent of the cell size.
constexpr double kStep = 1e-5;

double quadrature(double c, double rA, double rB, const FluxOptions& opt, long n) {
  double ds = 1.0 / n, dt = 2 * kPi / n;
  double t0 = opt.avoid_ray ? *opt.avoid_ray : 0.0;
  double sum = 0;
  for (long i = 0; i < n; ++i) {
    double s = (i + 0.5) * ds;
    for (long j = 0; j < n; ++j) {
      double t = t0 + (j + 0.5) * dt;
      R4 sp = lift_point(c, rA, rB, opt, s + kStep, t), sm = lift_point(c, rA, rB, opt, s - kStep, t);
      R4 tp = lift_point(c, rA, rB, opt, s, t + kStep), tm = lift_point(c, rA, rB, opt, s, t - kStep);
      R4 xs, xt;
      for (int k = 0; k < 4; ++k) {
        xs[k] = (sp[k] - sm[k]) / (2 * kStep);
        xt[k] = (tp[k] - tm[k]) / (2 * kStep);
      }
      sum += omega(xs, xt);
    }
  }
  return sum * ds * dt;
}

}  // namespace

FluxResult flux_integral(double c, double rA, double rB, const FluxOptions& opt) {
  if (rA < 0 || rB < 0) throw std::invalid_argument("radii must be nonnegative");
  for (double t : {0.0, 1.0, 2.0, 4.0}) {
    check_endpoint(c, rA, opt, lift_point(c, rA, rB, opt, 0, t));
    check_endpoint(c, rB, opt, lift_point(c, rA, rB, opt, 1, t));
  }
  FluxResult res;
  if (rA == rB) {
    res.converged = true;
    return res;
  }
  std::optional<double> prev;
  for (long n = 8; n * n <= opt.max_cells; n *= 2) {
    double v = quadrature(c, rA, rB, opt, n);
    res.value = std::abs(v);
    res.cells = n * n;
    if (prev && std::abs(v - *prev) < opt.tol) {
      res.converged = true;
      break;
    }
    prev = v;
  }
  return res;
}

ProbeReport infinite_area_probe(double c, double r0, const std::vector<double>& radii, std::optional<double> avoid_ray,
                                FluxModel model) {
  ProbeReport rep;
  rep.radii = radii;
  FluxOptions opt;
  opt.model = model;
  opt.avoid_ray = avoid_ray;
  for (double r : radii) rep.flux.push_back(flux_integral(c, r0, r, opt).value);
  rep.strictly_increasing = rep.flux.size() >= 2;
  rep.slopes_non_decaying = rep.flux.size() >= 3;
  std::optional<double> first_slope;
  for (size_t i = 1; i < rep.flux.size(); ++i) {
    if (!(rep.flux[i] > rep.flux[i - 1])) rep.strictly_increasing = false;
    double dr = radii[i] - radii[i - 1];
    if (dr <= 0) {
      rep.slopes_non_decaying = false;
      continue;
    }
    double slope = (rep.flux[i] - rep.flux[i - 1]) / dr;
    if (!first_slope) first_slope = slope;
    if (slope < *first_slope * (1 - 1e-6)) rep.slopes_non_decaying = false;
  }
  return rep;
}

}  // namespace eigenray
