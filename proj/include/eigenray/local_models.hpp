#pragma once

#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace eigenray {

using Cplx = std::complex<double>;

// ω = dx1∧dy1 + dx2∧dy2 on C² = R⁴ with coordinates (x1, y1, x2, y2).
struct C2Point {
  Cplx z1, z2;
};

using R4 = std::array<double, 4>;
R4 to_r4(const C2Point& p);
C2Point from_r4(const R4& q);
double omega(const R4& u, const R4& v);

// (2π z1 z2, π(|z1|² - |z2|²)).
std::pair<Cplx, double> hopf(const C2Point& p);
// e^{2πiθ} acting by (z1, z2) -> (e^{2πiθ} z1, e^{-2πiθ} z2).
C2Point circle_act(const C2Point& p, double theta);

struct SubmersionSpec {
  std::function<double(Cplx, double)> g;  // f = (g, pr_R)
  double h = 1e-5;
};

struct LagrangianReport {
  int rank = 0;
  double omega_on_kernel = 0;
  bool passes = false;
  bool focus_focus_candidate = false;
  bool degenerate_step = false;
  std::string note;
};

LagrangianReport lagrangian_fiber_check(const SubmersionSpec& spec, const C2Point& p, double tol);

struct R3 {
  double x, y, z;
};
// The bump-weighted push along the x axis; identity outside V = (-c,∞)×(-c,c)².
// Throws on the nonnegative x axis, outside U = (-b,∞)×(-a,a)², or when a, b <= c.
R3 slide_map(double a, double b, double c, const R3& q);
double slide_psi(double c, const R3& q);

enum class FluxModel { hopf, flat };

struct FluxOptions {
  FluxModel model = FluxModel::hopf;
  // Phase of z1 along the lift, as a function of (s, θ); any choice lifts the same annulus.
  std::function<double(double, double)> phase;
  std::optional<double> avoid_ray;  // θ grid is aligned so that arg w = avoid_ray is never sampled
  double tol = 1e-7;
  long max_cells = 1L << 20;
};

struct FluxResult {
  double value = 0;
  long cells = 0;
  bool converged = false;
};

// |∫ ω| over a lift of the annulus between the leaves |w| = rA and |w| = rB of the level μ = c.
FluxResult flux_integral(double c, double rA, double rB, const FluxOptions& opt = {});
// Closed forms used as references.
double hopf_annulus_area(double c, double rA, double rB);
double flat_annulus_area(double rA, double rB);

struct ProbeReport {
  std::vector<double> radii;
  std::vector<double> flux;
  bool strictly_increasing = false;
  bool slopes_non_decaying = false;
};
ProbeReport infinite_area_probe(double c, double r0, const std::vector<double>& radii,
                                std::optional<double> avoid_ray = std::nullopt, FluxModel model = FluxModel::hopf);

}  // namespace eigenray
