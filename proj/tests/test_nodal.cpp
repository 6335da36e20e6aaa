#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eigenray/fivecharts.hpp"
#include "eigenray/nodal.hpp"
#include "gen.hpp"
#include "oracles.hpp"

using namespace eigenray;

namespace {

Vec2Q v(long x, long y) { return {Q(x), Q(y)}; }
Vec2Q v(Q x, Q y) { return {x, y}; }

EigenrayDiagram one_node(long m = 1) { return EigenrayDiagram({Ray{v(0, 0), {1, 0}, {Node{v(0, 0), Z(m)}}}}); }

std::vector<Vec2Q> square(Q c) { return {v(c, -c), v(c, c), v(-c, c), v(-c, -c)}; }

bool shear_type(const IntegralAffineMap& m, const Vec2Z& e) {
  Mat2Z n = m.linear() - Mat2Z::identity();
  return m.linear().trace() == 2 && (n * n).is_zero() && n * e == Vec2Z(0, 0);
}

}  // namespace

TEST_CASE("holonomy examples") {
  ChartAtlas a(one_node());
  CHECK(holonomy(a, {v(-3, 1), v(-1, 1), v(-2, 3)}) == IntegralAffineMap::identity());

  // Counterclockwise around the origin: one upward crossing of the +x cut.
  IntegralAffineMap h = holonomy(a, square(1));
  CHECK(shear_type(h, {1, 0}));
  CHECK(h.linear() == shear_matrix({1, 0}, -1));
  CHECK(h == oracle::brute_force_holonomy(a.diagram(), square(1)));
  // A small loop crossing the cut twice, once each way, is trivial since it does not enclose the node.
  CHECK(holonomy(a, {v(1, -1), v(2, -1), v(2, 1), v(1, 1)}) == IntegralAffineMap::identity());

  for (long k : {2, 3, 5}) {
    ChartAtlas ak(one_node(k));
    IntegralAffineMap hk = holonomy(ak, square(2));
    CHECK(hk.linear() == shear_matrix({1, 0}, -k));
    CHECK(shear_type(hk, {1, 0}));
  }
  std::vector<Vec2Q> cw = square(1);
  std::reverse(cw.begin(), cw.end());
  CHECK(holonomy(a, cw) == inverse(h));
  CHECK_THROWS_AS(holonomy(a, {v(1, 1)}), precondition_error);
  CHECK_THROWS_AS(holonomy(a, {v(1, 0), v(1, 1), v(0, 1)}), precondition_error);
}

TEST_CASE("eigen directions") {
  ChartAtlas a(EigenrayDiagram({Ray{v(1, 0), {1, 0}, {Node{v(1, 0), 1}}}}));
  auto [p, m] = eigen_directions(a, v(1, 0));
  CHECK(p.base == v(1, 0));
  CHECK(p.dir == Vec2Z(1, 0));
  CHECK(m.dir == Vec2Z(-1, 0));

  ChartAtlas fc(five_charts_diagram());
  auto [py, my] = eigen_directions(fc, v(0, 1));
  CHECK(py.dir == Vec2Z(0, 1));
  CHECK(my.dir == Vec2Z(0, -1));

  ChartAtlas b(branch_move(five_charts_diagram(), v(1, 0)));
  auto [pb, mb] = eigen_directions(b, v(1, 1));
  CHECK(pb.dir == Vec2Z(1, 1));
  CHECK(mb.dir == Vec2Z(-1, -1));
  // The eigen direction is fixed by the holonomy around its node.
  IntegralAffineMap h = holonomy(b, {v(2, 0), v(3, 4), v(0, 3), v(Q(1, 2), Q(1, 3))});
  CHECK(h.apply_vector(Vec2Z(1, 1)) == Vec2Z(1, 1));
  CHECK_THROWS_AS(eigen_directions(a, v(0, 0)), precondition_error);
}

TEST_CASE("geodesic tracing") {
  ChartAtlas a(one_node());
  GeodesicPath p = trace_geodesic(a, v(-1, -1), v(0, 1), Q(10));
  CHECK(p.status == GeodesicStatus::extended_to_budget);
  CHECK(p.crossings.empty());

  p = trace_geodesic(a, v(1, -1), v(1, 1), Q(3));
  CHECK(p.status == GeodesicStatus::extended_to_budget);
  REQUIRE(p.crossings.size() == 1);
  CHECK(p.crossings[0].point == v(2, 0));
  CHECK(p.crossings[0].sign == 1);
  REQUIRE(p.segments.size() == 2);
  CHECK(p.segments[1].dir == v(0, 1));
  CHECK(*p.segments[0].length + *p.segments[1].length == 3);
  // The chart change itself: the crossing map carries the incoming velocity to the outgoing one.
  CHECK(a.cuts()[0].crossing(1).apply_vector(v(1, 1)) == v(0, 1));

  p = trace_geodesic(a, v(-1, -1), v(1, 1), Q(5));
  CHECK(p.status == GeodesicStatus::hit_node);
  REQUIRE(p.end);
  CHECK(*p.end == v(0, 0));

  p = trace_geodesic(a, v(-2, 0), v(1, 0), Q(5));
  CHECK(p.status == GeodesicStatus::hit_node);

  CHECK_THROWS_AS(trace_geodesic(a, v(1, 0), v(0, 1), Q(1)), precondition_error);
  CHECK_THROWS_AS(trace_geodesic(a, v(1, 1), v(0, 0), Q(1)), precondition_error);
  CHECK_THROWS_AS(trace_geodesic(a, v(1, 1), v(0, 1), Q(-1)), precondition_error);
}

TEST_CASE("develop") {
  ChartAtlas a(five_charts_diagram());
  CHECK(develop(a, {v(-1, -1), v(-2, -3)}) == IntegralAffineMap::identity());
  std::vector<Vec2Q> loop{v(3, -1), v(3, 3), v(-1, 3), v(-1, -1)};
  std::vector<Vec2Q> closed = loop;
  closed.push_back(loop.front());
  CHECK(develop(a, closed) == holonomy(a, loop));
  CHECK(holonomy(a, loop) == oracle::brute_force_holonomy(a.diagram(), loop));

  gen::Rng r(5);
  int checked = 0;
  for (int it = 0; it < 300; ++it) {
    std::vector<Vec2Q> p1, p2;
    for (int k = 0; k < 3; ++k) p1.push_back(r.point(-4, 4));
    p2.push_back(p1.back());
    for (int k = 0; k < 3; ++k) p2.push_back(r.point(-4, 4));
    std::vector<Vec2Q> both = p1;
    both.insert(both.end(), p2.begin() + 1, p2.end());
    try {
      IntegralAffineMap d1 = develop(a, p1), d2 = develop(a, p2);
      CHECK(develop(a, both) == compose(d2, d1));
      ++checked;
    } catch (const precondition_error&) {
    }
  }
  CHECK(checked > 200);
}

TEST_CASE("random loops match both oracles") {
  gen::Rng r(99);
  for (int it = 0; it < 100; ++it) {
    EigenrayDiagram d = gen::diagram(r, 4, -3, 3, 4);
    ChartAtlas a(d);
    std::vector<Vec2Q> loop;
    int n = static_cast<int>(r.uniform(3, 7));
    for (int k = 0; k < n; ++k) loop.push_back(r.point(-6, 6, 4));
    IntegralAffineMap h;
    try {
      h = holonomy(a, loop);
    } catch (const precondition_error&) {
      continue;
    }
    CHECK(h == oracle::brute_force_holonomy(d, loop));
  }
}

TEST_CASE("gauss-bonnet") {
  ChartAtlas a(one_node());
  GeodesicPath miss = trace_geodesic(a, v(-1, -1), v(0, 1), Q(10));
  auto rep = gauss_bonnet_check(a, v(0, 0), miss);
  CHECK(rep.passes);
  CHECK(rep.crossings_checked == 0);

  GeodesicPath once = trace_geodesic(a, v(1, -1), v(1, 1), Q(10));
  rep = gauss_bonnet_check(a, v(0, 0), once);
  CHECK(rep.passes);
  CHECK(rep.crossings_checked == 1);
  REQUIRE(rep.angles.size() == 1);
  CHECK(rep.angles[0].first + rep.angles[0].second == doctest::Approx(0.0));

  // Travelling along the cut line onto the node is tangential, not a crossing.
  GeodesicPath along = trace_geodesic(a, v(-2, 0), v(1, 0), Q(10));
  rep = gauss_bonnet_check(a, v(0, 0), along);
  CHECK(rep.tangential == 1);
  CHECK(rep.crossings_checked == 0);
  CHECK_THROWS_AS(gauss_bonnet_check(a, v(5, 5), once), precondition_error);
}

TEST_CASE("eigenrays and the five charts") {
  FiveChartsReport rep = five_charts();
  CHECK(rep.ok());
  CHECK(rep.tally() == "3 direct + 2 after slides = 5");
  int blocked = 0;
  for (const auto& p : rep.direct)
    if (!p.disjoint) {
      ++blocked;
      CHECK(p.sign_x == -1);
      CHECK(p.sign_y == -1);
      REQUIRE(p.meet);
      CHECK(*p.meet == v(0, 0));
    }
  CHECK(blocked == 1);
  for (const auto& p : rep.after_slides) CHECK(p.disjoint);
}
