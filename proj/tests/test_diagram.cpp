#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eigenray/diagram.hpp"
#include "eigenray/fivecharts.hpp"
#include "gen.hpp"

#include <algorithm>

using namespace eigenray;

namespace {

Vec2Q v(long x, long y) { return {Q(x), Q(y)}; }

Ray ray(Vec2Q base, Vec2Z dir, std::vector<std::pair<Vec2Q, long>> nodes) {
  Ray r{base, dir, {}};
  for (auto& [p, m] : nodes) r.nodes.push_back({p, Z(m)});
  return r;
}

std::vector<Z> totals(const EigenrayDiagram& d) {
  std::vector<Z> t;
  for (const auto& r : d.rays()) t.push_back(r.total_multiplicity());
  std::sort(t.begin(), t.end());
  return t;
}

std::vector<std::pair<Vec2Z, Q>> sorted_seeds(const EigenrayDiagram& d) {
  std::vector<std::pair<Vec2Z, Q>> out;
  for (const auto& s : seed_data(d)) out.emplace_back(s.dir, s.flux);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("validate") {
  CHECK(validate(EigenrayDiagram()).valid);
  CHECK(validate(five_charts_diagram()).valid);
  EigenrayDiagram bad({ray(v(0, 0), {1, 0}, {{v(0, 0), 1}}), ray(v(1, 0), {1, 0}, {{v(1, 0), 1}})});
  auto rep = validate(bad);
  CHECK_FALSE(rep.valid);
  REQUIRE(!rep.violations.empty());
  CHECK(rep.violations[0].kind == "overlap");
  CHECK(rep.violations[0].ray_a != rep.violations[0].ray_b);

  EigenrayDiagram crossing({ray(v(0, 0), {1, 1}, {{v(0, 0), 1}}), ray(v(2, 0), {-1, 1}, {{v(2, 0), 1}})});
  CHECK_FALSE(validate(crossing).valid);
  CHECK_FALSE(validate(EigenrayDiagram({ray(v(0, 0), {2, 0}, {{v(0, 0), 1}})})).valid);
  CHECK_FALSE(validate(EigenrayDiagram({ray(v(0, 0), {1, 0}, {{v(0, 0), 0}})})).valid);
  CHECK_FALSE(validate(EigenrayDiagram({ray(v(0, 0), {1, 0}, {{v(0, 0), 1}, {v(1, 1), 1}})})).valid);
}

TEST_CASE("total multiplicity") {
  EigenrayDiagram fc = five_charts_diagram();
  int rx = fc.ray_of_node(v(1, 0));
  REQUIRE(rx >= 0);
  CHECK(total_multiplicity(fc, fc.rays()[rx]) == 1);
  EigenrayDiagram two({ray(v(0, 0), {1, 0}, {{v(0, 0), 2}, {v(3, 0), 3}})});
  CHECK(total_multiplicity(two, two.rays()[0]) == 5);
  EigenrayDiagram one({ray(v(0, 0), {0, 1}, {{v(0, 0), 7}})});
  CHECK(total_multiplicity(one, one.rays()[0]) == 7);
  CHECK_THROWS(total_multiplicity(one, ray(v(5, 5), {1, 0}, {{v(5, 5), 1}})));
}

TEST_CASE("node removal, all four cases") {
  EigenrayDiagram d = node_removal(five_charts_diagram(), v(1, 0));
  REQUIRE(d.rays().size() == 1);
  CHECK(d.rays()[0].base == v(0, 1));
  CHECK(d.rays()[0].dir == Vec2Z(0, 1));

  EigenrayDiagram two({ray(v(0, 0), {1, 0}, {{v(0, 0), 1}, {v(2, 0), 1}})});
  d = node_removal(two, v(0, 0));
  REQUIRE(d.rays().size() == 1);
  CHECK(d.rays()[0].base == v(2, 0));
  CHECK(d.rays()[0].nodes.size() == 1);

  d = node_removal(two, v(2, 0));
  REQUIRE(d.rays().size() == 1);
  CHECK(d.rays()[0].base == v(0, 0));
  CHECK(d.rays()[0].nodes.size() == 1);

  EigenrayDiagram three({ray(v(0, 0), {1, 0}, {{v(0, 0), 3}})});
  d = node_removal(three, v(0, 0));
  REQUIRE(d.rays().size() == 1);
  CHECK(d.rays()[0].nodes[0].multiplicity == 2);

  CHECK_THROWS_AS(node_removal(three, v(1, 0)), precondition_error);
}

TEST_CASE("nodal slide") {
  EigenrayDiagram fc = five_charts_diagram();
  EigenrayDiagram right = nodal_slide(fc, v(1, 0), v(-1, 0));
  EigenrayDiagram expect({ray(v(-1, 0), {1, 0}, {{v(-1, 0), 1}}), ray(v(0, 1), {0, 1}, {{v(0, 1), 1}})});
  CHECK(right == expect);
  CHECK(validate(right).valid);
  CHECK(nodal_slide(fc, v(1, 0), v(1, 0)) == fc);

  EigenrayDiagram two({ray(v(0, 0), {1, 0}, {{v(0, 0), 1}, {v(2, 0), 1}})});
  EigenrayDiagram merged = nodal_slide(two, v(0, 0), v(2, 0));
  REQUIRE(merged.nodes().size() == 1);
  CHECK(merged.nodes()[0].position == v(2, 0));
  CHECK(merged.nodes()[0].multiplicity == 2);

  CHECK_THROWS_AS(nodal_slide(fc, v(1, 0), v(1, 1)), precondition_error);
  // After the first slide, moving (0,1) below the axis makes the two rays cross at the origin.
  CHECK_THROWS_AS(nodal_slide(right, v(0, 1), v(0, -1)), precondition_error);
}

TEST_CASE("mutability") {
  EigenrayDiagram fc = five_charts_diagram();
  CHECK(is_mutable(fc, v(1, 0)));
  CHECK(is_mutable(fc, v(0, 1)));
  EigenrayDiagram crosses({ray(v(0, 0), {1, 0}, {{v(0, 0), 1}}), ray(v(-2, -1), {0, 1}, {{v(-2, -1), 1}})});
  CHECK(validate(crosses).valid);
  CHECK_FALSE(is_mutable(crosses, v(0, 0)));
  EigenrayDiagram two({ray(v(0, 0), {1, 0}, {{v(0, 0), 1}, {v(2, 0), 1}})});
  CHECK_FALSE(is_mutable(two, v(0, 0)));
  CHECK_THROWS_AS(is_mutable(fc, v(3, 3)), precondition_error);
}

TEST_CASE("branch move") {
  EigenrayDiagram fc = five_charts_diagram();
  EigenrayDiagram b = branch_move(fc, v(1, 0));
  EigenrayDiagram expect({ray(v(1, 0), {-1, 0}, {{v(1, 0), 1}}), ray(v(1, 1), {1, 1}, {{v(1, 1), 1}})});
  CHECK(b == expect);

  EigenrayDiagram one({ray(v(0, 0), {1, 0}, {{v(0, 0), 1}})});
  CHECK(branch_move(one, v(0, 0)) == EigenrayDiagram({ray(v(0, 0), {-1, 0}, {{v(0, 0), 1}})}));

  IntegralAffineMap s = PLShear(v(1, 0), {1, 0}, 1).global();
  CHECK(s.apply(v(0, 1)) == v(1, 1));
  CHECK(branch_move(b, v(1, 0)) == apply_map(fc, s));

  EigenrayDiagram two({ray(v(0, 0), {1, 0}, {{v(0, 0), 1}, {v(2, 0), 1}})});
  CHECK_THROWS_AS(branch_move(two, v(0, 0)), precondition_error);
}

TEST_CASE("exactness") {
  auto b0 = is_exact(five_charts_diagram());
  REQUIRE(b0);
  CHECK(*b0 == v(0, 0));
  REQUIRE(is_exact(EigenrayDiagram()));
  CHECK(*is_exact(EigenrayDiagram()) == v(0, 0));
  EigenrayDiagram par({ray(v(0, 0), {1, 0}, {{v(0, 0), 1}}), ray(v(0, 1), {1, 0}, {{v(0, 1), 1}})});
  CHECK_FALSE(is_exact(par));
}

TEST_CASE("seed data") {
  CHECK(sorted_seeds(five_charts_diagram()) == std::vector<std::pair<Vec2Z, Q>>{{{0, 1}, 0}, {{1, 0}, 0}});
  EigenrayDiagram one({ray(v(0, 1), {1, 0}, {{v(0, 1), 1}})});
  CHECK(seed_data(one) == std::vector<SeedPair>{{{1, 0}, -1}});
  CHECK(seed_data(EigenrayDiagram()).empty());
}

TEST_CASE("affine equivalence") {
  EigenrayDiagram fc = five_charts_diagram();
  auto e = affine_equivalent(fc, fc);
  REQUIRE(e.status == Equivalence::Status::found);
  CHECK(apply_map(fc, *e.map) == fc);

  IntegralAffineMap rot(Mat2Z{0, -1, 1, 0}, {});
  e = affine_equivalent(fc, apply_map(fc, rot));
  REQUIRE(e.status == Equivalence::Status::found);
  CHECK(apply_map(fc, *e.map) == apply_map(fc, rot));

  EigenrayDiagram bb = branch_move(branch_move(fc, v(1, 0)), v(1, 0));
  e = affine_equivalent(fc, bb);
  REQUIRE(e.status == Equivalence::Status::found);
  CHECK(apply_map(fc, *e.map) == bb);

  EigenrayDiagram one({ray(v(0, 0), {1, 0}, {{v(0, 0), 1}})});
  CHECK(affine_equivalent(fc, one).status == Equivalence::Status::none);
}

TEST_CASE("properties on random diagrams") {
  gen::Rng r(2024);
  int moves = 0;
  for (int it = 0; it < 500; ++it) {
    EigenrayDiagram d = gen::diagram(r);
    REQUIRE(validate(d).valid);
    auto ms = d.multiset();

    // Removal then reinsertion of the same l^n.
    for (const auto& el : ms) {
      EigenrayDiagram back = node_insertion(node_removal(d, el.base), SubRay{el.base, el.dir, 1});
      CHECK(back == d);
    }

    // Sliding a base node forward along its ray leaves the seed data unchanged.
    for (const auto& ray : d.rays()) {
      if (ray.nodes.size() != 1) continue;
      EigenrayDiagram slid = nodal_slide(d, ray.base, ray.base + ray.dir.q() * Q(1, 2));
      CHECK(sorted_seeds(slid) == sorted_seeds(d));
    }

    // Exactness and vanishing fluxes after recentring.
    auto b0 = is_exact(d);
    if (b0) {
      EigenrayDiagram c = apply_map(d, IntegralAffineMap::translation(-*b0));
      for (const auto& s : seed_data(c)) CHECK(s.flux == 0);
    }

    for (const auto& n : d.nodes()) {
      if (!is_mutable(d, n.position)) continue;
      ++moves;
      EigenrayDiagram b = branch_move(d, n.position);
      CHECK(validate(b).valid);
      CHECK(b.multiset().size() == ms.size());
      CHECK(totals(b) == totals(d));
      CHECK(is_exact(b).has_value() == b0.has_value());
      int ri = d.ray_of_node(n.position);
      IntegralAffineMap s = PLShear(n.position, d.rays()[ri].dir, n.multiplicity).global();
      EigenrayDiagram bb = branch_move(b, n.position);
      CHECK(bb == apply_map(d, s));
    }
  }
  CHECK(moves > 300);
}
