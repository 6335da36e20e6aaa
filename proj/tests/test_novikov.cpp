#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eigenray/novikov.hpp"
#include "gen.hpp"
#include "oracles.hpp"

using namespace eigenray;

namespace {

NovikovElement T(const Q& a) { return NovikovElement::T(a); }

NMatrix mat(std::vector<std::vector<NovikovElement>> rows) {
  NMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (size_t i = 0; i < m.rows; ++i)
    for (size_t j = 0; j < m.cols; ++j) m(i, j) = rows[i][j];
  return m;
}

ModuleStructure ms(std::vector<Q> t, size_t free = 0) { return {std::move(t), free}; }

// 0 -> Λ -T^a-> Λ -> 0 in degrees 0, 1.
NovikovComplex two_term(const Q& a) { return NovikovComplex(0, {1, 1}, {mat({{T(a)}})}); }

Subquotient cyclic(const NovikovElement& gen, const Q& lambda) {
  return Subquotient{1, mat({{gen, T(lambda)}}), mat({{T(lambda)}})};
}

}  // namespace

TEST_CASE("element arithmetic") {
  NovikovElement a = NovikovElement::from_terms({{Q(1), Q(2)}, {Q(0), Q(1)}, {Q(1), Q(-2)}});
  CHECK(a == NovikovElement(1));
  NovikovElement x = NovikovElement(1) + T(1);
  NovikovElement y = NovikovElement(1) - T(1);
  CHECK(x * y == NovikovElement(1) - T(2));
  CHECK(*(T(Q(1, 3)) + T(2)).valuation() == Q(1, 3));
  CHECK_FALSE(NovikovElement().valuation());
  CHECK((x.unit_inverse(5) * x).truncate(5) == NovikovElement(1));
  CHECK(x.shift(2) == T(2) + T(3));
}

TEST_CASE("smith exponents") {
  CHECK(smith_exponents(mat({{T(1), NovikovElement()}, {NovikovElement(), T(2)}})) == std::vector<Q>{1, 2});
  NMatrix m = mat({{T(1), T(1)}, {T(1), T(2)}});
  // det = T^3 - T^2 has valuation 2 and every entry has valuation 1, so the divisors are T, T.
  CHECK(oracle::minor_exponents(m) == std::vector<Q>{1, 1});
  CHECK(smith_exponents(m) == std::vector<Q>{1, 1});
  CHECK(smith_exponents(NMatrix(3, 2)).empty());

  SmithForm f = smith_form(m);
  NMatrix dm = f.U * m * f.V;
  for (size_t i = 0; i < dm.rows; ++i)
    for (size_t j = 0; j < dm.cols; ++j) {
      if (i != j) CHECK(dm(i, j).is_zero());
      else CHECK(*dm(i, j).valuation() == f.exponents[i]);
    }
}

TEST_CASE("smith exponents match the minor oracle") {
  gen::Rng r(31);
  for (int it = 0; it < 150; ++it) {
    size_t rows = r.uniform(1, 3), cols = r.uniform(1, 3);
    NMatrix m(rows, cols);
    for (auto& x : m.a)
      if (r.uniform(0, 2)) x = gen::element(r);
    auto ex = smith_exponents(m);
    CHECK(ex == oracle::minor_exponents(m));
    auto u = gen::unimodular(r, rows), w = gen::unimodular(r, cols);
    CHECK(smith_exponents(u.m * m * w.m) == ex);
  }
}

TEST_CASE("max torsion and tor1") {
  CHECK(max_torsion(FPModule::from_structure(ms({2}, 1))).value == 2);
  CHECK(max_torsion(FPModule::from_structure(ms({}, 3))).kind == Torsion::Kind::minus_infinity);
  Torsion t = max_torsion(FPModule::from_structure(ms({Q(1, 3)})));
  CHECK(t.kind == Torsion::Kind::finite);
  CHECK(t.value == Q(1, 3));

  FPModule v = FPModule::from_structure(ms({1}));
  CHECK(tor1(v, Q(1, 2)).structure() == ms({Q(1, 2)}));
  CHECK(tor1(FPModule::from_structure(ms({}, 2)), 3).structure() == ms({}));
  CHECK(tor1(v, 1).structure() == ms({1}));
  CHECK(tor1(v, 4).structure() == ms({1}));
  CHECK_THROWS_AS(tor1(v, 0), precondition_error);
}

TEST_CASE("tor1 stabilises past the maximal torsion") {
  gen::Rng r(8);
  for (int it = 0; it < 40; ++it) {
    ModuleStructure s;
    for (long k = r.uniform(0, 3); k > 0; --k) s.torsion.push_back(r.rational(1, 3, 3));
    std::sort(s.torsion.begin(), s.torsion.end());
    s.free_rank = r.uniform(0, 2);
    FPModule v = FPModule::from_structure(s);
    Q tau = s.torsion.empty() ? Q(1) : s.torsion.back();
    Q lam = tau + r.rational(0, 2, 3), lam2 = lam + r.rational(1, 2, 3);
    CHECK(tor1(v, lam2).structure() == tor1(v, lam).structure());
    // ker T^λ = ker T^λ' as submodules once λ >= τ.
    InverseSystem sys = tor1_system(v, {lam2, lam});
    CHECK(same_submodule(sys.modules[0].K, sys.modules[1].K));
  }
}

TEST_CASE("homology") {
  NovikovComplex c = two_term(1);
  CHECK(homology(c, 0).structure() == ms({}));
  CHECK(homology(c, 1).structure() == ms({1}));
  CHECK(truncated_homology(c, 2, 0).structure() == ms({1}));
  CHECK(truncated_homology(c, 2, 1).structure() == ms({1}));

  NovikovComplex z(0, {2, 3}, {NMatrix(3, 2)});
  CHECK(truncated_homology(z, 3, 0).structure() == ms({3, 3}));
  CHECK(truncated_homology(z, 3, 1).structure() == ms({3, 3, 3}));

  // λ below the valuation of the differential: everything is free over Λ/T^λ.
  CHECK(truncated_homology(two_term(2), 1, 0).structure() == ms({1}));
  CHECK(truncated_homology(two_term(2), 1, 1).structure() == ms({1}));

  CHECK_THROWS_AS(NovikovComplex(0, {1, 1, 1}, {mat({{T(0)}}), mat({{T(0)}})}), precondition_error);
}

TEST_CASE("universal coefficients") {
  UCTReport u = uct_verify(two_term(1), 2, 0);
  CHECK(u.left == ms({}));
  CHECK(u.middle == ms({1}));
  CHECK(u.right == ms({1}));
  CHECK(u.exact);

  NovikovComplex z(0, {2, 1}, {NMatrix(1, 2)});
  u = uct_verify(z, 1, 0);
  CHECK(u.right == ms({}));
  CHECK(u.left == u.middle);
  CHECK(u.exact);

  gen::Rng r(17);
  for (int it = 0; it < 40; ++it) {
    gen::KnownComplex kc = gen::known_complex(r);
    Q lam = r.rational(1, 3, 3);
    for (int i = kc.c.lowest(); i <= kc.c.highest(); ++i) {
      CHECK(homology(kc.c, i).structure() == gen::known_homology(kc, i));
      CHECK(truncated_homology(kc.c, lam, i).structure() == gen::known_truncated(kc, i, lam));
      CHECK(uct_verify(kc.c, lam, i).exact);
    }
  }
}

TEST_CASE("mittag-leffler") {
  std::vector<Q> lams{3, 2, 1};
  InverseSystem trunc, half, constant;
  for (size_t j = 0; j < lams.size(); ++j) {
    trunc.lambdas.push_back(lams[j]);
    half.lambdas.push_back(lams[j]);
    constant.lambdas.push_back(lams[j]);
    trunc.modules.push_back(cyclic(NovikovElement(1), lams[j]));
    half.modules.push_back(cyclic(T(lams[j] / 2), lams[j]));
    constant.modules.push_back(cyclic(T(Q(1, 2)), 1));
    if (j) {
      trunc.maps.push_back(NMatrix::identity(1));
      half.maps.push_back(NMatrix::identity(1));
      constant.maps.push_back(NMatrix::identity(1));
    }
  }
  CHECK(mittag_leffler(trunc));
  CHECK_FALSE(mittag_leffler(half));
  for (size_t j = 0; j + 1 < lams.size(); ++j) CHECK_FALSE(is_surjective(half.modules[j], half.modules[j + 1], half.maps[j]));
  CHECK(mittag_leffler(constant));
  CHECK(mittag_leffler(constant, MLMode::ImageStable));

  // Truncations of 0 -> Λ -T-> Λ -> 0 in degree 0: surjectivity fails, images still stabilise at zero.
  InverseSystem sys = truncated_system(two_term(1), {Q(5), Q(4), Q(3)}, 0);
  CHECK_FALSE(mittag_leffler(sys));
  CHECK(mittag_leffler(sys, MLMode::ImageStable));
  CHECK(stable_image(sys, 2).structure() == ms({}));

  InverseSystem bad = half;
  bad.maps[0] = mat({{T(-1)}});
  CHECK_THROWS_AS(mittag_leffler(bad), precondition_error);
  CHECK_THROWS_AS(mittag_leffler(InverseSystem{{Q(2), Q(1)}, {trunc.modules[0], trunc.modules[1]}, {trunc.maps[0]}},
                                 MLMode::ImageStable),
                  precondition_error);
}

TEST_CASE("telescopes") {
  NovikovComplex c = two_term(Q(1, 2));
  OneRay single{{c}, {}};
  NovikovComplex tel = telescope(single);
  for (int i = 0; i <= 1; ++i) CHECK(homology(tel, i).structure() == homology(c, i).structure());

  ChainMap id{{NMatrix::identity(1), NMatrix::identity(1)}};
  OneRay ids{{c, c, c}, {id, id}};
  tel = telescope(ids);
  CHECK(tel.lowest() == -1);
  for (Q lam : {Q(1, 4), Q(1), Q(3)})
    for (int i = 0; i <= 1; ++i)
      CHECK(truncated_homology(tel, lam, i).structure() == truncated_homology(c, lam, i).structure());
  CHECK(homology(tel, -1).structure() == ms({}));

  CHECK(telescope(OneRay{}).ranks().empty());
  ChainMap wrong{{mat({{T(1)}}), NMatrix::identity(1)}};
  CHECK_FALSE(is_chain_map(c, c, wrong));
  CHECK_THROWS_AS(telescope(OneRay{{c, c}, {wrong}}), precondition_error);
}

TEST_CASE("relative versus reduced") {
  std::vector<Q> lams{5, 4, 3};
  ChainMap id{{NMatrix::identity(1), NMatrix::identity(1)}};
  NovikovComplex c = two_term(Q(1, 2));
  RelVsRedReport rep = rel_vs_red(OneRay{{c, c, c}, {id, id}}, 1, lams);
  CHECK(rep.relative == ms({Q(1, 2)}));
  CHECK(rep.ml_prev_degree);
  CHECK(rep.stable_image_matches);
  CHECK(rep.comparison_iso);

  // Torsion 1, 2, 3 along the ray, with maps T^{a_{i+1}-a_i} in degree 1.
  OneRay grow;
  for (int a = 1; a <= 3; ++a) grow.complexes.push_back(two_term(a));
  for (int a = 1; a < 3; ++a) grow.maps.push_back(ChainMap{{NMatrix::identity(1), mat({{T(1)}})}});
  rep = rel_vs_red(grow, 1, lams);
  CHECK(rep.relative == ms({3}));
  CHECK_FALSE(rep.ml_prev_degree);
  CHECK_FALSE(rep.comparison_iso);

  NovikovComplex zero(0, {0, 0}, {NMatrix(0, 0)});
  ChainMap zid{{NMatrix(0, 0), NMatrix(0, 0)}};
  rep = rel_vs_red(OneRay{{zero, zero}, {zid}}, 1, lams);
  CHECK(rep.comparison_iso);
  CHECK_THROWS_AS(rel_vs_red(OneRay{{c}, {}}, 1, {Q(2), Q(1)}), precondition_error);
}

TEST_CASE("surjective tor map forces a surjective truncation map") {
  gen::Rng r(23);
  int premises = 0;
  for (int it = 0; it < 60; ++it) {
    gen::KnownComplex kc = gen::known_complex(r);
    Q lam = r.rational(1, 3, 3), lam2 = lam + r.rational(1, 2, 3);
    for (int i = kc.c.lowest(); i < kc.c.highest(); ++i) {
      InverseSystem tor = tor1_system(homology(kc.c, i + 1), {lam2, lam});
      if (!mittag_leffler(tor)) continue;
      ++premises;
      CHECK(mittag_leffler(truncated_system(kc.c, {lam2, lam}, i)));
    }
  }
  CHECK(premises > 10);
}
