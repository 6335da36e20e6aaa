#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eigenray/fivecharts.hpp"
#include "eigenray/io.hpp"
#include "gen.hpp"

#include <filesystem>

using namespace eigenray;

TEST_CASE("rationals") {
  CHECK(q_from_json("3/6") == Q(1, 2));
  CHECK(q_from_json(-4) == -4);
  CHECK(q_to_json(Q(-2, 4)) == "-1/2");
  CHECK_THROWS_AS(q_from_json("1/0"), parse_error);
  CHECK_THROWS_AS(q_from_json("x"), parse_error);
  CHECK_THROWS_AS(q_from_json(0.5), parse_error);
}

TEST_CASE("diagram round trip") {
  json five = diagram_to_json(five_charts_diagram());
  CHECK(five.dump() ==
        R"({"rays":[{"base":["0","1"],"dir":[0,1],"nodes":[{"mult":1,"t":"0"}]},{"base":["1","0"],"dir":[1,0],"nodes":[{"mult":1,"t":"0"}]}]})");
  gen::Rng r(1);
  for (int i = 0; i < 200; ++i) {
    EigenrayDiagram d = gen::diagram(r);
    json j = diagram_to_json(d);
    EigenrayDiagram back = diagram_from_json(j);
    CHECK(back == d);
    CHECK(diagram_to_json(back) == j);
  }
  CHECK_THROWS_AS(diagram_from_json(json::object()), parse_error);
  CHECK_THROWS_AS(diagram_from_json(json::parse(R"({"rays":[{"base":["0","0"],"dir":[1],"nodes":[]}]})")), parse_error);
  CHECK_THROWS_AS(diagram_from_json(json::parse(R"({"rays":[{"base":["0","0"],"dir":[1,0],"nodes":[{"t":"0","mult":"1"}]}]})")),
                  parse_error);
}

TEST_CASE("maps, complexes and modules") {
  gen::Rng r(2);
  for (int i = 0; i < 50; ++i) {
    IntegralAffineMap m = r.affine();
    CHECK(map_from_json(map_to_json(m)) == m);
  }
  CHECK_THROWS_AS(map_from_json(json::parse(R"({"linear":[[2,0],[0,1]],"translate":["0","0"]})")), parse_error);

  for (int i = 0; i < 50; ++i) {
    gen::KnownComplex kc = gen::known_complex(r);
    json j = complex_to_json(kc.c);
    NovikovComplex back = complex_from_json(j);
    CHECK(complex_to_json(back) == j);
  }
  // d^2 != 0 is refused at parse time.
  json bad = json::parse(R"({"lowest":0,"ranks":[1,1,1],"d":[[[[["0","1"]]]],[[[["0","1"]]]]]})");
  CHECK_THROWS_AS(complex_from_json(bad), parse_error);

  ChainMap id{{NMatrix::identity(1), NMatrix::identity(1)}};
  NovikovComplex c(0, {1, 1}, {NMatrix::diagonal({NovikovElement::T(1)}, 1, 1)});
  OneRay ray{{c, c}, {id}};
  json rj = ray_to_json(ray);
  CHECK(ray_to_json(ray_from_json(rj)) == rj);

  FPModule v = module_from_json(json::parse(R"({"torsion":["1/2","2"],"free":1})"));
  CHECK(v.structure() == ModuleStructure{{Q(1, 2), Q(2)}, 1});
  CHECK(structure_to_json(v.structure()) == json::parse(R"({"torsion":["1/2","2"],"free":1})"));
  FPModule p = module_from_json(json::parse(R"({"presentation":[[[["1","1"]],[]]],"generators":2})"));
  CHECK(p.structure() == ModuleStructure{{Q(1)}, 1});
  CHECK_THROWS_AS(module_from_json(json::parse(R"({"torsion":["0"]})")), parse_error);
}

TEST_CASE("KS elements and polygons") {
  json j = json::parse(R"({"precision":"10","terms":[{"char":[1,0],"coeff":[["1/2","3"]]},{"char":[0,-1],"coeff":[["0","1"]]}]})");
  KSElement x = ks_from_json(j);
  CHECK(x.precision == 10);
  CHECK(x.term_count() == 2);
  CHECK(ks_from_json(ks_to_json(x)) == x);
  RationalPolygon poly = polygon_from_json(json::parse(R"([["0","0"],["1","0"],["1","1"],["0","1"]])"));
  CHECK(polygon_from_json(polygon_to_json(poly)).vertices() == poly.vertices());
}

TEST_CASE("files") {
  auto dir = std::filesystem::temp_directory_path() / "eigenray_test_io";
  std::filesystem::create_directories(dir);
  std::string f = (dir / "d.json").string();
  write_text_file(f, diagram_to_json(five_charts_diagram()).dump());
  CHECK(diagram_from_json(read_json_file(f)) == five_charts_diagram());
  write_text_file(f, "{not json");
  CHECK_THROWS_AS(read_json_file(f), parse_error);
  CHECK_THROWS_AS(read_text_file((dir / "missing.json").string()), io_error);
  CHECK_THROWS_AS(write_text_file((dir / "no" / "such" / "x").string(), "x"), io_error);
  std::filesystem::remove_all(dir);
}
