#include "eigenray/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace eigenray {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw parse_error(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

long long int_from_json(const json& j) {
  if (!j.is_number_integer()) throw parse_error("expected an integer, got " + j.dump());
  return j.get<long long>();
}

const json& array_of(const json& j, size_t n, const char* what) {
  if (!j.is_array() || (n && j.size() != n)) throw parse_error(std::string("expected ") + what + ", got " + j.dump());
  return j;
}

}  // namespace

Q q_from_json(const json& j) {
  try {
    if (j.is_string()) return parse_q(j.get<std::string>());
    if (j.is_number_integer()) return Q(Z(std::to_string(j.get<long long>()), 10));
  } catch (const std::invalid_argument& e) {
    throw parse_error(e.what());
  }
  throw parse_error("expected a rational string \"p/q\", got " + j.dump());
}

json q_to_json(const Q& q) {
  Q c = q;
  c.canonicalize();
  return c.get_str();
}

Vec2Q vec2q_from_json(const json& j) {
  array_of(j, 2, "a pair of rationals");
  return {q_from_json(j[0]), q_from_json(j[1])};
}

json vec2q_to_json(const Vec2Q& v) { return json::array({q_to_json(v.x), q_to_json(v.y)}); }

Vec2Z vec2z_from_json(const json& j) {
  array_of(j, 2, "a pair of integers");
  return {Z(std::to_string(int_from_json(j[0])), 10), Z(std::to_string(int_from_json(j[1])), 10)};
}

json vec2z_to_json(const Vec2Z& v) { return json::array({v.x.get_si(), v.y.get_si()}); }

json diagram_to_json(const EigenrayDiagram& d) {
  json rays = json::array();
  for (const auto& r : d.rays()) {
    json nodes = json::array();
    for (const auto& n : r.nodes) nodes.push_back({{"t", q_to_json(r.param(n.position))}, {"mult", n.multiplicity.get_si()}});
    rays.push_back({{"base", vec2q_to_json(r.base)}, {"dir", vec2z_to_json(r.dir)}, {"nodes", nodes}});
  }
  return {{"rays", rays}};
}

EigenrayDiagram diagram_from_json(const json& j) {
  std::vector<Ray> rays;
  for (const auto& jr : array_of(field(j, "rays"), 0, "an array of rays")) {
    Ray r;
    r.base = vec2q_from_json(field(jr, "base"));
    r.dir = vec2z_from_json(field(jr, "dir"));
    for (const auto& jn : array_of(field(jr, "nodes"), 0, "an array of nodes")) {
      Q t = q_from_json(field(jn, "t"));
      r.nodes.push_back(Node{r.base + r.dir.q() * t, Z(std::to_string(int_from_json(field(jn, "mult"))), 10)});
    }
    rays.push_back(std::move(r));
  }
  return EigenrayDiagram(std::move(rays));
}

json map_to_json(const IntegralAffineMap& m) {
  const Mat2Z& L = m.linear();
  return {{"linear", json::array({json::array({L.a.get_si(), L.b.get_si()}), json::array({L.c.get_si(), L.d.get_si()})})},
          {"translate", vec2q_to_json(m.translate())}};
}

IntegralAffineMap map_from_json(const json& j) {
  const json& L = array_of(field(j, "linear"), 2, "a 2x2 matrix");
  Vec2Z r0 = vec2z_from_json(L[0]), r1 = vec2z_from_json(L[1]);
  try {
    return IntegralAffineMap(Mat2Z{r0.x, r0.y, r1.x, r1.y}, vec2q_from_json(field(j, "translate")));
  } catch (const precondition_error& e) {
    throw parse_error(e.what());
  }
}

json geodesic_to_json(const ChartAtlas& atlas, const GeodesicPath& p) {
  json segs = json::array(), cr = json::array();
  for (const auto& s : p.segments)
    segs.push_back({{"start", vec2q_to_json(s.start)},
                    {"dir", vec2q_to_json(s.dir)},
                    {"length", s.length ? json(q_to_json(*s.length)) : json(nullptr)}});
  for (const auto& c : p.crossings) {
    const Cut& cut = atlas.cuts()[c.cut];
    cr.push_back({{"node", vec2q_to_json(cut.node)}, {"point", vec2q_to_json(c.point)}, {"sign", c.sign}});
  }
  return {{"status", to_string(p.status)},
          {"segments", segs},
          {"crossings", cr},
          {"end", p.end ? vec2q_to_json(*p.end) : json(nullptr)}};
}

json element_to_json(const NovikovElement& x) {
  json a = json::array();
  for (const auto& [e, c] : x.terms()) a.push_back(json::array({q_to_json(e), q_to_json(c)}));
  return a;
}

NovikovElement element_from_json(const json& j) {
  std::vector<NovikovElement::Term> terms;
  for (const auto& t : array_of(j, 0, "a list of [exp, coeff] terms")) {
    array_of(t, 2, "an [exp, coeff] term");
    terms.push_back({q_from_json(t[0]), q_from_json(t[1])});
  }
  return NovikovElement::from_terms(std::move(terms));
}

json matrix_to_json(const NMatrix& m) {
  json rows = json::array();
  for (size_t i = 0; i < m.rows; ++i) {
    json row = json::array();
    for (size_t k = 0; k < m.cols; ++k) row.push_back(element_to_json(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

NMatrix matrix_from_json(const json& j, size_t rows, size_t cols) {
  array_of(j, 0, "a matrix");
  if (j.size() != rows) throw parse_error("matrix has " + std::to_string(j.size()) + " rows, expected " + std::to_string(rows));
  NMatrix m(rows, cols);
  for (size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw parse_error("matrix row has the wrong length");
    for (size_t k = 0; k < cols; ++k) m(i, k) = element_from_json(j[i][k]);
  }
  return m;
}

json complex_to_json(const NovikovComplex& c) {
  json ds = json::array();
  for (int n = c.lowest(); n < c.highest(); ++n) ds.push_back(matrix_to_json(c.differential(n)));
  return {{"lowest", c.lowest()}, {"ranks", c.ranks()}, {"d", ds}};
}

NovikovComplex complex_from_json(const json& j) {
  int lowest = j.contains("lowest") ? static_cast<int>(int_from_json(j.at("lowest"))) : 0;
  std::vector<size_t> ranks;
  for (const auto& r : array_of(field(j, "ranks"), 0, "a list of ranks")) {
    long long v = int_from_json(r);
    if (v < 0) throw parse_error("negative rank");
    ranks.push_back(static_cast<size_t>(v));
  }
  const json& jd = array_of(field(j, "d"), 0, "a list of differentials");
  if (jd.size() + 1 != std::max<size_t>(ranks.size(), 1)) throw parse_error("wrong number of differentials");
  std::vector<NMatrix> ds;
  for (size_t k = 0; k < jd.size(); ++k) ds.push_back(matrix_from_json(jd[k], ranks[k + 1], ranks[k]));
  try {
    return NovikovComplex(lowest, ranks, ds);
  } catch (const precondition_error& e) {
    throw parse_error(e.what());
  }
}

json ray_to_json(const OneRay& r) {
  json cs = json::array(), ms = json::array();
  for (const auto& c : r.complexes) cs.push_back(complex_to_json(c));
  for (const auto& m : r.maps) {
    json f = json::array();
    for (const auto& x : m.f) f.push_back(matrix_to_json(x));
    ms.push_back(f);
  }
  return {{"complexes", cs}, {"maps", ms}};
}

OneRay ray_from_json(const json& j) {
  OneRay r;
  for (const auto& c : array_of(field(j, "complexes"), 0, "a list of complexes")) r.complexes.push_back(complex_from_json(c));
  const json& ms = array_of(field(j, "maps"), 0, "a list of chain maps");
  if (ms.size() + 1 != std::max<size_t>(r.complexes.size(), 1)) throw parse_error("a ray of k complexes needs k-1 maps");
  for (size_t i = 0; i < ms.size(); ++i) {
    const auto& a = r.complexes[i];
    const auto& b = r.complexes[i + 1];
    array_of(ms[i], a.ranks().size(), "one matrix per degree");
    ChainMap f;
    for (size_t k = 0; k < a.ranks().size(); ++k) {
      int deg = a.lowest() + static_cast<int>(k);
      f.f.push_back(matrix_from_json(ms[i][k], b.rank(deg), a.rank(deg)));
    }
    r.maps.push_back(std::move(f));
  }
  return r;
}

json structure_to_json(const ModuleStructure& s) {
  json t = json::array();
  for (const auto& a : s.torsion) t.push_back(q_to_json(a));
  return {{"torsion", t}, {"free", s.free_rank}};
}

FPModule module_from_json(const json& j) {
  if (j.contains("presentation")) {
    const json& p = array_of(j.at("presentation"), 0, "a presentation matrix");
    size_t cols = j.contains("generators") ? static_cast<size_t>(int_from_json(j.at("generators")))
                                           : (p.empty() ? 0 : p[0].size());
    return FPModule{matrix_from_json(p, p.size(), cols)};
  }
  ModuleStructure s;
  for (const auto& a : array_of(field(j, "torsion"), 0, "a list of exponents")) {
    Q q = q_from_json(a);
    if (q <= 0) throw parse_error("torsion exponents must be positive");
    s.torsion.push_back(q);
  }
  std::sort(s.torsion.begin(), s.torsion.end());
  if (j.contains("free")) {
    long long f = int_from_json(j.at("free"));
    if (f < 0) throw parse_error("negative free rank");
    s.free_rank = static_cast<size_t>(f);
  }
  return FPModule::from_structure(s);
}

json ks_to_json(const KSElement& x) {
  json terms = json::array();
  for (const auto& [n, a] : x.terms) terms.push_back({{"char", vec2z_to_json(n)}, {"coeff", element_to_json(a)}});
  return {{"precision", q_to_json(x.precision)}, {"terms", terms}};
}

KSElement ks_from_json(const json& j) {
  KSElement x;
  if (j.contains("precision")) x.precision = q_from_json(j.at("precision"));
  for (const auto& t : array_of(field(j, "terms"), 0, "a list of terms"))
    x = x + KSElement::monomial(vec2z_from_json(field(t, "char")), element_from_json(field(t, "coeff")), x.precision);
  return x;
}

RationalPolygon polygon_from_json(const json& j) {
  std::vector<Vec2Q> v;
  for (const auto& p : array_of(j, 0, "a list of vertices")) v.push_back(vec2q_from_json(p));
  return RationalPolygon(std::move(v));
}

json polygon_to_json(const RationalPolygon& p) {
  json a = json::array();
  for (const auto& v : p.vertices()) a.push_back(vec2q_to_json(v));
  return a;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json read_json_file(const std::string& path) {
  std::string text = read_text_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw parse_error(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot write " + path);
  out << text;
  if (!out) throw io_error("write failed: " + path);
}

}  // namespace eigenray
