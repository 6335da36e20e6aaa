#pragma once

#include "eigenray/diagram.hpp"
#include "eigenray/ks.hpp"
#include "eigenray/nodal.hpp"
#include "eigenray/novikov.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace eigenray {

using json = nlohmann::json;

// Malformed input (bad JSON shape, unparsable rational, wrong types).
class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Q q_from_json(const json& j);
json q_to_json(const Q& q);
Vec2Q vec2q_from_json(const json& j);
json vec2q_to_json(const Vec2Q& v);
Vec2Z vec2z_from_json(const json& j);
json vec2z_to_json(const Vec2Z& v);

json diagram_to_json(const EigenrayDiagram& d);
EigenrayDiagram diagram_from_json(const json& j);

json map_to_json(const IntegralAffineMap& m);
IntegralAffineMap map_from_json(const json& j);

json geodesic_to_json(const ChartAtlas& atlas, const GeodesicPath& p);

json element_to_json(const NovikovElement& x);
NovikovElement element_from_json(const json& j);
json matrix_to_json(const NMatrix& m);
NMatrix matrix_from_json(const json& j, size_t rows, size_t cols);
json complex_to_json(const NovikovComplex& c);
NovikovComplex complex_from_json(const json& j);
json ray_to_json(const OneRay& r);
OneRay ray_from_json(const json& j);
json structure_to_json(const ModuleStructure& s);
// Either {"presentation": [[...]], "generators": n} or {"torsion": [...], "free": n}.
FPModule module_from_json(const json& j);

json ks_to_json(const KSElement& x);
KSElement ks_from_json(const json& j);
RationalPolygon polygon_from_json(const json& j);
json polygon_to_json(const RationalPolygon& p);

json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// Thrown by the file helpers.
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace eigenray
