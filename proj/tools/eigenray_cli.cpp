// eigenray: command-line front end for diagrams, complexes, KS elements and the local model checks.
//
// Exit codes: 0 success, 1 a check ran and failed, 2 parse error, 3 precondition failure, 4 I/O error.
// Errors are written to stderr as {"error": kind, "message": text}.

#include "eigenray/diagram.hpp"
#include "eigenray/fivecharts.hpp"
#include "eigenray/io.hpp"
#include "eigenray/ks.hpp"
#include "eigenray/local_models.hpp"
#include "eigenray/nodal.hpp"
#include "eigenray/novikov.hpp"
#include "eigenray/render.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <random>
#include <sstream>

using namespace eigenray;

namespace {

enum Exit { ok = 0, check_failed = 1, parse_fail = 2, precondition_fail = 3, io_fail = 4 };

struct Failure {
  Exit code;
  std::string kind, message;
};

int report(const Failure& f) {
  std::cerr << json{{"error", f.kind}, {"message", f.message}}.dump() << "\n";
  return f.code;
}

void emit(const json& j, const std::string& out) {
  std::string text = j.dump(2) + "\n";
  if (out.empty())
    std::cout << text;
  else
    write_text_file(out, text);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

std::vector<Q> parse_qs(const std::string& s, size_t n, const char* what) {
  std::vector<Q> v;
  try {
    for (const auto& p : split(s, ',')) v.push_back(parse_q(p));
  } catch (const std::invalid_argument& e) {
    throw parse_error(std::string(what) + ": " + e.what());
  }
  if (n && v.size() != n) throw parse_error(std::string(what) + ": expected " + std::to_string(n) + " comma-separated rationals");
  return v;
}

Vec2Q parse_point(const std::string& s, const char* what) {
  auto v = parse_qs(s, 2, what);
  return {v[0], v[1]};
}

std::vector<Vec2Q> parse_points(const std::string& s, const char* what) {
  std::vector<Vec2Q> pts;
  for (const auto& p : split(s, ';'))
    if (!p.empty()) pts.push_back(parse_point(p, what));
  return pts;
}

EigenrayDiagram load_valid_diagram(const std::string& path) {
  EigenrayDiagram d = diagram_from_json(read_json_file(path));
  ValidationReport rep = validate(d);
  if (!rep.valid) throw precondition_error("input diagram is invalid: " + rep.violations.front().detail);
  return d;
}

json validation_to_json(const ValidationReport& rep) {
  json v = json::array();
  for (const auto& x : rep.violations)
    v.push_back({{"kind", x.kind}, {"ray_a", x.ray_a}, {"ray_b", x.ray_b}, {"detail", x.detail}});
  return {{"valid", rep.valid}, {"violations", v}};
}

json seed_to_json(const EigenrayDiagram& d) {
  json a = json::array();
  for (const auto& s : seed_data(d)) a.push_back({{"dir", vec2z_to_json(s.dir)}, {"flux", q_to_json(s.flux)}});
  return a;
}

json exact_to_json(const EigenrayDiagram& d) {
  auto p = is_exact(d);
  return {{"exact", p.has_value()}, {"point", p ? vec2q_to_json(*p) : json(nullptr)}};
}

std::optional<Q> parse_budget(const std::string& s) {
  if (s.empty()) return std::nullopt;
  Q b = parse_qs(s, 1, "--budget")[0];
  if (b < 0) throw parse_error("--budget must be nonnegative");
  return b;
}

const json& need(const json& j, const char* key) {
  if (!j.contains(key)) throw parse_error(std::string("script command lacks \"") + key + "\"");
  return j.at(key);
}

// Runs every command on a working copy; the caller writes nothing unless all succeed.
json run_script(EigenrayDiagram& d, const json& script) {
  if (!script.is_object() || !script.contains("commands") || !script.at("commands").is_array())
    throw parse_error("script must be {\"commands\": [...]}");
  json results = json::array();
  size_t idx = 0;
  for (const auto& c : script.at("commands")) {
    if (!c.is_object() || !c.contains("op") || !c.at("op").is_string()) throw parse_error("command without \"op\"");
    std::string op = c.at("op");
    try {
      if (op == "slide") {
        d = nodal_slide(d, vec2q_from_json(need(c, "node")), vec2q_from_json(need(c, "to")));
      } else if (op == "remove") {
        d = node_removal(d, vec2q_from_json(need(c, "node")));
      } else if (op == "branch") {
        d = branch_move(d, vec2q_from_json(need(c, "node")));
      } else if (op == "validate") {
        ValidationReport rep = validate(d);
        if (!rep.valid) throw precondition_error("diagram is invalid: " + rep.violations.front().detail);
        results.push_back({{"op", op}, {"valid", true}});
      } else if (op == "trace") {
        ChartAtlas atlas(d);
        std::optional<Q> budget;
        if (c.contains("budget") && !c.at("budget").is_null()) budget = q_from_json(c.at("budget"));
        GeodesicPath p = trace_geodesic(atlas, vec2q_from_json(need(c, "from")), vec2q_from_json(need(c, "dir")), budget);
        results.push_back({{"op", op}, {"path", geodesic_to_json(atlas, p)}});
      } else if (op == "holonomy") {
        std::vector<Vec2Q> loop;
        for (const auto& p : need(c, "loop")) loop.push_back(vec2q_from_json(p));
        results.push_back({{"op", op}, {"map", map_to_json(holonomy(ChartAtlas(d), loop))}});
      } else if (op == "seed") {
        results.push_back({{"op", op}, {"seed", seed_to_json(d)}});
      } else if (op == "exact") {
        results.push_back({{"op", op}, {"result", exact_to_json(d)}});
      } else {
        throw parse_error("unknown script op \"" + op + "\"");
      }
    } catch (const precondition_error& e) {
      throw precondition_error("command " + std::to_string(idx) + " (" + op + "): " + e.what());
    }
    ++idx;
  }
  return results;
}

// ---- local model suites ----

json suite_hopf(std::mt19937_64& rng) {
  std::normal_distribution<double> N(0, 1);
  std::uniform_real_distribution<double> U(0, 1);
  double worst = 0;
  for (int k = 0; k < 1000; ++k) {
    C2Point p{{N(rng), N(rng)}, {N(rng), N(rng)}};
    auto h0 = hopf(p);
    for (int j = 0; j < 16; ++j) {
      auto h = hopf(circle_act(p, U(rng)));
      worst = std::max({worst, std::abs(h.first - h0.first), std::abs(h.second - h0.second)});
    }
  }
  auto a = hopf({{1, 0}, {0, 0}}), b = hopf({{1, 0}, {1, 0}});
  bool examples = std::abs(a.first) < 1e-15 && std::abs(a.second - M_PI) < 1e-15 && std::abs(b.first - 2 * M_PI) < 1e-15 &&
                  std::abs(b.second) < 1e-15;
  return {{"suite", "hopf"}, {"max_orbit_deviation", worst}, {"pass", worst < 1e-12 && examples}};
}

json suite_lagrangian(std::mt19937_64& rng, double tol) {
  std::normal_distribution<double> N(0, 1);
  SubmersionSpec re{[](Cplx w, double) { return w.real(); }, 1e-5};
  SubmersionSpec sq{[](Cplx w, double) { return std::norm(w); }, 1e-5};
  int passed = 0;
  double worst = 0;
  for (int k = 0; k < 1000; ++k) {
    C2Point p{{N(rng), N(rng)}, {N(rng), N(rng)}};
    LagrangianReport r = lagrangian_fiber_check(re, p, tol);
    worst = std::max(worst, std::abs(r.omega_on_kernel));
    if (r.passes) ++passed;
  }
  LagrangianReport drop = lagrangian_fiber_check(sq, {{1, 0}, {0, 0}}, tol);
  LagrangianReport origin = lagrangian_fiber_check(re, {{0, 0}, {0, 0}}, tol);
  bool pass = passed == 1000 && !drop.passes && drop.rank < 2 && origin.focus_focus_candidate;
  return {{"suite", "lagrangian"},
          {"passed", passed},
          {"samples", 1000},
          {"max_abs_omega", worst},
          {"rank_drop_detected", !drop.passes && drop.rank < 2},
          {"origin", origin.note},
          {"pass", pass}};
}

json suite_slide(std::mt19937_64& rng) {
  const double a = 2, b = 2, c = 1;
  std::uniform_real_distribution<double> X(-1.9, 3), Y(-1.9, 1.9);
  bool preserved = true, jac_ok = true, injective = true;
  for (int k = 0; k < 10000; ++k) {
    R3 q{X(rng), Y(rng), Y(rng)};
    R3 g = slide_map(a, b, c, q);
    if (g.y != q.y || g.z != q.z) preserved = false;
    const double h = 1e-6;
    double dx = (slide_map(a, b, c, {q.x + h, q.y, q.z}).x - slide_map(a, b, c, {q.x - h, q.y, q.z}).x) / (2 * h);
    if (!(dx > 0)) jac_ok = false;
    R3 q2{X(rng), q.y, q.z};
    if (std::abs(q2.x - q.x) > 1e-12 && std::abs(slide_map(a, b, c, q2).x - g.x) <= 1e-12) injective = false;
  }
  R3 outside = slide_map(a, b, c, {-1.5, 0.3, 0.2});
  bool identity_outside = outside.x == -1.5;
  double near = slide_map(a, b, c, {0.5, 1e-8, 0}).x, far = slide_map(a, b, c, {0.5, 1e-2, 0}).x;
  bool diverges = near > far && near > 30;
  return {{"suite", "slide"},
          {"yz_preserved", preserved},
          {"jacobian_positive", jac_ok},
          {"injective", injective},
          {"identity_outside_V", identity_outside},
          {"diverges_near_axis", diverges},
          {"pass", preserved && jac_ok && injective && identity_outside && diverges}};
}

json suite_flux() {
  FluxOptions flat;
  flat.model = FluxModel::flat;
  double f = flux_integral(0.5, 1, 2, flat).value;
  double f_err = std::abs(f - flat_annulus_area(1, 2));
  double h0 = flux_integral(0.5, 1, 2).value;
  FluxOptions twisted;
  twisted.phase = [](double s, double t) { return 0.7 * s * s + 0.3 * std::sin(t); };
  double h1 = flux_integral(0.5, 1, 2, twisted).value;
  double add = std::abs(flux_integral(0.5, 1, 1.5).value + flux_integral(0.5, 1.5, 2).value - h0);
  double exact_err = std::abs(h0 - hopf_annulus_area(0.5, 1, 2));
  bool pass = f_err < 1e-6 && std::abs(h0 - h1) < 1e-6 && add < 1e-6 && exact_err < 1e-6 &&
              flux_integral(0.5, 1, 1).value == 0;
  return {{"suite", "flux"},
          {"flat_error", f_err},
          {"hopf_error", exact_err},
          {"lift_difference", std::abs(h0 - h1)},
          {"additivity_error", add},
          {"pass", pass}};
}

json suite_probe() {
  std::vector<double> radii{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  ProbeReport p = infinite_area_probe(0.5, 0, radii);
  ProbeReport q = infinite_area_probe(0.5, 0, radii, 0.25);
  double diff = 0;
  for (size_t i = 0; i < radii.size(); ++i) diff = std::max(diff, std::abs(p.flux[i] - q.flux[i]));
  ProbeReport flat = infinite_area_probe(0.5, 3, {3, 3, 3}, std::nullopt, FluxModel::hopf);
  bool constant = flat.flux[0] == flat.flux[1] && flat.flux[1] == flat.flux[2];
  return {{"suite", "probe"},
          {"flux", p.flux},
          {"strictly_increasing", p.strictly_increasing},
          {"ray_removed_difference", diff},
          {"constant_radius_constant", constant},
          {"pass", p.strictly_increasing && p.slopes_non_decaying && diff < 1e-8 && constant}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"eigenray diagrams, nodal affine geometry, Novikov homology and KS valuations"};
  app.require_subcommand(1);
  std::string out, precision, budget, tol_s;
  unsigned long long seed_rng = 1;

  std::string in_file, script_file, from_s, dir_s, loop_s, polygon_s, suite = "all";
  std::vector<std::string> geodesics;
  int degree = 0;

  auto* validate_cmd = app.add_subcommand("validate", "check the diagram invariants");
  validate_cmd->add_option("diagram", in_file, "diagram JSON")->required();

  auto* apply_cmd = app.add_subcommand("apply", "run an operation script transactionally");
  apply_cmd->add_option("diagram", in_file, "diagram JSON")->required();
  apply_cmd->add_option("script", script_file, "script JSON")->required();
  apply_cmd->add_option("--out", out, "where to write the resulting diagram");

  auto* render_cmd = app.add_subcommand("render", "write an SVG picture");
  render_cmd->add_option("diagram", in_file, "diagram JSON")->required();
  render_cmd->add_option("--out", out, "SVG output file");
  render_cmd->add_option("--geodesic", geodesics, "overlay: x,y,dx,dy (repeatable)");
  render_cmd->add_option("--budget", budget, "affine length of overlays");

  auto* trace_cmd = app.add_subcommand("trace", "trace a geodesic through the chart atlas");
  trace_cmd->add_option("diagram", in_file, "diagram JSON")->required();
  trace_cmd->add_option("--from", from_s, "start point x,y")->required();
  trace_cmd->add_option("--dir", dir_s, "direction dx,dy")->required();
  trace_cmd->add_option("--budget", budget, "affine parameter budget");
  trace_cmd->add_option("--out", out, "output JSON");

  auto* hol_cmd = app.add_subcommand("holonomy", "holonomy of a closed polygonal loop");
  hol_cmd->add_option("diagram", in_file, "diagram JSON")->required();
  hol_cmd->add_option("--loop", loop_s, "vertices x,y;x,y;...")->required();
  hol_cmd->add_option("--out", out, "output JSON");

  auto* seed_cmd = app.add_subcommand("seed", "seed data (direction, flux) per multiset element");
  seed_cmd->add_option("diagram", in_file, "diagram JSON")->required();
  seed_cmd->add_option("--out", out, "output JSON");

  auto* exact_cmd = app.add_subcommand("exact", "common point of all ray lines, if any");
  exact_cmd->add_option("diagram", in_file, "diagram JSON")->required();
  exact_cmd->add_option("--out", out, "output JSON");

  auto* tors_cmd = app.add_subcommand("torsion", "homology and torsion of a complex or module");
  tors_cmd->add_option("input", in_file, "complex or module JSON")->required();
  tors_cmd->add_option("--precision", precision, "truncation level λ")->required();
  tors_cmd->add_option("--degree", degree, "cohomological degree");
  tors_cmd->add_option("--out", out, "output JSON");

  auto* ks_cmd = app.add_subcommand("ksval", "KS valuation of an element on a polygon");
  ks_cmd->add_option("element", in_file, "KS element JSON")->required();
  ks_cmd->add_option("--polygon", polygon_s, "vertices x,y;x,y;...")->required();
  ks_cmd->add_option("--precision", precision, "re-truncate at this precision");
  ks_cmd->add_option("--out", out, "output JSON");

  auto* local_cmd = app.add_subcommand("localcheck", "numerical checks of the local models");
  local_cmd->add_option("suite", suite, "hopf | lagrangian | slide | flux | probe | all");
  local_cmd->add_option("--tol", tol_s, "tolerance for the Lagrangian test");
  local_cmd->add_option("--seed-rng", seed_rng, "random seed");
  local_cmd->add_option("--out", out, "output JSON");

  auto* five_cmd = app.add_subcommand("fivecharts", "the five-charts example");
  five_cmd->add_option("--out", out, "output JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report({parse_fail, "parse", e.what()});
  }

  try {
    if (*validate_cmd) {
      ValidationReport rep = validate(diagram_from_json(read_json_file(in_file)));
      emit(validation_to_json(rep), out);
      return rep.valid ? ok : check_failed;
    }
    if (*apply_cmd) {
      EigenrayDiagram d = load_valid_diagram(in_file);
      json script = read_json_file(script_file);
      json results = run_script(d, script);
      if (out.empty()) {
        emit({{"diagram", diagram_to_json(d)}, {"results", results}}, "");
      } else {
        emit(diagram_to_json(d), out);
        std::cout << json{{"results", results}}.dump(2) << "\n";
      }
      return ok;
    }
    if (*render_cmd) {
      EigenrayDiagram d = load_valid_diagram(in_file);
      RenderOptions opt;
      ChartAtlas atlas(d);
      std::optional<Q> b = parse_budget(budget);
      if (!b) b = Q(10);
      for (const auto& g : geodesics) {
        auto v = parse_qs(g, 4, "--geodesic");
        opt.geodesics.push_back(trace_geodesic(atlas, {v[0], v[1]}, {v[2], v[3]}, b));
      }
      std::string svg = render_svg(d, opt);
      if (out.empty())
        std::cout << svg;
      else
        write_text_file(out, svg);
      return ok;
    }
    if (*trace_cmd) {
      EigenrayDiagram d = load_valid_diagram(in_file);
      ChartAtlas atlas(d);
      GeodesicPath p = trace_geodesic(atlas, parse_point(from_s, "--from"), parse_point(dir_s, "--dir"), parse_budget(budget));
      emit(geodesic_to_json(atlas, p), out);
      return ok;
    }
    if (*hol_cmd) {
      EigenrayDiagram d = load_valid_diagram(in_file);
      IntegralAffineMap m = holonomy(ChartAtlas(d), parse_points(loop_s, "--loop"));
      json j = map_to_json(m);
      j["trace"] = m.linear().trace().get_si();
      emit(j, out);
      return ok;
    }
    if (*seed_cmd) {
      emit(seed_to_json(load_valid_diagram(in_file)), out);
      return ok;
    }
    if (*exact_cmd) {
      emit(exact_to_json(load_valid_diagram(in_file)), out);
      return ok;
    }
    if (*tors_cmd) {
      Q lambda = parse_qs(precision, 1, "--precision")[0];
      if (lambda <= 0) throw precondition_error("--precision must be positive");
      json in = read_json_file(in_file);
      json r;
      if (in.contains("ranks")) {
        NovikovComplex c = complex_from_json(in);
        UCTReport u = uct_verify(c, lambda, degree);
        FPModule h = homology(c, degree);
        Torsion t = max_torsion(h);
        r = {{"degree", degree},
             {"lambda", q_to_json(lambda)},
             {"homology", structure_to_json(h.structure())},
             {"max_torsion", t.kind == Torsion::Kind::finite ? json(q_to_json(t.value)) : json("-inf")},
             {"truncated_homology", structure_to_json(u.middle)},
             {"uct", {{"left", structure_to_json(u.left)}, {"right", structure_to_json(u.right)}, {"exact", u.exact}}}};
      } else {
        FPModule v = module_from_json(in);
        Torsion t = max_torsion(v);
        r = {{"module", structure_to_json(v.structure())},
             {"max_torsion", t.kind == Torsion::Kind::finite ? json(q_to_json(t.value)) : json("-inf")},
             {"tor1", structure_to_json(tor1(v, lambda).structure())},
             {"lambda", q_to_json(lambda)}};
      }
      emit(r, out);
      return ok;
    }
    if (*ks_cmd) {
      KSElement x = ks_from_json(read_json_file(in_file));
      RationalPolygon p(parse_points(polygon_s, "--polygon"));
      if (!precision.empty()) x = ks_truncate(x, p, parse_qs(precision, 1, "--precision")[0]);
      auto v = ks_val(x, p);
      emit({{"val", v ? json(q_to_json(*v)) : json("+inf")}, {"element", ks_to_json(x)}}, out);
      return ok;
    }
    if (*local_cmd) {
      double tol = 1e-8;
      if (!tol_s.empty()) {
        try {
          tol = std::stod(tol_s);
        } catch (const std::exception&) {
          throw parse_error("--tol must be a number");
        }
      }
      std::mt19937_64 rng(seed_rng);
      json suites = json::array();
      bool all = suite == "all";
      if (all || suite == "hopf") suites.push_back(suite_hopf(rng));
      if (all || suite == "lagrangian") suites.push_back(suite_lagrangian(rng, tol));
      if (all || suite == "slide") suites.push_back(suite_slide(rng));
      if (all || suite == "flux") suites.push_back(suite_flux());
      if (all || suite == "probe") suites.push_back(suite_probe());
      if (suites.empty()) throw parse_error("unknown suite \"" + suite + "\"");
      bool pass = true;
      for (const auto& s : suites) pass = pass && s.at("pass").get<bool>();
      emit({{"suites", suites}, {"pass", pass}}, out);
      return pass ? ok : check_failed;
    }
    if (*five_cmd) {
      FiveChartsReport rep = five_charts();
      auto pair_json = [](const EigenrayPair& p) {
        return json{{"pair", p.name},
                    {"disjoint", p.disjoint},
                    {"intersection", p.meet ? vec2q_to_json(*p.meet) : json(nullptr)}};
      };
      json direct = json::array(), after = json::array();
      for (const auto& p : rep.direct) direct.push_back(pair_json(p));
      for (size_t i = 0; i < rep.after_slides.size(); ++i) {
        json j = pair_json(rep.after_slides[i]);
        j["diagram"] = diagram_to_json(rep.slid[i]);
        after.push_back(j);
      }
      emit({{"diagram", diagram_to_json(rep.diagram)},
            {"direct", direct},
            {"after_slides", after},
            {"tally", rep.tally()},
            {"pass", rep.ok()}},
           out);
      return rep.ok() ? ok : check_failed;
    }
  } catch (const parse_error& e) {
    return report({parse_fail, "parse", e.what()});
  } catch (const io_error& e) {
    return report({io_fail, "io", e.what()});
  } catch (const precondition_error& e) {
    return report({precondition_fail, "precondition", e.what()});
  } catch (const std::invalid_argument& e) {
    return report({precondition_fail, "precondition", e.what()});
  }
  return ok;
}
