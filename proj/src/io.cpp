#include "arcwave/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace arcwave {

namespace fs = std::filesystem;

namespace {

Json complex_array(const VectorXcd& v) {
  Json a = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back({v[k].real(), v[k].imag()});
  return a;
}

VectorXcd complex_vector(const Json& a) {
  if (!a.is_array()) throw ConfigError("expected an array of coefficients");
  VectorXcd v(a.size());
  for (size_t k = 0; k < a.size(); ++k) {
    const Json& e = a[k];
    if (e.is_number())
      v[k] = e.get<double>();
    else if (e.is_array() && e.size() == 2)
      v[k] = cd(e[0].get<double>(), e[1].get<double>());
    else
      throw ConfigError("coefficients must be numbers or [re, im] pairs");
  }
  return v;
}

Eigen::Vector2d vec2(const Json& a, const char* what) {
  if (!a.is_array() || a.size() != 2) throw ConfigError(std::string(what) + " must be a 2-vector");
  return {a[0].get<double>(), a[1].get<double>()};
}

Json vec2_json(const Eigen::Vector2d& v) { return Json::array({v(0), v(1)}); }

template <typename T>
T value_or(const Json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

Eigen::Vector2d unit(const Eigen::Vector2d& d) {
  const double n = d.norm();
  if (!(n > 0.0)) throw ConfigError("direction must be nonzero");
  return std::abs(n - 1.0) > 1e-14 ? Eigen::Vector2d(d / n) : d;
}

// Rethrows library and JSON errors raised while reading a config as ConfigError.
template <typename F>
auto config_guard(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(e.what());
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
}

std::ofstream open_out(const std::string& path) {
  fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << std::setprecision(17);
  return out;
}

}  // namespace

Json real_to_json(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return v;
}

double real_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw ConfigError("expected a real number");
}

Json arc_to_json(const Arc& arc) {
  Json j;
  j["x_coeffs"] = complex_array(arc.x);
  j["y_coeffs"] = complex_array(arc.y);
  j["m"] = arc.m;
  j["alpha"] = arc.alpha;
  return j;
}

Arc arc_from_json(const Json& j) {
  return config_guard([&] {
    if (!j.is_object()) throw ConfigError("arc must be an object");
    const int m = value_or(j, "m", 3);
    const double alpha = value_or(j, "alpha", 0.5);
    Arc arc;
    const std::string type = value_or<std::string>(j, "type", "coefficients");
    if (type == "segment") {
      arc = segment_arc(vec2(require(j, "a"), "a"), vec2(require(j, "b"), "b"));
    } else if (type == "circular") {
      arc = circular_arc(vec2(require(j, "center"), "center"), require(j, "radius").get<double>(),
                         require(j, "theta_mid").get<double>(), require(j, "half_angle").get<double>(),
                         value_or(j, "degree", 40));
    } else if (type == "coefficients") {
      arc = Arc(complex_vector(require(j, "x_coeffs")), complex_vector(require(j, "y_coeffs")));
    } else {
      throw ConfigError("unknown arc type: " + type);
    }
    arc.m = m;
    arc.alpha = alpha;
    arc.validate();
    return arc;
  });
}

Json family_to_json(const ParametricArcFamily& f) {
  Json j;
  j["nominal"] = Json::array();
  for (const Arc& a : f.nominal) j["nominal"].push_back(arc_to_json(a));
  j["perturbations"] = Json::array();
  for (const auto& row : f.perturbations) {
    Json r = Json::array();
    for (const Arc& a : row) r.push_back(arc_to_json(a));
    j["perturbations"].push_back(r);
  }
  j["p"] = f.p;
  j["b"] = f.b;
  return j;
}

ParametricArcFamily family_from_json(const Json& j) {
  return config_guard([&] {
    ParametricArcFamily f;
    for (const Json& a : require(j, "nominal")) f.nominal.push_back(arc_from_json(a));
    if (j.contains("perturbations")) {
      for (const Json& row : j.at("perturbations")) {
        std::vector<Arc> r;
        for (const Json& a : row) r.push_back(arc_from_json(a));
        f.perturbations.push_back(r);
      }
    }
    if (f.perturbations.size() > f.nominal.size()) throw ConfigError("more perturbation rows than arcs");
    f.perturbations.resize(f.nominal.size());
    f.p = value_or(j, "p", 0.5);
    if (!(f.p > 0.0 && f.p < 1.0)) throw ConfigError("family p must lie in (0, 1)");
    if (j.contains("b") && !j.at("b").empty())
      f.b = j.at("b").get<std::vector<std::vector<double>>>();
    else
      f.fill_b();
    return f;
  });
}

Json pde_to_json(const Pde& pde) {
  Json j;
  switch (pde.kind) {
    case PdeKind::Laplace:
      j["kind"] = "laplace";
      break;
    case PdeKind::Helmholtz:
      j["kind"] = "helmholtz";
      j["kappa"] = pde.helmholtz.kappa;
      break;
    case PdeKind::Elastic:
      j["kind"] = "elastic";
      j["alpha"] = pde.elastic.alpha;
      j["beta"] = pde.elastic.beta;
      j["omega"] = pde.elastic.omega;
      break;
  }
  return j;
}

Pde pde_from_json(const Json& j) {
  return config_guard([&] {
    const std::string kind = require(j, "kind").get<std::string>();
    Pde p;
    if (kind == "laplace")
      p = Pde::laplace();
    else if (kind == "helmholtz")
      p = Pde::make_helmholtz(require(j, "kappa").get<double>());
    else if (kind == "elastic")
      p = Pde::make_elastic(require(j, "alpha").get<double>(), require(j, "beta").get<double>(),
                            require(j, "omega").get<double>());
    else
      throw ConfigError("unknown pde kind: " + kind);
    return p;
  });
}

Json incident_to_json(const IncidentField& inc) {
  Json j;
  if (inc.kind == IncidentField::Kind::PlaneWave) {
    j["type"] = "plane_wave";
    j["direction"] = vec2_json(inc.direction);
    j["mode"] = inc.mode == IncidentField::Mode::P ? "p" : "s";
  } else {
    j["type"] = "point_source";
    j["position"] = vec2_json(inc.source);
    j["force"] = vec2_json(inc.polarization);
  }
  return j;
}

IncidentField incident_from_json(const Json& j) {
  return config_guard([&] {
    const std::string type = require(j, "type").get<std::string>();
    if (type == "plane_wave") {
      const std::string mode = value_or<std::string>(j, "mode", "p");
      if (mode != "p" && mode != "s") throw ConfigError("incident mode must be \"p\" or \"s\"");
      return IncidentField::plane_wave(unit(vec2(require(j, "direction"), "direction")),
                                       mode == "p" ? IncidentField::Mode::P : IncidentField::Mode::S);
    }
    if (type == "point_source") {
      Eigen::Vector2d force = j.contains("force") ? vec2(j.at("force"), "force") : Eigen::Vector2d(1.0, 0.0);
      return IncidentField::point_source(vec2(require(j, "position"), "position"), force);
    }
    throw ConfigError("unknown incident type: " + type);
  });
}

Functional FunctionalSpec::make() const {
  if (kind == Kind::FarField) return far_field_functional(direction);
  return potential_functional(point.cast<cd>(), component);
}

namespace {

Json functional_to_json(const FunctionalSpec& f) {
  Json j;
  if (f.kind == FunctionalSpec::Kind::FarField) {
    j["type"] = "far_field";
    j["direction"] = vec2_json(f.direction);
  } else {
    j["type"] = "potential";
    j["point"] = vec2_json(f.point);
    j["component"] = f.component;
  }
  return j;
}

FunctionalSpec functional_from_json(const Json& j) {
  FunctionalSpec f;
  const std::string type = require(j, "type").get<std::string>();
  if (type == "far_field") {
    f.kind = FunctionalSpec::Kind::FarField;
    f.direction = unit(vec2(require(j, "direction"), "direction"));
  } else if (type == "potential") {
    f.kind = FunctionalSpec::Kind::Potential;
    f.point = vec2(require(j, "point"), "point");
    f.component = value_or(j, "component", 0);
    if (f.component < 0 || f.component > 1) throw ConfigError("functional component must be 0 or 1");
  } else {
    throw ConfigError("unknown functional type: " + type);
  }
  return f;
}

Json range_json(double a, double b, int n) { return Json::array({a, b, n}); }

void read_range(const Json& j, double& a, double& b, int& n) {
  if (!j.is_array() || j.size() != 3) throw ConfigError("grid ranges are [start, stop, count]");
  a = j[0].get<double>();
  b = j[1].get<double>();
  n = j[2].get<int>();
  if (n < 1 || n > 4096) throw ConfigError("grid counts must lie in [1, 4096]");
}

}  // namespace

void ExperimentConfig::validate() const {
  if (N < 8 || N > 512) throw ConfigError("N must lie in [8, 512]");
  if (quadrature < 0) throw ConfigError("quadrature must be nonnegative");
  if (arcs.empty()) throw ConfigError("geometry has no arcs");
  if (sweep.nodes < 2 || sweep.nodes > 1025) throw ConfigError("sweep nodes must lie in [2, 1025]");
  if (family)
    for (int k : sweep.indices)
      if (k < 0 || k >= family->parameter_count()) throw ConfigError("sweep index out of range: " + std::to_string(k));
  config_guard([&] {
    pde.validate();
    incident.validate();
    return 0;
  });
}

ForwardModel ExperimentConfig::model() const {
  ForwardModel m;
  m.pde = pde;
  m.incident = incident;
  m.problem = problem;
  m.N = N;
  m.functional = sweep.functional.make();
  m.assembly.quadrature = quadrature;
  return m;
}

ExperimentConfig config_from_json(const Json& j, const std::string& base_dir) {
  return config_guard([&] {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    const int version = value_or(j, "schema_version", kSchemaVersion);
    if (version != kSchemaVersion) throw ConfigError("unsupported schema_version " + std::to_string(version));
    ExperimentConfig c;
    c.pde = pde_from_json(require(j, "pde"));
    c.problem = problem_from_name(value_or<std::string>(j, "problem", "dirichlet"));
    const Json& g = require(j, "geometry");
    if (g.contains("family")) {
      fs::path p(g.at("family").get<std::string>());
      if (p.is_relative()) p = fs::path(base_dir) / p;
      c.family_path = fs::weakly_canonical(p).string();
      if (!fs::exists(c.family_path)) throw ConfigError("family file not found: " + c.family_path);
      c.family = family_from_json(read_json_file(c.family_path));
      c.arcs = c.family->nominal;
    } else {
      for (const Json& a : require(g, "arcs")) c.arcs.push_back(arc_from_json(a));
    }
    c.incident = incident_from_json(require(j, "incident"));
    c.N = value_or(j, "N", 32);
    c.quadrature = value_or(j, "quadrature", 0);
    c.seed = value_or<std::uint64_t>(j, "seed", 1);
    if (j.contains("outputs")) {
      const Json& o = j.at("outputs");
      c.outputs.solution = value_or<std::string>(o, "solution", c.outputs.solution);
      if (o.contains("field_grid")) {
        const Json& f = o.at("field_grid");
        c.outputs.field_grid = require(f, "path").get<std::string>();
        if (f.contains("x")) read_range(f.at("x"), c.outputs.grid.x0, c.outputs.grid.x1, c.outputs.grid.nx);
        if (f.contains("y")) read_range(f.at("y"), c.outputs.grid.y0, c.outputs.grid.y1, c.outputs.grid.ny);
      }
      if (o.contains("far_field")) {
        const Json& f = o.at("far_field");
        c.outputs.far_field = require(f, "path").get<std::string>();
        c.outputs.far_field_angles = value_or(f, "angles", 64);
        if (c.outputs.far_field_angles < 1) throw ConfigError("far-field angle count must be positive");
      }
      c.outputs.certificate = value_or<std::string>(o, "certificate", c.outputs.certificate);
      c.outputs.sweep = value_or<std::string>(o, "sweep", c.outputs.sweep);
      c.outputs.coefficients = value_or<std::string>(o, "coefficients", c.outputs.coefficients);
    }
    if (j.contains("sweep")) {
      const Json& s = j.at("sweep");
      if (s.contains("indices")) c.sweep.indices = s.at("indices").get<std::vector<int>>();
      c.sweep.nodes = value_or(s, "nodes", c.sweep.nodes);
      if (s.contains("functional")) c.sweep.functional = functional_from_json(s.at("functional"));
      if (s.contains("epsilon_scan")) c.sweep.epsilon_scan = s.at("epsilon_scan").get<std::vector<double>>();
    }
    c.validate();
    return c;
  });
}

Json config_to_json(const ExperimentConfig& c) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["pde"] = pde_to_json(c.pde);
  j["problem"] = problem_name(c.problem);
  Json g;
  if (c.family) {
    g["family"] = c.family_path;
  } else {
    g["arcs"] = Json::array();
    for (const Arc& a : c.arcs) g["arcs"].push_back(arc_to_json(a));
  }
  j["geometry"] = g;
  j["incident"] = incident_to_json(c.incident);
  j["N"] = c.N;
  j["quadrature"] = c.quadrature;
  j["seed"] = c.seed;
  Json o;
  o["solution"] = c.outputs.solution;
  if (c.outputs.field_grid) {
    const GridSpec& gr = c.outputs.grid;
    o["field_grid"] = {{"path", *c.outputs.field_grid},
                       {"x", range_json(gr.x0, gr.x1, gr.nx)},
                       {"y", range_json(gr.y0, gr.y1, gr.ny)}};
  }
  if (c.outputs.far_field) o["far_field"] = {{"path", *c.outputs.far_field}, {"angles", c.outputs.far_field_angles}};
  o["certificate"] = c.outputs.certificate;
  o["sweep"] = c.outputs.sweep;
  o["coefficients"] = c.outputs.coefficients;
  j["outputs"] = o;
  Json s;
  s["indices"] = c.sweep.indices;
  s["nodes"] = c.sweep.nodes;
  s["functional"] = functional_to_json(c.sweep.functional);
  s["epsilon_scan"] = c.sweep.epsilon_scan;
  j["sweep"] = s;
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out = open_out(path);
  out << j.dump(2) << "\n";
}

ExperimentConfig load_config(const std::string& path) {
  if (!fs::exists(path)) throw ConfigError("config file not found: " + path);
  fs::path base = fs::path(path).parent_path();
  return config_from_json(read_json_file(path), base.empty() ? "." : base.string());
}

Json solution_to_json(const ScatteringSolution& sol) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["pde"] = pde_to_json(sol.pde);
  j["problem"] = problem_name(sol.problem);
  j["N"] = sol.N;
  j["arcs"] = Json::array();
  for (const Arc& a : sol.arcs) j["arcs"].push_back(arc_to_json(a));
  j["densities"] = Json::array();
  for (const SpectralDensity& d : sol.densities)
    j["densities"].push_back({{"basis", basis_name(d.basis)}, {"components", d.components}, {"coeffs", complex_array(d.coeffs)}});
  Json diag;
  diag["condition_estimate"] = real_to_json(sol.diagnostics.condition_estimate);
  diag["residual"] = real_to_json(sol.diagnostics.residual);
  diag["rho_hat"] = real_to_json(sol.diagnostics.rho_hat);
  diag["warnings"] = sol.diagnostics.warnings;
  j["diagnostics"] = diag;
  return j;
}

Json certificate_to_json(const Certificate& cert) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["indices"] = cert.indices;
  j["b"] = cert.b;
  Json rho = Json::array(), res = Json::array(), nodes = Json::array();
  for (const auto& s : cert.sweeps) {
    rho.push_back(real_to_json(s.rho_hat));
    res.push_back(real_to_json(s.residual));
    nodes.push_back(s.n_nodes);
  }
  j["rho_hat"] = rho;
  j["residuals"] = res;
  j["nodes"] = nodes;
  j["index_pass"] = cert.index_pass;
  j["monotone"] = cert.monotone;
  j["epsilon_scan"] = cert.epsilon_scan;
  j["admissible"] = cert.admissible;
  j["epsilon_min"] = real_to_json(cert.epsilon_min);
  j["pass"] = cert.pass;
  j["messages"] = cert.messages;
  return j;
}

Json admissibility_to_json(const AdmissibilityReport& rep) {
  Json j;
  j["delta_self"] = rep.delta_self;
  Json cross = Json::array();
  for (const auto& p : rep.delta_cross) cross.push_back({{"i", p.i}, {"j", p.j}, {"delta", p.delta}});
  j["delta_cross"] = cross;
  j["safety"] = kAdmissibilitySafety;
  j["zeta"] = real_to_json(rep.zeta);
  j["eta"] = real_to_json(rep.eta);
  j["summable"] = rep.summable;
  j["pass"] = rep.pass;
  j["messages"] = rep.messages;
  return j;
}

void write_sweep_csv(const std::string& path, const std::vector<SweepResult>& sweeps) {
  std::ofstream out = open_out(path);
  out << "index,node,y,re,im\n";
  for (const auto& s : sweeps)
    for (int k = 0; k < s.n_nodes; ++k)
      out << s.index << "," << k << "," << s.nodes[k] << "," << s.values[k].real() << "," << s.values[k].imag() << "\n";
}

void write_coefficients_csv(const std::string& path, const std::vector<SweepResult>& sweeps) {
  std::ofstream out = open_out(path);
  out << "index,k,abs\n";
  for (const auto& s : sweeps)
    for (Eigen::Index k = 0; k < s.coefficients.size(); ++k)
      out << s.index << "," << k << "," << std::abs(s.coefficients[k]) << "\n";
}

void write_field_grid_csv(const std::string& path, const ScatteringSolution& sol, const GridSpec& g) {
  std::ofstream out = open_out(path);
  out << "x,y,re_u0,im_u0,re_u1,im_u1\n";
  for (int b = 0; b < g.ny; ++b)
    for (int a = 0; a < g.nx; ++a) {
      const double x = g.nx > 1 ? g.x0 + (g.x1 - g.x0) * a / (g.nx - 1) : g.x0;
      const double y = g.ny > 1 ? g.y0 + (g.y1 - g.y0) * b / (g.ny - 1) : g.y0;
      out << x << "," << y;
      try {
        Vec2c u = eval_potential(sol, Vec2c(x, y));
        out << "," << u(0).real() << "," << u(0).imag() << "," << u(1).real() << "," << u(1).imag() << "\n";
      } catch (const InvalidArgument&) {
        out << ",nan,nan,nan,nan\n";
      }
    }
}

void write_far_field_csv(const std::string& path, const ScatteringSolution& sol, int angles) {
  std::ofstream out = open_out(path);
  out << "angle,re,im\n";
  for (int k = 0; k < angles; ++k) {
    const double th = 2.0 * kPi * k / angles;
    cd f = far_field(sol, Eigen::Vector2d(std::cos(th), std::sin(th)));
    out << th << "," << f.real() << "," << f.imag() << "\n";
  }
}

}  // namespace arcwave
