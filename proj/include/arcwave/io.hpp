#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "arcwave/holomorphy.hpp"

namespace arcwave {

using Json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// {"x_coeffs": [[re,im],...], "y_coeffs": [...], "m": int, "alpha": float}
Json arc_to_json(const Arc& arc);
// Also accepts {"type": "segment", "a": [x,y], "b": [x,y]} and
// {"type": "circular", "center": [x,y], "radius", "theta_mid", "half_angle", "degree"}.
Arc arc_from_json(const Json& j);

// {"nominal": [arc...], "perturbations": [[arc...] per arc], "p": float, "b": [[...]] (optional)}
Json family_to_json(const ParametricArcFamily& family);
ParametricArcFamily family_from_json(const Json& j);

Json pde_to_json(const Pde& pde);
Pde pde_from_json(const Json& j);
Json incident_to_json(const IncidentField& inc);
IncidentField incident_from_json(const Json& j);

struct FunctionalSpec {
  enum class Kind { FarField, Potential };
  Kind kind = Kind::FarField;
  Eigen::Vector2d direction{0.0, 1.0};  // far field
  Eigen::Vector2d point{0.0, 2.0};      // potential
  int component = 0;
  Functional make() const;
};

struct GridSpec {
  double x0 = -2.0, x1 = 2.0, y0 = -2.0, y1 = 2.0;
  int nx = 41, ny = 41;
};

struct OutputSpec {
  std::string solution = "solution.json";
  std::optional<std::string> field_grid;  // CSV
  GridSpec grid;
  std::optional<std::string> far_field;  // CSV
  int far_field_angles = 64;
  std::string certificate = "certificate.json";
  std::string sweep = "sweep.csv";
  std::string coefficients = "coefficients.csv";
};

struct SweepSpec {
  std::vector<int> indices{0};
  int nodes = 33;
  FunctionalSpec functional;
  std::vector<double> epsilon_scan = default_epsilon_scan();
};

struct ExperimentConfig {
  Pde pde;
  Problem problem = Problem::Dirichlet;
  std::vector<Arc> arcs;                       // explicit arcs, or the family nominal arcs
  std::optional<ParametricArcFamily> family;   // loaded from family_path
  std::string family_path;                     // as resolved when loading
  IncidentField incident;
  int N = 32;
  int quadrature = 0;
  OutputSpec outputs;
  SweepSpec sweep;
  std::uint64_t seed = 1;

  void validate() const;
  ForwardModel model() const;
};

// Relative family paths are resolved against base_dir. Throws ConfigError.
ExperimentConfig config_from_json(const Json& j, const std::string& base_dir = ".");
Json config_to_json(const ExperimentConfig& c);
ExperimentConfig load_config(const std::string& path);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

Json solution_to_json(const ScatteringSolution& sol);
Json certificate_to_json(const Certificate& cert);
Json admissibility_to_json(const AdmissibilityReport& rep);

// CSV writers: "index,node,y,re,im"; "index,k,abs"; "x,y,re_u0,im_u0,re_u1,im_u1"; "angle,re,im".
void write_sweep_csv(const std::string& path, const std::vector<SweepResult>& sweeps);
void write_coefficients_csv(const std::string& path, const std::vector<SweepResult>& sweeps);
void write_field_grid_csv(const std::string& path, const ScatteringSolution& sol, const GridSpec& grid);
void write_far_field_csv(const std::string& path, const ScatteringSolution& sol, int angles);

// Reals that may be infinite are written as numbers or the string "inf".
Json real_to_json(double v);
double real_from_json(const Json& j);

}  // namespace arcwave
