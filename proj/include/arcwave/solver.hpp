#pragma once

#include <functional>
#include <string>
#include <vector>

#include "arcwave/operators.hpp"

namespace arcwave {

struct IncidentField {
  enum class Kind { PlaneWave, PointSource };
  enum class Mode { P, S };

  Kind kind = Kind::PlaneWave;
  Eigen::Vector2d direction{0.0, 1.0};
  Eigen::Vector2d source{0.0, 0.0};
  Mode mode = Mode::P;                    // elastic plane waves
  Eigen::Vector2d polarization{1.0, 0.0};  // elastic point-source force

  static IncidentField plane_wave(const Eigen::Vector2d& d, Mode mode = Mode::P);
  static IncidentField point_source(const Eigen::Vector2d& x, const Eigen::Vector2d& force = {1.0, 0.0});

  void validate() const;
  // Field value (scalar fields in entry 0) and gradient grad(a,b) = du_a/dx_b (scalar: row 0).
  Vec2c value(const Pde& pde, const Vec2c& x) const;
  Mat2c gradient(const Pde& pde, const Vec2c& x) const;
};

struct RhsOptions {
  int quadrature = 0;  // 0 selects 2 (N+1) + 64 nodes
};

// Dirichlet: pairings of -u_inc o r_i with That_m/w (T_plain). Neumann: pairings of
// -(B u_inc) o r_i with w Uhat_m (U_plain), where B u = nu . grad u or the traction with the
// unnormalized normal nu = perp(r_i') (so the data carry the |r_i'| factor of the W blocks).
std::vector<SpectralDensity> build_rhs(const std::vector<Arc>& arcs, const Pde& pde, const IncidentField& inc,
                                       Problem problem, int N, const RhsOptions& opt = {});

struct ScatteringDiagnostics {
  double condition_estimate = 0.0;
  double residual = 0.0;
  double rho_hat = 0.0;
  std::vector<std::string> warnings;
};

struct ScatteringSolution {
  std::vector<Arc> arcs;
  Pde pde;
  Problem problem = Problem::Dirichlet;
  int N = 0;
  std::vector<SpectralDensity> densities;
  ScatteringDiagnostics diagnostics;
};

// Rejects vanishing tangents and touching arcs (GeometryError) for real geometries.
void check_geometry(const std::vector<Arc>& arcs);

ScatteringSolution solve_with_rhs(const std::vector<Arc>& arcs, const Pde& pde, Problem problem, int N,
                                  const std::vector<SpectralDensity>& rhs, const AssemblyOptions& opt = {});
ScatteringSolution solve_scattering(const std::vector<Arc>& arcs, const Pde& pde, const IncidentField& inc,
                                    Problem problem, int N, const AssemblyOptions& opt = {});

// Single-layer (Dirichlet) or double-layer (Neumann) potential at x, scalar results in entry 0.
// Points closer than 1e-6 to an arc are refused.
Vec2c eval_potential(const ScatteringSolution& sol, const Vec2c& x);
double distance_to_arcs(const std::vector<Arc>& arcs, const Vec2c& x);

// int theta(j, tau, r_j(tau), r_j'(tau)) . u_j(tau) dtau summed over arcs (bilinear).
using Probe = std::function<Vec2c(int arc, double tau, const Vec2c& r, const Vec2c& dr)>;
cd linear_functional(const ScatteringSolution& sol, const Probe& probe, int quadrature = 0);

// Far-field pattern of the scalar scattered field in direction xhat.
cd far_field(const ScatteringSolution& sol, const Eigen::Vector2d& xhat);
Probe far_field_probe(const Pde& pde, Problem problem, const Eigen::Vector2d& xhat);
Probe potential_probe(const Pde& pde, Problem problem, const Vec2c& x, int component = 0);

}  // namespace arcwave
