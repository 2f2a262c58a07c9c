#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "arcwave/solver.hpp"

namespace arcwave {

// Scalar observable of a solution; must be holomorphic in the arc coefficients (use bilinear forms).
using Functional = std::function<cd(const ScatteringSolution&)>;

Functional far_field_functional(const Eigen::Vector2d& xhat);
Functional potential_functional(const Vec2c& x, int component = 0);

// Everything needed to map an arc configuration to the value of the observable.
struct ForwardModel {
  Pde pde;
  IncidentField incident;
  Problem problem = Problem::Dirichlet;
  int N = 32;
  Functional functional;
  AssemblyOptions assembly;

  cd evaluate(const std::vector<Arc>& arcs) const;
};

struct SweepResult {
  int index = 0;
  int n_nodes = 0;
  std::vector<double> nodes;  // Chebyshev-Lobatto points cos(pi k / (n-1))
  std::vector<cd> values;
  VectorXcd coefficients;  // classical Chebyshev coefficients of the interpolant
  double rho_hat = 0.0;
  double residual = 0.0;
};

// Interpolation coefficients from values at Chebyshev-Lobatto points.
VectorXcd lobatto_coefficients(const std::vector<cd>& values);
std::vector<double> lobatto_nodes(int n);

// F(y e_index) at n_nodes Lobatto points, with all other parameters zero.
SweepResult sweep_parameter(const ParametricArcFamily& family, const ForwardModel& model, int index, int n_nodes);

struct DerivativeCheck {
  std::vector<double> steps;            // strictly decreasing
  std::vector<cd> complex_step;         // (F(r + i h v) - F(r - i h v)) / (2 i h)
  std::vector<cd> central;              // (F(r + h v) - F(r - h v)) / (2 h)
  double max_relative_gap = 0.0;        // max_h |complex_step - central| / |complex_step|
  double step_spread = 0.0;             // max_h |complex_step(h) - complex_step(h_last)| / |complex_step(h_last)|
  // Complex-linearity: derivative along i v against i times the derivative along v, both
  // from Richardson-extrapolated one-sided differences with step cr_step.
  double cr_step = 1e-3;
  cd derivative_v = 0.0;
  cd derivative_iv = 0.0;
  double cr_gap = 0.0;
};

// Perturbs arc `arc_index` of `arcs` along `direction`.
DerivativeCheck complex_step_check(const std::vector<Arc>& arcs, int arc_index, const Arc& direction,
                                   const ForwardModel& model, const std::vector<double>& steps);

// Richardson-extrapolated one-sided difference (fourth order) of F along a complex direction.
cd directional_derivative(const std::vector<Arc>& arcs, int arc_index, const Arc& direction, cd scale,
                          const ForwardModel& model, double h);

// True iff sum_j (rho_j - 1) b_j <= epsilon. Throws when rho_j <= 1 for some b_j > 0.
bool admissible_polyradius(const std::vector<double>& b, double epsilon, const std::vector<double>& rho);

struct TubeBound {
  double nominal_norm = 0.0;  // real arcs (delta = 0)
  double max_norm = 0.0;      // over nominal and all samples
  int samples = 0;
  std::vector<double> sample_norms;
};

// Energy-scaled spectral norm of the self block of each complex sample r_k + u delta v
// (u uniform in (0,1), v a random direction of unit surrogate norm): V with weights (1+n)^{1/2}
// on both sides for Dirichlet, W with (1+n)^{-1/2} for Neumann. Kernel branch failures are
// reported as GeometryError (tube violation).
TubeBound tube_operator_bound(const std::vector<Arc>& k_samples, double delta, const Pde& pde, Problem problem, int N,
                              int n_samples, std::uint64_t seed, int perturbation_degree = 8);

struct Certificate {
  std::vector<int> indices;
  std::vector<double> b;
  std::vector<SweepResult> sweeps;
  std::vector<bool> index_pass;  // residual < max_residual and rho_hat > 1
  bool monotone = false;         // rho_hat nondecreasing along `indices`
  std::vector<double> epsilon_scan;
  std::vector<bool> admissible;  // admissible_polyradius(b, eps, rho_hat) per scanned eps
  double epsilon_min = 0.0;      // sum (rho_hat_j - 1) b_j
  bool pass = false;
  std::vector<std::string> messages;
};

constexpr double kMaxFitResidual = 0.1;

std::vector<double> default_epsilon_scan();

// Gate on check_family (GeometryError when it fails), then one sweep per index.
Certificate bpe_certificate(const ParametricArcFamily& family, const ForwardModel& model,
                            const std::vector<int>& indices, int n_nodes,
                            const std::vector<double>& epsilon_scan = default_epsilon_scan());

// Flat-arc bump family r_y = (t, sum_j y_j c_j (1 - t^2) t^j) on one arc with
// c_j = scale 2^{-j} / |(1 - t^2) t^j|_{m,alpha}, j = 0 .. terms-1.
ParametricArcFamily flat_bump_family(int terms, double scale = 0.1, int m = 3, double alpha = 0.5);

}  // namespace arcwave
