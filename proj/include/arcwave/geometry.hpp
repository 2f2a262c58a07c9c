#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "arcwave/types.hpp"

namespace arcwave {

// Open arc r(t) = (x(t), y(t)), t in [-1,1], with x and y given by classical Chebyshev
// coefficients. Complex coefficients describe complexified arcs. (m, alpha) is the
// smoothness class claimed for the parametrization.
struct Arc {
  VectorXcd x;
  VectorXcd y;
  int m = 3;
  double alpha = 0.5;

  Arc() = default;
  Arc(VectorXcd xc, VectorXcd yc, int m_ = 3, double alpha_ = 0.5);

  int degree() const { return static_cast<int>(std::max(x.size(), y.size())) - 1; }
  bool is_real(double tol = 0.0) const;
  void validate() const;
};

Arc segment_arc(const Eigen::Vector2d& a, const Eigen::Vector2d& b);
// center + radius (cos(theta_mid + half_angle t), sin(theta_mid + half_angle t)).
Arc circular_arc(const Eigen::Vector2d& center, double radius, double theta_mid, double half_angle,
                 int degree = 40);
// Chebyshev interpolant of a complex parametrization at degree + 1 first-kind nodes.
Arc arc_from_function(const std::function<Vec2c(double)>& r, int degree, int m = 3, double alpha = 0.5);

// a + s b, coefficientwise (zero padded).
Arc arc_axpy(const Arc& a, cd s, const Arc& b);

Vec2c eval_arc(const Arc& arc, double t);
Vec2c eval_tangent(const Arc& arc, double t);
Vec2c eval_derivative(const Arc& arc, double t, int order);

// Bilinear squared distance (r(t) - p(tau)).(r(t) - p(tau)).
cd squared_distance(const Arc& r, const Arc& p, double t, double tau);

// Averaged tangent m(t,tau) = int_0^1 r'(t + eta (tau - t)) d eta = (r(t) - r(tau))/(t - tau),
// evaluated through the exact bilinear form m = sum_{j,l} C_{jl} T_j(t) U_l(tau).
Vec2c averaged_tangent(const Arc& arc, double t, double tau);

// Grids of averaged-tangent components for all pairs (ts[a], taus[b]).
struct TangentGrid {
  MatrixXcd mx, my;
};
TangentGrid averaged_tangent_grid(const Arc& arc, const std::vector<double>& ts,
                                  const std::vector<double>& taus);

// Q(t,tau) = d^2(t,tau)/(t - tau)^2, equal to r'(t).r'(t) on the diagonal.
cd q_function(const Arc& r, double t, double tau);

// Direction matrix (r(t) - p(tau))(r(t) - p(tau))^T / d^2. With same_arc the averaged tangent
// is used, which removes the diagonal singularity.
Mat2c d_matrix(const Arc& r, const Arc& p, double t, double tau, bool same_arc = false);

// Uniform grid on [-1,1] including the endpoints.
std::vector<double> uniform_grid(int n);

// Grid surrogate for the C^{m,alpha} norm: sum_{k<=m} sup|r^(k)| + Hoelder quotient of r^(m).
double holder_surrogate_norm(const Arc& arc, int m, double alpha, int grid = 512);

// Grid inf/sup of |r'| over a sample set, and the Condition-2 radius sqrt(I^2 + S^2) - S.
struct TangentBounds {
  double inf = 0.0;
  double sup = 0.0;
};
TangentBounds tangent_bounds(const std::vector<Arc>& samples, int grid = 512);
double delta_self(const std::vector<Arc>& samples, int grid = 512);

// Condition-3 radii delta_1 = delta_2 = (sqrt(I_d^2 + S_d^2) - S_d)/2.
struct CrossBounds {
  double inf_distance = 0.0;
  double sup_sum = 0.0;
};
CrossBounds cross_bounds(const std::vector<Arc>& k1, const std::vector<Arc>& k2, int grid = 512);
std::pair<double, double> delta_cross(const std::vector<Arc>& k1, const std::vector<Arc>& k2,
                                      int grid = 512);

// Minimum over grid pairs of |r(t) - r(tau)|/|t - tau| for real arcs.
double injectivity_ratio(const Arc& arc, int grid = 512);

// r_{j,y} = r0_j + sum_n y_{j + n M} r^n_j.
struct ParametricArcFamily {
  std::vector<Arc> nominal;
  std::vector<std::vector<Arc>> perturbations;
  double p = 0.5;
  // b[j][n]; filled from the surrogate norm when left empty.
  std::vector<std::vector<double>> b;

  int arcs() const { return static_cast<int>(nominal.size()); }
  int max_terms() const;
  int parameter_count() const { return arcs() * max_terms(); }
  double b_of(int j, int n) const;
  // b value of global parameter index k.
  double b_parameter(int k) const;
  void fill_b(int grid = 512);
};

constexpr double kAdmissibilitySafety = 0.9;

struct AdmissibilityReport {
  std::vector<double> delta_self;  // raw Condition-2 values per arc
  struct Pair {
    int i, j;
    double delta;
  };
  std::vector<Pair> delta_cross;
  double zeta = 0.0;
  double eta = 0.0;
  bool summable = false;
  bool pass_zeta = false;
  bool pass_eta = false;
  bool pass_self = false;
  bool pass_cross = false;
  bool pass = false;
  std::vector<std::string> messages;

  double safe_delta_self(int j) const { return kAdmissibilitySafety * delta_self.at(j); }
};

AdmissibilityReport check_family(const ParametricArcFamily& family, int grid = 512);

std::vector<Arc> materialize(const ParametricArcFamily& family, const std::vector<double>& y);
// Complex parameters, used for complex-step and Bernstein-ellipse evaluations.
std::vector<Arc> materialize_complex(const ParametricArcFamily& family, const std::vector<cd>& y);

// Extensional sample of the compact set of arcs reached by the family: nominal arcs, single
// parameter extremes and the all-plus/all-minus corners.
std::vector<std::vector<Arc>> family_samples(const ParametricArcFamily& family);

struct TubeReport {
  double min_re_q = 0.0;
  double min_re_q_inv = 0.0;
  double min_re_d2_cross = 0.0;
  int samples = 0;
  bool has_cross = false;
  bool pass = false;
};

// Random complex perturbation of the given coefficient degree with surrogate norm `norm`.
Arc random_perturbation(std::uint64_t seed, int degree, double norm, int m, double alpha, int grid = 256);

// Samples complex perturbations of norm below delta_self (and delta_cross for pairs) and
// records the minima of Re Q, Re 1/Q and cross Re d^2 over a (t,tau) grid.
TubeReport verify_tube_positivity(const std::vector<Arc>& arcs, double delta_self_value,
                                  double delta_cross_value, int n_samples, std::uint64_t seed,
                                  int grid = 64, int perturbation_degree = 8);

}  // namespace arcwave
