#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "arcwave/operators.hpp"

// Independent reference computations: adaptive quadrature and extended-precision special
// functions. They share no numerical code with the library paths they check.
namespace arcwave::oracle {

using ComplexFn = std::function<cd(double)>;

// Adaptive Gauss-Kronrod quadrature of f over [a, b], split at the interior break points.
cd integrate(const ComplexFn& f, double a, double b, const std::vector<double>& breaks = {}, double tol = 1e-13);

// int_{-1}^{1} log|t - tau| T_n(tau) / sqrt(1 - tau^2) dtau.
double log_moment(int n, double t);

// H^(1)_order(x) in long double.
std::complex<long double> hankel1(int order, long double x);

cd helmholtz_green(double kappa, double d);
// Elastic fundamental solution from the Hankel form G1(d) I + G2(d) D in long double.
Mat2c elastic_green(const ElasticParams& p, const Eigen::Vector2d& x, const Eigen::Vector2d& y);
// J^1(0) = -1/(4 pi beta) - (kp^2 - ks^2)/(8 pi omega^2).
double elastic_j1_at_zero(const ElasticParams& p);

// Pointwise continuous single layer of a TW density on arc j, evaluated at r_i(t):
// int G(r_i(t), r_j(tau)) lambda(tau) dtau.
Vec2c single_layer_at(const Pde& pde, const std::vector<Arc>& arcs, int i, int j, const SpectralDensity& lambda,
                      double t);

// Pointwise form of the assembled hypersingular block applied to a WU density mu on arc j:
// scalar  d/dt int G mu' dtau + int Gt mu dtau,
// elastic int K1 mu + d/dt int K2 mu' + int K3 mu' + d/dt int K4 mu,
// with d/dt by a fourth-order Richardson difference.
Vec2c hypersingular_at(const Pde& pde, const std::vector<Arc>& arcs, int i, int j, const SpectralDensity& mu, double t);

// Both operators applied to the first `modes` basis functions at t: components x (components * modes).
MatrixXcd single_layer_columns(const Pde& pde, const std::vector<Arc>& arcs, int i, int j, int modes, double t);
MatrixXcd hypersingular_columns(const Pde& pde, const std::vector<Arc>& arcs, int i, int j, int modes, double t);

// Values of a T_plain or U_plain range expansion at t.
Vec2c range_value(const VectorXcd& pairings, Basis range, int components, double t);

// Minimum of |r(t) - p(tau)| over an n x n uniform grid.
double brute_force_distance(const Arc& r, const Arc& p, int n);

// Symbolic chain for the Laplace-limit hypersingular block on the segment (t, 0):
// W[w Uhat_n] = d/dt V[(w Uhat_n)'] = -(n+1)/2 Uhat_n.
double laplace_segment_w_eigenvalue(int n);

}  // namespace arcwave::oracle
