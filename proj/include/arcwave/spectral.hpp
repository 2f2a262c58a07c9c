#pragma once

#include <vector>

#include "arcwave/types.hpp"

namespace arcwave {

// Expansion families on (-1,1) with w(t) = sqrt(1 - t^2):
//   TW      u = sum c_n That_n / w    c_n = int u That_n dt
//   T_plain u = sum c_n That_n        c_n = int u That_n / w dt
//   WU      u = sum c_n w Uhat_n      c_n = int u Uhat_n dt
//   U_plain u = sum c_n Uhat_n        c_n = int u Uhat_n w dt
// That_n, Uhat_n are the orthonormal Chebyshev polynomials.
enum class Basis { TW, WU, T_plain, U_plain };

const char* basis_name(Basis b);
Basis basis_from_name(const std::string& name);
bool is_first_kind(Basis b);

// That_n = t_norm(n) T_n and Uhat_n = u_norm() U_n.
double t_norm(int n);
double u_norm();

// Coefficients of a scalar or 2-vector density; components are stored one after the other.
struct SpectralDensity {
  VectorXcd coeffs;
  Basis basis = Basis::TW;
  int components = 1;

  SpectralDensity() = default;
  SpectralDensity(VectorXcd c, Basis b, int comps = 1);

  int modes() const { return static_cast<int>(coeffs.size()) / components; }
  VectorXcd component(int c) const { return coeffs.segment(c * modes(), modes()); }
  void validate() const;
};

// Nodes on which `analyze` expects samples: first-kind Chebyshev points for TW and T_plain,
// zeros of U_n for WU and U_plain.
std::vector<double> chebyshev_nodes(int n, Basis basis);

SpectralDensity analyze(const VectorXcd& values, Basis basis);
// Same result via the O(n^2) direct sums.
SpectralDensity analyze_naive(const VectorXcd& values, Basis basis);

VectorXcd synthesize(const SpectralDensity& density, const std::vector<double>& points);
cd synthesize_at(const SpectralDensity& density, double t, int component = 0);

// Values of the basis function n of the family at t (without the 1/w factor for TW).
double basis_polynomial(Basis basis, int n, double t);

enum class Lifting { N, Nhat, Z, Zhat };

// Uniform periodic grid theta_k = -pi + 2 pi k / L.
std::vector<double> periodic_grid(int length);
VectorXcd lift(const VectorXcd& u_samples, Lifting which);

struct SobolevNorm {
  double s = 0.0;
  double value = 0.0;
};

SobolevNorm sobolev_norm(const SpectralDensity& density, double s);

// d/dt: WU -> TW and T_plain -> U_plain.
SpectralDensity derivative(const SpectralDensity& density);
// Inverse of the WU -> TW derivative on densities with vanishing leading coefficient.
SpectralDensity antiderivative(const SpectralDensity& density);

// Re-expansion of sum c_n That_n in the Uhat_n family.
SpectralDensity t_plain_to_u_plain(const SpectralDensity& density);

// Classical (non-normalized) Chebyshev coefficients of the same function.
VectorXcd to_classical(const SpectralDensity& density);
SpectralDensity from_classical(const VectorXcd& classical, Basis basis, int components = 1);

// Sum (1+n^2)^s1 (1+l^2)^s2 |g_{n,l}|^2 with g_{n,l} = int int g conj(e_n e_l), e_n = exp(i n theta)/sqrt(2 pi).
double biperiodic_sobolev_norm(const MatrixXcd& samples, double s1, double s2);

// Discrete cosine/sine sums used by the transforms; exposed for tests.
VectorXcd dct2(const VectorXcd& x);        // y_m = sum_k x_k cos(m (k+1/2) pi / n)
VectorXcd dct2_naive(const VectorXcd& x);
VectorXcd dst1(const VectorXcd& x);        // y_m = sum_k x_k sin((m+1)(k+1) pi / (n+1))
VectorXcd dst1_naive(const VectorXcd& x);

// Classical Chebyshev series helpers.
template <typename Scalar, typename Coeffs>
Scalar clenshaw_t(const Coeffs& a, double t) {
  Scalar b1(0), b2(0);
  for (Eigen::Index k = a.size() - 1; k >= 1; --k) {
    Scalar b0 = Scalar(a[k]) + 2.0 * t * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  if (a.size() == 0) return Scalar(0);
  return Scalar(a[0]) + t * b1 - b2;
}

template <typename Scalar, typename Coeffs>
Scalar clenshaw_u(const Coeffs& a, double t) {
  Scalar b1(0), b2(0);
  for (Eigen::Index k = a.size() - 1; k >= 0; --k) {
    Scalar b0 = Scalar(a[k]) + 2.0 * t * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return b1;
}

// Classical T-coefficients of the derivative of a classical T-series.
VectorXcd chebyshev_derivative(const VectorXcd& a);
// Classical T-coefficients interpolating f at n first-kind nodes.
VectorXcd chebyshev_interpolate(const std::vector<cd>& values_at_first_kind_nodes);

// Geometric decay |c_n| ~ C rho^{-n}: least-squares line through log10 of the tail envelope
// e_n = max_{k>=n} |c_k| at n = first, first+2, ..., last, where last is the final index with
// |c_n| >= max(floor * max|c|, 10 * median of the last quarter of |c|). The window starts earlier (not before 1) when it would hold fewer than
// three points. The residual is the RMS misfit in log10. rho is +infinity below two points.
struct DecayFit {
  double rho = 0.0;
  double residual = 0.0;
  int first = 0;
  int last = -1;
};
DecayFit fit_geometric_decay(const VectorXd& magnitudes, int first = 4, double floor = 1e-13);

}  // namespace arcwave
