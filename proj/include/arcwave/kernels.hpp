#pragma once

#include <array>
#include <string>

#include "arcwave/geometry.hpp"
#include "arcwave/types.hpp"

namespace arcwave {

struct HelmholtzParams {
  double kappa = 1.0;
  void validate() const;
};

// Lame parameters alpha (lambda), beta (mu), unit density, angular frequency omega.
struct ElasticParams {
  double alpha = 2.0;
  double beta = 1.0;
  double omega = 1.0;
  void validate() const;
  double kp() const { return omega / std::sqrt(alpha + 2.0 * beta); }
  double ks() const { return omega / std::sqrt(beta); }
};

// Laplace is the kappa -> 0 limit kernel -log(d^2)/(4 pi), kept for diagnostics.
enum class PdeKind { Laplace, Helmholtz, Elastic };

struct Pde {
  PdeKind kind = PdeKind::Helmholtz;
  HelmholtzParams helmholtz;
  ElasticParams elastic;

  static Pde laplace();
  static Pde make_helmholtz(double kappa);
  static Pde make_elastic(double alpha, double beta, double omega);

  int components() const { return kind == PdeKind::Elastic ? 2 : 1; }
  void validate() const;
  std::string name() const;
};

// Fundamental solutions. Points may be complex; d^2 is the bilinear square.
cd helmholtz_green(double kappa, const Vec2c& x, const Vec2c& y);
cd helmholtz_green_z(double kappa, cd z);
Vec2c helmholtz_green_gradient(double kappa, const Vec2c& x, const Vec2c& y);  // grad_x

Mat2c elastic_green(const ElasticParams& p, const Vec2c& x, const Vec2c& y);
// G = g1(d) I + g2(d) D and radial derivatives.
struct ElasticRadial {
  cd g1, g2, dg1, dg2;
};
ElasticRadial elastic_radial(const ElasticParams& p, cd d);
// grad[m](i,k) = d G_ik / d x_m.
std::array<Mat2c, 2> elastic_green_gradient(const ElasticParams& p, const Vec2c& x, const Vec2c& y);
// (k_s H1(k_s d) - k_p H1(k_p d))/d as a function of z = d^2.
cd elastic_h(const ElasticParams& p, cd z);

// Traction sigma(u) nu = alpha div(u) nu + beta (grad u + grad u^T) nu for grad(a,b) = du_a/dx_b.
Vec2c elastic_traction(const ElasticParams& p, const Mat2c& grad, const Vec2c& nu);

// Green function of the given pde, scalar kernels in entry (0,0).
Mat2c green(const Pde& pde, const Vec2c& x, const Vec2c& y);

// Pulled-back double-layer kernel: u(x) = int K(x, tau) mu(tau) d tau with nu = perp(r'(tau)).
// Helmholtz: nu . grad_y G. Elastic: K(k,i) = (T_nu[G(x,.) e_k])_i.
Mat2c double_layer_kernel(const Pde& pde, const Vec2c& x, const Vec2c& y, const Vec2c& nu);

// Values of the split G = F1(z) log z + F2(z), z = d^2, with the matrix pieces
// F1 = a1 I + a2 D, F2 = b1 I + b2 D and (F1(z) - F1(0))/z = s1 I + s2 D.
struct SplitValues {
  cd a1, a2, b1, b2, s1, s2;
};

class KernelSplit {
 public:
  explicit KernelSplit(Pde pde);
  const Pde& pde() const { return pde_; }
  SplitValues evaluate(cd z) const;
  // Scalar kernels only.
  cd F1(cd z) const { return evaluate(z).a1; }
  cd F2(cd z) const { return evaluate(z).b1; }
  // F1(0); for elastic kernels F1(0) = J1(0) I.
  cd F1_at_zero() const { return f1_zero_; }
  Mat2c F1(cd z, const Mat2c& D) const;
  Mat2c F2(cd z, const Mat2c& D) const;

 private:
  Pde pde_;
  cd f1_zero_;
};

KernelSplit helmholtz_split(const HelmholtzParams& p);
KernelSplit elastic_split(const ElasticParams& p);
KernelSplit laplace_split();

// Building blocks of the elastic split at wavenumber k.
struct WaveSeries {
  cd j0, j1, y0s, y1s, j0m, j1m;
  double log_half_k;
};
WaveSeries wave_series(double k, cd z);

// Point pair on one or two arcs. For self pairs delta = r(t) - r(tau) = dt * m and z = dt^2 q.
struct PairGeometry {
  Vec2c x, y;    // r_i(t), r_j(tau)
  Vec2c tx, ty;  // r_i'(t), r_j'(tau)
  bool self = false;
  double dt = 0.0;
  Vec2c m;  // averaged tangent (self only)
  cd q;     // m . m (self only)

  static PairGeometry self_pair(const Arc& arc, double t, double tau);
  static PairGeometry cross_pair(const Arc& ri, const Arc& rj, double t, double tau);
  Vec2c delta() const { return self ? Vec2c(dt * m) : Vec2c(x - y); }
  cd z() const;
};

// K = log_coeff * log((t - tau)^2) + smooth. Cross pairs have log_coeff = 0.
struct SplitKernel {
  Mat2c log_coeff = Mat2c::Zero();
  Mat2c smooth = Mat2c::Zero();
};

// Single-layer kernel G(r_i(t), r_j(tau)).
SplitKernel single_layer(const KernelSplit& split, const PairGeometry& g);

// Self split of the single-layer kernel: G_R = log(Q) F1(d^2) + F2(d^2) and
// f_S2 = (F1(d^2) - F1(0))/(t - tau)^2, so that
// G = G_R + 2 log|t - tau| F1(0) + 2 (t - tau)^2 log|t - tau| f_S2.
struct SelfSplit {
  Mat2c g_r = Mat2c::Zero();
  Mat2c f_s2 = Mat2c::Zero();
};
SelfSplit kernel_self_split(const KernelSplit& split, const PairGeometry& g);
SelfSplit kernel_self_split(const Arc& r, const KernelSplit& split, double t, double tau);

// Maue weakly-singular kernel: kappa^2 (r_i'(t) . r_j'(tau)) G, so that
// |r_i'(t)| dn DL mu = d/dt int G mu' dtau + int maue_tilde mu dtau.
SplitKernel maue_tilde(const KernelSplit& split, const PairGeometry& g);
cd maue_tilde_helmholtz(const HelmholtzParams& p, const Arc& ri, const Arc& rj, double t, double tau);

// Elastic hypersingular operator in the form
// |r_i'(t)| W u = int K1 u + d/dt int K2 u' + int K3 u' + d/dt int K4 u.
struct ElasticMaue {
  SplitKernel k1, k2, k3, k4;
};
ElasticMaue maue_elastic(const KernelSplit& split, const PairGeometry& g);
std::array<Mat2c, 4> maue_kernels_elastic(const ElasticParams& p, const Arc& ri, const Arc& rj, double t,
                                          double tau);

// Rotation A = [[0,-1],[1,0]].
Mat2c rotation_a();

}  // namespace arcwave
