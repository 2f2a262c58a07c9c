#include "arcwave/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>

namespace arcwave::oracle {

namespace {

using boost::math::quadrature::gauss_kronrod;

using VecFn = std::function<VectorXcd(double)>;

// Adaptive Gauss-Kronrod (7/15) bisection for vector-valued integrands.
VectorXcd adaptive(const VecFn& f, double a, double b, double tol, int depth) {
  const auto& x = gauss_kronrod<double, 15>::abscissa();
  const auto& wk = gauss_kronrod<double, 15>::weights();
  const auto& wg = boost::math::quadrature::gauss<double, 7>::weights();
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  VectorXcd f0 = f(c);
  VectorXcd k = wk[0] * f0, g = wg[0] * f0;
  for (size_t n = 1; n < x.size(); ++n) {
    VectorXcd s = f(c - h * x[n]) + f(c + h * x[n]);
    k += wk[n] * s;
    if (n % 2 == 0) g += wg[n / 2] * s;
  }
  k *= h;
  g *= h;
  const double err = (k - g).cwiseAbs().maxCoeff();
  if (err <= tol * std::max(1.0, k.cwiseAbs().maxCoeff()) || depth == 0) return k;
  return adaptive(f, a, c, tol, depth - 1) + adaptive(f, c, b, tol, depth - 1);
}

// Geometric grading toward both endpoints, where the integrands may carry logarithmic
// singularities, followed by adaptive panels. Grading stops near width 1e-11, where a single
// panel closes the gap, so that nodes never round onto the singular point.
VectorXcd piece(const VecFn& f, double a, double b, double tol) {
  constexpr double kRatio = 0.1;
  constexpr double kInnermost = 1e-11;
  double outer = 0.5 * (b - a);
  VectorXcd total = adaptive(f, a + outer * kRatio, b - outer * kRatio, tol, 10);
  for (int k = 0; outer * kRatio >= kInnermost; ++k) {
    const double inner = outer * kRatio;
    if (k > 0) total += adaptive(f, a + inner, a + outer, tol, 10) + adaptive(f, b - outer, b - inner, tol, 10);
    outer = inner;
  }
  return total + adaptive(f, a, a + outer, tol, 0) + adaptive(f, b - outer, b, tol, 0);
}

VectorXcd integrate_vector(const VecFn& f, double a, double b, const std::vector<double>& breaks, double tol) {
  std::vector<double> pts{a};
  for (double x : breaks)
    if (x > a && x < b) pts.push_back(x);
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  VectorXcd total;
  for (size_t k = 0; k + 1 < pts.size(); ++k) {
    if (pts[k + 1] - pts[k] <= 0.0) continue;
    VectorXcd p = piece(f, pts[k], pts[k + 1], tol);
    total = total.size() ? VectorXcd(total + p) : p;
  }
  return total;
}

// Orthonormal T_n(cos theta) and sin((n+1) theta) sin(theta) Uhat factors.
double t_hat(int n, double theta) { return (n == 0 ? 1.0 / std::sqrt(kPi) : std::sqrt(2.0 / kPi)) * std::cos(n * theta); }
double u_hat() { return std::sqrt(2.0 / kPi); }

Vec2c arc_point(const Arc& a, double t) { return eval_arc(a, std::clamp(t, -1.0, 1.0)); }

using MatKernel = std::function<Mat2c(double t, double tau)>;

// Values of the first `modes` basis functions (and derivatives for WU) of a family at theta.
struct BasisValues {
  VectorXd value, derivative;
};

BasisValues basis_values(Basis basis, int modes, double theta) {
  BasisValues b{VectorXd(modes), VectorXd(modes)};
  for (int n = 0; n < modes; ++n) {
    if (basis == Basis::TW) {
      b.value[n] = t_hat(n, theta);
      b.derivative[n] = 0.0;
    } else {
      // mu dtau and mu' dtau for mu = w Uhat_n.
      b.value[n] = u_hat() * std::sin((n + 1) * theta) * std::sin(theta);
      b.derivative[n] = -u_hat() * double(n + 1) * std::cos((n + 1) * theta);
    }
  }
  return b;
}

// Columns of int [K0(t,tau) phi(tau) + K1(t,tau) phi'(tau)] dtau over the basis phi; the result is
// components x (components * modes), column index = component * modes + n.
MatrixXcd apply_columns(const MatKernel& k0, const MatKernel& k1, Basis basis, int modes, int components, double t,
                        bool self) {
  std::vector<double> breaks;
  if (self) breaks.push_back(std::acos(std::clamp(t, -1.0, 1.0)));
  const int cols = components * modes;
  VectorXcd flat = integrate_vector(
      [&](double th) {
        const double tau = std::cos(th);
        const BasisValues bv = basis_values(basis, modes, th);
        Mat2c a = k0 ? k0(t, tau) : Mat2c::Zero();
        Mat2c b = k1 ? k1(t, tau) : Mat2c::Zero();
        VectorXcd v(components * cols);
        for (int r = 0; r < components; ++r)
          for (int c = 0; c < components; ++c)
            for (int n = 0; n < modes; ++n)
              v[r * cols + c * modes + n] = a(r, c) * bv.value[n] + b(r, c) * bv.derivative[n];
        return v;
      },
      0.0, kPi, breaks, 1e-13);
  MatrixXcd out(components, cols);
  for (int r = 0; r < components; ++r) out.row(r) = flat.segment(r * cols, cols).transpose();
  return out;
}

template <typename G>
MatrixXcd richardson_derivative(G&& g, double t, double h) {
  auto d = [&](double s) {
    return MatrixXcd((-g(t + 2 * s) + 8.0 * g(t + s) - 8.0 * g(t - s) + g(t - 2 * s)) / (12.0 * s));
  };
  return (16.0 * d(h / 2) - d(h)) / 15.0;
}

Mat2c scalar_mat(cd v) {
  Mat2c m = Mat2c::Zero();
  m(0, 0) = v;
  return m;
}

}  // namespace

cd integrate(const ComplexFn& f, double a, double b, const std::vector<double>& breaks, double tol) {
  return integrate_vector([&](double x) { return VectorXcd::Constant(1, f(x)); }, a, b, breaks, tol)[0];
}

double log_moment(int n, double t) {
  const double th0 = std::acos(std::clamp(t, -1.0, 1.0));
  return integrate([&](double th) { return cd(std::log(std::abs(t - std::cos(th))) * std::cos(n * th)); }, 0.0, kPi,
                   {th0})
      .real();
}

std::complex<long double> hankel1(int order, long double x) {
  return {boost::math::cyl_bessel_j(order, x), boost::math::cyl_neumann(order, x)};
}

cd helmholtz_green(double kappa, double d) {
  const std::complex<long double> h = hankel1(0, static_cast<long double>(kappa) * d);
  return cd(std::complex<long double>(0.0L, 0.25L) * h);
}

Mat2c elastic_green(const ElasticParams& p, const Eigen::Vector2d& x, const Eigen::Vector2d& y) {
  using C = std::complex<long double>;
  const Eigen::Vector2d r = x - y;
  const long double d = r.norm();
  const long double w2 = static_cast<long double>(p.omega) * p.omega;
  const long double ks = p.ks(), kp = p.kp(), beta = p.beta;
  const C i(0.0L, 1.0L);
  const C h0s = hankel1(0, ks * d), h1s = hankel1(1, ks * d), h0p = hankel1(0, kp * d), h1p = hankel1(1, kp * d);
  const C g1 = i / (4.0L * beta) * h0s - i / (4.0L * w2 * d) * (ks * h1s - kp * h1p);
  const C g2 = i / (4.0L * w2) * ((2.0L * ks * h1s - 2.0L * kp * h1p) / d + kp * kp * h0p - ks * ks * h0s);
  Mat2c g;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const long double dab = static_cast<long double>(r(a)) * r(b) / (d * d);
      g(a, b) = cd(g1 * (a == b ? 1.0L : 0.0L) + g2 * dab);
    }
  return g;
}

double elastic_j1_at_zero(const ElasticParams& p) {
  const double kp2 = p.kp() * p.kp(), ks2 = p.ks() * p.ks();
  return -1.0 / (4.0 * kPi * p.beta) - (kp2 - ks2) / (8.0 * kPi * p.omega * p.omega);
}

MatrixXcd single_layer_columns(const Pde& pde, const std::vector<Arc>& arcs, int i, int j, int modes, double t) {
  const Arc& ri = arcs.at(i);
  const Arc& rj = arcs.at(j);
  MatKernel k = [&](double s, double tau) -> Mat2c {
    const Vec2c x = arc_point(ri, s), y = arc_point(rj, tau);
    if (pde.kind == PdeKind::Helmholtz) return scalar_mat(helmholtz_green(pde.helmholtz.kappa, (x - y).norm()));
    if (pde.kind == PdeKind::Elastic)
      return oracle::elastic_green(pde.elastic, Eigen::Vector2d(x.real()), Eigen::Vector2d(y.real()));
    return scalar_mat(-std::log((x - y).squaredNorm()) / (4.0 * kPi));
  };
  return apply_columns(k, nullptr, Basis::TW, modes, pde.components(), t, i == j);
}

MatrixXcd hypersingular_columns(const Pde& pde, const std::vector<Arc>& arcs, int i, int j, int modes, double t) {
  const Arc& ri = arcs.at(i);
  const Arc& rj = arcs.at(j);
  const bool self = i == j;
  const int c = pde.components();
  if (!(std::abs(t) < 1.0)) throw InvalidArgument("hypersingular oracle needs an interior point");
  const double h = std::min(1e-2, (1.0 - std::abs(t)) / 2.5);
  MatKernel direct0, direct1, inner0, inner1;
  if (pde.kind == PdeKind::Elastic) {
    direct0 = [&](double s, double tau) { return maue_kernels_elastic(pde.elastic, ri, rj, s, tau)[0]; };
    direct1 = [&](double s, double tau) { return maue_kernels_elastic(pde.elastic, ri, rj, s, tau)[2]; };
    inner0 = [&](double s, double tau) { return maue_kernels_elastic(pde.elastic, ri, rj, s, tau)[3]; };
    inner1 = [&](double s, double tau) { return maue_kernels_elastic(pde.elastic, ri, rj, s, tau)[1]; };
  } else {
    inner1 = [&](double s, double tau) -> Mat2c {
      const Vec2c x = arc_point(ri, s), y = arc_point(rj, tau);
      if (pde.kind == PdeKind::Helmholtz) return scalar_mat(helmholtz_green(pde.helmholtz.kappa, (x - y).norm()));
      return scalar_mat(-std::log((x - y).squaredNorm()) / (4.0 * kPi));
    };
    if (pde.kind == PdeKind::Helmholtz)
      direct0 = [&](double s, double tau) { return scalar_mat(maue_tilde_helmholtz(pde.helmholtz, ri, rj, s, tau)); };
  }
  MatrixXcd out = richardson_derivative(
      [&](double s) { return apply_columns(inner0, inner1, Basis::WU, modes, c, s, self); }, t, h);
  if (direct0 || direct1) out += apply_columns(direct0, direct1, Basis::WU, modes, c, t, self);
  return out;
}

Vec2c single_layer_at(const Pde& pde, const std::vector<Arc>& arcs, int i, int j, const SpectralDensity& lambda,
                      double t) {
  if (lambda.basis != Basis::TW) throw InvalidArgument("single_layer_at expects a TW density");
  Vec2c out = Vec2c::Zero();
  out.head(pde.components()) = single_layer_columns(pde, arcs, i, j, lambda.modes(), t) * lambda.coeffs;
  return out;
}

Vec2c hypersingular_at(const Pde& pde, const std::vector<Arc>& arcs, int i, int j, const SpectralDensity& mu,
                       double t) {
  if (mu.basis != Basis::WU) throw InvalidArgument("hypersingular_at expects a WU density");
  Vec2c out = Vec2c::Zero();
  out.head(pde.components()) = hypersingular_columns(pde, arcs, i, j, mu.modes(), t) * mu.coeffs;
  return out;
}

Vec2c range_value(const VectorXcd& pairings, Basis range, int components, double t) {
  const int m = static_cast<int>(pairings.size()) / components;
  Vec2c out = Vec2c::Zero();
  for (int c = 0; c < components; ++c)
    for (int n = 0; n < m; ++n) {
      double b;
      if (range == Basis::T_plain)
        b = (n == 0 ? 1.0 / std::sqrt(kPi) : std::sqrt(2.0 / kPi)) * std::cos(n * std::acos(t));
      else if (range == Basis::U_plain)
        b = u_hat() * (std::abs(t) == 1.0 ? (n + 1) * std::pow(t, n) : std::sin((n + 1) * std::acos(t)) / std::sqrt(1 - t * t));
      else
        throw InvalidArgument("range must be T_plain or U_plain");
      out(c) += pairings[c * m + n] * b;
    }
  return out;
}

double brute_force_distance(const Arc& r, const Arc& p, int n) {
  std::vector<Eigen::Vector2d> a(n), b(n);
  for (int k = 0; k < n; ++k) {
    const double t = -1.0 + 2.0 * k / (n - 1);
    a[k] = eval_arc(r, t).real();
    b[k] = eval_arc(p, t).real();
  }
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) best = std::min(best, (a[k] - b[l]).squaredNorm());
  return std::sqrt(best);
}

double laplace_segment_w_eigenvalue(int n) {
  // (w U_n)' = -(n+1) T_{n+1} / w, V[T_k / w] = T_k / (2k), (T_{n+1})' = (n+1) U_n.
  return -(n + 1) / 2.0;
}

}  // namespace arcwave::oracle
