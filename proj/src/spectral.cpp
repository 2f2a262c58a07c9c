#include "arcwave/spectral.hpp"

#include <algorithm>
#include <limits>
#include <cmath>

#include <unsupported/Eigen/FFT>

namespace arcwave {

const char* basis_name(Basis b) {
  switch (b) {
    case Basis::TW: return "TW";
    case Basis::WU: return "WU";
    case Basis::T_plain: return "T_plain";
    case Basis::U_plain: return "U_plain";
  }
  return "?";
}

Basis basis_from_name(const std::string& name) {
  if (name == "TW") return Basis::TW;
  if (name == "WU") return Basis::WU;
  if (name == "T_plain") return Basis::T_plain;
  if (name == "U_plain") return Basis::U_plain;
  throw InvalidArgument("unknown basis tag: " + name);
}

bool is_first_kind(Basis b) { return b == Basis::TW || b == Basis::T_plain; }

double t_norm(int n) { return n == 0 ? 1.0 / std::sqrt(kPi) : std::sqrt(2.0 / kPi); }
double u_norm() { return std::sqrt(2.0 / kPi); }

SpectralDensity::SpectralDensity(VectorXcd c, Basis b, int comps)
    : coeffs(std::move(c)), basis(b), components(comps) {
  validate();
}

void SpectralDensity::validate() const {
  if (components != 1 && components != 2) throw InvalidArgument("components must be 1 or 2");
  if (coeffs.size() % components != 0) throw InvalidArgument("component lengths differ");
  if (!coeffs.allFinite()) throw InvalidArgument("non-finite coefficients");
}

std::vector<double> chebyshev_nodes(int n, Basis basis) {
  std::vector<double> t(n);
  for (int k = 0; k < n; ++k) {
    double theta = is_first_kind(basis) ? (k + 0.5) * kPi / n : (k + 1.0) * kPi / (n + 1);
    t[k] = std::cos(theta);
  }
  return t;
}

namespace {

std::vector<cd> fft_forward(const std::vector<cd>& in) {
  Eigen::FFT<double> fft;
  std::vector<cd> out;
  fft.fwd(out, in);
  return out;
}

}  // namespace

VectorXcd dct2(const VectorXcd& x) {
  const int n = static_cast<int>(x.size());
  std::vector<cd> z(2 * n);
  for (int k = 0; k < n; ++k) {
    z[k] = x[k];
    z[2 * n - 1 - k] = x[k];
  }
  std::vector<cd> Z = fft_forward(z);
  VectorXcd y(n);
  for (int m = 0; m < n; ++m) y[m] = 0.5 * std::exp(cd(0, -kPi * m / (2.0 * n))) * Z[m];
  return y;
}

VectorXcd dct2_naive(const VectorXcd& x) {
  const int n = static_cast<int>(x.size());
  VectorXcd y = VectorXcd::Zero(n);
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k) y[m] += x[k] * std::cos(m * (k + 0.5) * kPi / n);
  return y;
}

VectorXcd dst1(const VectorXcd& x) {
  const int n = static_cast<int>(x.size());
  const int L = 2 * (n + 1);
  std::vector<cd> z(L, cd(0));
  for (int k = 0; k < n; ++k) {
    z[k + 1] = x[k];
    z[L - k - 1] = -x[k];
  }
  std::vector<cd> Z = fft_forward(z);
  VectorXcd y(n);
  for (int m = 0; m < n; ++m) y[m] = 0.5 * kI * Z[m + 1];
  return y;
}

VectorXcd dst1_naive(const VectorXcd& x) {
  const int n = static_cast<int>(x.size());
  VectorXcd y = VectorXcd::Zero(n);
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k) y[m] += x[k] * std::sin((m + 1.0) * (k + 1.0) * kPi / (n + 1));
  return y;
}

namespace {

SpectralDensity analyze_impl(const VectorXcd& values, Basis basis, bool naive) {
  const int n = static_cast<int>(values.size());
  if (n == 0) throw InvalidArgument("analyze: empty input");
  VectorXcd c(n);
  if (is_first_kind(basis)) {
    VectorXcd v = values;
    if (basis == Basis::TW) {
      for (int k = 0; k < n; ++k) v[k] *= std::sin((k + 0.5) * kPi / n);
    }
    VectorXcd s = naive ? dct2_naive(v) : dct2(v);
    for (int m = 0; m < n; ++m) c[m] = t_norm(m) * (kPi / n) * s[m];
  } else {
    VectorXcd v = values;
    for (int k = 0; k < n; ++k) {
      double st = std::sin((k + 1.0) * kPi / (n + 1));
      v[k] *= basis == Basis::WU ? 1.0 : st;
    }
    VectorXcd s = naive ? dst1_naive(v) : dst1(v);
    for (int m = 0; m < n; ++m) c[m] = u_norm() * (kPi / (n + 1)) * s[m];
  }
  return SpectralDensity(c, basis);
}

}  // namespace

SpectralDensity analyze(const VectorXcd& values, Basis basis) { return analyze_impl(values, basis, false); }
SpectralDensity analyze_naive(const VectorXcd& values, Basis basis) { return analyze_impl(values, basis, true); }

double basis_polynomial(Basis basis, int n, double t) {
  if (is_first_kind(basis)) return t_norm(n) * std::cos(n * std::acos(std::clamp(t, -1.0, 1.0)));
  double th = std::acos(std::clamp(t, -1.0, 1.0));
  double s = std::sin(th);
  if (std::abs(s) < 1e-12) {
    double sign = (t > 0 || n % 2 == 0) ? 1.0 : -1.0;
    return u_norm() * sign * (n + 1);
  }
  return u_norm() * std::sin((n + 1) * th) / s;
}

VectorXcd to_classical(const SpectralDensity& d) {
  VectorXcd a = d.coeffs;
  const int m = d.modes();
  for (int c = 0; c < d.components; ++c)
    for (int n = 0; n < m; ++n) a[c * m + n] *= is_first_kind(d.basis) ? t_norm(n) : u_norm();
  return a;
}

SpectralDensity from_classical(const VectorXcd& classical, Basis basis, int components) {
  VectorXcd c = classical;
  const int m = static_cast<int>(classical.size()) / components;
  for (int k = 0; k < components; ++k)
    for (int n = 0; n < m; ++n) c[k * m + n] /= is_first_kind(basis) ? t_norm(n) : u_norm();
  return SpectralDensity(c, basis, components);
}

cd synthesize_at(const SpectralDensity& d, double t, int component) {
  if (!(t >= -1.0 && t <= 1.0)) throw InvalidArgument("synthesize: point outside [-1,1]");
  VectorXcd a = to_classical(d).segment(component * d.modes(), d.modes());
  double w = std::sqrt(std::max(0.0, 1.0 - t * t));
  switch (d.basis) {
    case Basis::T_plain: return clenshaw_t<cd>(a, t);
    case Basis::U_plain: return clenshaw_u<cd>(a, t);
    case Basis::WU: return w * clenshaw_u<cd>(a, t);
    case Basis::TW:
      if (w == 0.0) throw InvalidArgument("synthesize: TW density is unbounded at the endpoints");
      return clenshaw_t<cd>(a, t) / w;
  }
  return 0.0;
}

VectorXcd synthesize(const SpectralDensity& d, const std::vector<double>& points) {
  VectorXcd out(static_cast<Eigen::Index>(points.size()) * d.components);
  for (int c = 0; c < d.components; ++c)
    for (size_t k = 0; k < points.size(); ++k) out[c * points.size() + k] = synthesize_at(d, points[k], c);
  return out;
}

std::vector<double> periodic_grid(int length) {
  std::vector<double> th(length);
  for (int k = 0; k < length; ++k) th[k] = -kPi + 2.0 * kPi * k / length;
  return th;
}

VectorXcd lift(const VectorXcd& u, Lifting which) {
  const int L = static_cast<int>(u.size());
  if (L < 4 || (L & (L - 1)) != 0) throw InvalidArgument("lift: length must be a power of two >= 4");
  VectorXcd out(L);
  for (int k = 0; k < L; ++k) {
    double th = -kPi + 2.0 * kPi * k / L;
    double s = std::sin(th);
    // theta = -pi and theta = 0 are exact zeros of sin on this grid.
    double sgn = (k == 0 || 2 * k == L) ? 0.0 : (s > 0 ? 1.0 : -1.0);
    double abs_s = std::abs(s) * std::abs(sgn);
    switch (which) {
      case Lifting::N: out[k] = u[k] * abs_s; break;
      case Lifting::Nhat: out[k] = u[k]; break;
      case Lifting::Z: out[k] = u[k] * abs_s * sgn; break;
      case Lifting::Zhat: out[k] = u[k] * sgn; break;
    }
  }
  return out;
}

SobolevNorm sobolev_norm(const SpectralDensity& d, double s) {
  double acc = 0.0;
  const int m = d.modes();
  for (int c = 0; c < d.components; ++c)
    for (int n = 0; n < m; ++n) acc += std::pow(1.0 + double(n) * n, s) * std::norm(d.coeffs[c * m + n]);
  return {s, std::sqrt(acc)};
}

SpectralDensity derivative(const SpectralDensity& d) {
  const int m = d.modes();
  if (d.basis == Basis::WU) {
    VectorXcd out = VectorXcd::Zero((m + 1) * d.components);
    for (int c = 0; c < d.components; ++c)
      for (int n = 0; n < m; ++n) out[c * (m + 1) + n + 1] = -double(n + 1) * d.coeffs[c * m + n];
    return SpectralDensity(out, Basis::TW, d.components);
  }
  if (d.basis == Basis::T_plain) {
    const int mo = std::max(1, m - 1);
    VectorXcd out = VectorXcd::Zero(mo * d.components);
    for (int c = 0; c < d.components; ++c)
      for (int n = 1; n < m; ++n) out[c * mo + n - 1] = double(n) * d.coeffs[c * m + n];
    return SpectralDensity(out, Basis::U_plain, d.components);
  }
  throw InvalidArgument(std::string("derivative: unsupported basis ") + basis_name(d.basis));
}

SpectralDensity antiderivative(const SpectralDensity& d) {
  if (d.basis != Basis::TW) throw InvalidArgument("antiderivative: expects a TW density");
  const int m = d.modes();
  if (m < 2) throw InvalidArgument("antiderivative: need at least two modes");
  VectorXcd out = VectorXcd::Zero((m - 1) * d.components);
  for (int c = 0; c < d.components; ++c) {
    if (std::abs(d.coeffs[c * m]) > 1e-12 * (1.0 + d.coeffs.norm()))
      throw InvalidArgument("antiderivative: leading TW coefficient must vanish");
    for (int n = 0; n + 1 < m; ++n) out[c * (m - 1) + n] = -d.coeffs[c * m + n + 1] / double(n + 1);
  }
  return SpectralDensity(out, Basis::WU, d.components);
}

SpectralDensity t_plain_to_u_plain(const SpectralDensity& d) {
  if (d.basis != Basis::T_plain) throw InvalidArgument("t_plain_to_u_plain: expects a T_plain density");
  const int m = d.modes();
  VectorXcd out = VectorXcd::Zero(d.coeffs.size());
  const double u = u_norm();
  for (int c = 0; c < d.components; ++c) {
    for (int n = 0; n < m; ++n) {
      cd a = d.coeffs[c * m + n] * t_norm(n);
      if (n == 0) {
        out[c * m] += a / u;
      } else if (n == 1) {
        out[c * m + 1] += 0.5 * a / u;
      } else {
        out[c * m + n] += 0.5 * a / u;
        out[c * m + n - 2] -= 0.5 * a / u;
      }
    }
  }
  return SpectralDensity(out, Basis::U_plain, d.components);
}

double biperiodic_sobolev_norm(const MatrixXcd& g, double s1, double s2) {
  if (s1 < 0 || s2 < 0) throw InvalidArgument("biperiodic_sobolev_norm: orders must be nonnegative");
  const int L1 = static_cast<int>(g.rows()), L2 = static_cast<int>(g.cols());
  auto pow2 = [](int L) { return L >= 1 && (L & (L - 1)) == 0; };
  if (!pow2(L1) || !pow2(L2)) throw InvalidArgument("biperiodic_sobolev_norm: grid sizes must be powers of two");
  Eigen::FFT<double> fft;
  MatrixXcd G(L1, L2);
  std::vector<cd> in, out;
  for (int a = 0; a < L1; ++a) {
    in.resize(L2);
    for (int b = 0; b < L2; ++b) in[b] = g(a, b);
    fft.fwd(out, in);
    for (int b = 0; b < L2; ++b) G(a, b) = out[b];
  }
  for (int b = 0; b < L2; ++b) {
    in.resize(L1);
    for (int a = 0; a < L1; ++a) in[a] = G(a, b);
    fft.fwd(out, in);
    for (int a = 0; a < L1; ++a) G(a, b) = out[a];
  }
  const double scale = 2.0 * kPi / (double(L1) * L2);
  double acc = 0.0;
  for (int a = 0; a < L1; ++a) {
    int n = a < L1 / 2 ? a : a - L1;
    for (int b = 0; b < L2; ++b) {
      int l = b < L2 / 2 ? b : b - L2;
      acc += std::pow(1.0 + double(n) * n, s1) * std::pow(1.0 + double(l) * l, s2) * std::norm(scale * G(a, b));
    }
  }
  return std::sqrt(acc);
}

VectorXcd chebyshev_derivative(const VectorXcd& a) {
  const int n = static_cast<int>(a.size());
  if (n <= 1) return VectorXcd::Zero(1);
  VectorXcd b = VectorXcd::Zero(n + 1);
  for (int k = n - 1; k >= 1; --k) b[k - 1] = b[k + 1] + 2.0 * k * a[k];
  b[0] *= 0.5;
  return b.head(n - 1);
}

VectorXcd chebyshev_interpolate(const std::vector<cd>& f) {
  const int n = static_cast<int>(f.size());
  VectorXcd v = Eigen::Map<const VectorXcd>(f.data(), n);
  VectorXcd a = dct2(v) * (2.0 / n);
  a[0] *= 0.5;
  return a;
}

DecayFit fit_geometric_decay(const VectorXd& mag, int first, double floor) {
  DecayFit fit;
  const int n = static_cast<int>(mag.size());
  if (n == 0) throw InvalidArgument("no coefficients to fit");
  if (first < 1) throw InvalidArgument("fit window must start at index 1 or later");
  const double top = mag.maxCoeff();
  // Rounding plateau: ten times the median of the last quarter.
  const int tail = std::min(n, std::max(4, n / 4));
  std::vector<double> t(mag.data() + n - tail, mag.data() + n);
  std::nth_element(t.begin(), t.begin() + tail / 2, t.end());
  const double cut = std::max(floor * top, 10.0 * t[tail / 2]);
  int last = -1;
  for (int k = n - 1; k >= 0 && top > 0.0; --k)
    if (mag[k] >= cut) {
      last = k;
      break;
    }
  std::vector<double> env(n);
  double run = 0.0;
  for (int k = n - 1; k >= 0; --k) env[k] = run = std::max(run, mag[k]);
  // Every second index, so that parity staircases do not enter the misfit.
  int start = first;
  if (last - start < 4) start = std::max(1, last - 4);
  fit.first = start;
  fit.last = last;
  std::vector<double> xs, ys;
  for (int k = start; k <= last; k += 2) {
    xs.push_back(k);
    ys.push_back(std::log10(env[k]));
  }
  if (xs.size() < 2) {
    fit.rho = std::numeric_limits<double>::infinity();
    return fit;
  }
  Eigen::MatrixXd a(xs.size(), 2);
  Eigen::VectorXd b(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) {
    a(i, 0) = 1.0;
    a(i, 1) = xs[i];
    b[i] = ys[i];
  }
  Eigen::Vector2d c = a.colPivHouseholderQr().solve(b);
  fit.rho = std::pow(10.0, -c[1]);
  fit.residual = std::sqrt((a * c - b).squaredNorm() / xs.size());
  return fit;
}

}  // namespace arcwave
