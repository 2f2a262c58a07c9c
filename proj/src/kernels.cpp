#include "arcwave/kernels.hpp"

#include <cmath>

#include "arcwave/bessel.hpp"

namespace arcwave {

namespace {

Mat2c scalar_mat(cd v) {
  Mat2c m = Mat2c::Zero();
  m(0, 0) = v;
  return m;
}

void require_right_half_plane(cd z, const char* what) {
  if (!(z.real() > 0.0)) throw KernelError(std::string(what) + ": argument left the right half plane");
}

// Helmholtz pieces at wavenumber k: F1 and F2 of the scalar split.
struct HelmPieces {
  cd f1, f2;
};

HelmPieces helm_pieces(const WaveSeries& w) {
  return {-w.j0 / (4.0 * kPi), 0.25 * kI * w.j0 - ((w.log_half_k + kEulerGamma) * w.j0 + w.y0s) / (2.0 * kPi)};
}

// E1 and E2 of h(z) = E1 log z + E2.
std::pair<cd, cd> elastic_h_pieces(const ElasticParams& p, const WaveSeries& s, const WaveSeries& q) {
  const double ks2 = p.ks() * p.ks(), kp2 = p.kp() * p.kp();
  cd dj1 = ks2 * s.j1 - kp2 * q.j1;
  cd e1 = kI / (2.0 * kPi) * dj1;
  cd e2 = 0.5 * dj1 + kI * ((ks2 * s.log_half_k * s.j1 - kp2 * q.log_half_k * q.j1) / kPi -
                            (ks2 * s.y1s - kp2 * q.y1s) / (2.0 * kPi));
  return {e1, e2};
}

// Value f = F1 log z + F2 split into log((t-tau)^2) coefficient and smooth part.
struct Piece {
  cd a, b;
};

Piece piece(const PairGeometry& g, cd f1, cd f2, cd log_smooth) {
  if (g.self) return {f1, f1 * log_smooth + f2};
  return {0.0, f1 * log_smooth + f2};
}

cd log_argument(const PairGeometry& g) {
  if (g.self) {
    require_right_half_plane(g.q, "Q");
    return std::log(g.q);
  }
  cd z = g.z();
  require_right_half_plane(z, "squared distance");
  return std::log(z);
}

Mat2c direction(const PairGeometry& g) {
  if (g.self) return g.m * g.m.transpose() / g.q;
  Vec2c d = g.delta();
  return d * d.transpose() / bdot(d, d);
}

}  // namespace

void HelmholtzParams::validate() const {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw InvalidArgument("kappa must be positive");
}

void ElasticParams::validate() const {
  if (!(alpha > 0.0) || !(alpha + beta > 0.0) || !(beta > 0.0))
    throw InvalidArgument("Lame parameters need alpha > 0, beta > 0");
  if (!(omega > 0.0) || !std::isfinite(omega)) throw InvalidArgument("omega must be positive");
}

Pde Pde::laplace() {
  Pde p;
  p.kind = PdeKind::Laplace;
  return p;
}

Pde Pde::make_helmholtz(double kappa) {
  Pde p;
  p.kind = PdeKind::Helmholtz;
  p.helmholtz.kappa = kappa;
  p.validate();
  return p;
}

Pde Pde::make_elastic(double alpha, double beta, double omega) {
  Pde p;
  p.kind = PdeKind::Elastic;
  p.elastic = {alpha, beta, omega};
  p.validate();
  return p;
}

void Pde::validate() const {
  if (kind == PdeKind::Helmholtz) helmholtz.validate();
  if (kind == PdeKind::Elastic) elastic.validate();
}

std::string Pde::name() const {
  switch (kind) {
    case PdeKind::Laplace: return "laplace";
    case PdeKind::Helmholtz: return "helmholtz";
    case PdeKind::Elastic: return "elastic";
  }
  return "unknown";
}

WaveSeries wave_series(double k, cd z) {
  const cd w = k * k * z;
  WaveSeries s;
  s.j0 = bessel::j0(w);
  s.j1 = bessel::j1(w);
  s.y0s = bessel::y0s(w);
  s.y1s = bessel::y1s(w);
  s.j0m = bessel::j0m(w);
  s.j1m = bessel::j1m(w);
  s.log_half_k = std::log(0.5 * k);
  return s;
}

cd helmholtz_green_z(double kappa, cd z) {
  if (z == cd(0)) throw KernelError("Green function evaluated at coincident points");
  require_right_half_plane(z, "squared distance");
  return 0.25 * kI * bessel::H0(kappa * std::sqrt(z));
}

cd helmholtz_green(double kappa, const Vec2c& x, const Vec2c& y) {
  Vec2c d = x - y;
  return helmholtz_green_z(kappa, bdot(d, d));
}

Vec2c helmholtz_green_gradient(double kappa, const Vec2c& x, const Vec2c& y) {
  Vec2c rho = x - y;
  cd z = bdot(rho, rho);
  if (z == cd(0)) throw KernelError("Green function evaluated at coincident points");
  require_right_half_plane(z, "squared distance");
  cd d = std::sqrt(z);
  return -0.25 * kI * kappa * bessel::H1(kappa * d) / d * rho;
}

ElasticRadial elastic_radial(const ElasticParams& p, cd d) {
  const double ks = p.ks(), kp = p.kp(), w2 = p.omega * p.omega;
  cd h0s = bessel::H0(ks * d), h1s = bessel::H1(ks * d), h0p = bessel::H0(kp * d), h1p = bessel::H1(kp * d);
  cd g = ks * h1s - kp * h1p;
  ElasticRadial r;
  KernelSplit split = elastic_split(p);
  SplitValues sv = split.evaluate(d * d);
  cd lz = std::log(d * d);
  r.g1 = sv.a1 * lz + sv.b1;
  r.g2 = sv.a2 * lz + sv.b2;
  r.dg1 = -kI * ks / (4.0 * p.beta) * h1s - kI / (4.0 * w2 * d) * (ks * ks * h0s - kp * kp * h0p - 2.0 * g / d);
  r.dg2 = kI / (4.0 * w2) *
          (2.0 * (ks * ks * h0s - kp * kp * h0p) / d - 4.0 * g / (d * d) - kp * kp * kp * h1p + ks * ks * ks * h1s);
  return r;
}

Mat2c elastic_green(const ElasticParams& p, const Vec2c& x, const Vec2c& y) {
  Vec2c rho = x - y;
  cd z = bdot(rho, rho);
  if (z == cd(0)) throw KernelError("Green function evaluated at coincident points");
  require_right_half_plane(z, "squared distance");
  SplitValues sv = elastic_split(p).evaluate(z);
  cd lz = std::log(z);
  return (sv.a1 * lz + sv.b1) * Mat2c::Identity() + (sv.a2 * lz + sv.b2) * (rho * rho.transpose() / z);
}

std::array<Mat2c, 2> elastic_green_gradient(const ElasticParams& p, const Vec2c& x, const Vec2c& y) {
  Vec2c rho = x - y;
  cd z = bdot(rho, rho);
  if (z == cd(0)) throw KernelError("Green function evaluated at coincident points");
  require_right_half_plane(z, "squared distance");
  cd d = std::sqrt(z);
  Vec2c e = rho / d;
  ElasticRadial r = elastic_radial(p, d);
  std::array<Mat2c, 2> out;
  for (int m = 0; m < 2; ++m)
    for (int i = 0; i < 2; ++i)
      for (int k = 0; k < 2; ++k) {
        cd v = r.dg2 * e(m) * e(i) * e(k);
        if (i == k) v += r.dg1 * e(m);
        cd t = -2.0 * e(i) * e(k) * e(m);
        if (i == m) t += e(k);
        if (k == m) t += e(i);
        out[m](i, k) = v + r.g2 * t / d;
      }
  return out;
}

cd elastic_h(const ElasticParams& p, cd z) {
  require_right_half_plane(z, "squared distance");
  auto [e1, e2] = elastic_h_pieces(p, wave_series(p.ks(), z), wave_series(p.kp(), z));
  return e1 * std::log(z) + e2;
}

Vec2c elastic_traction(const ElasticParams& p, const Mat2c& grad, const Vec2c& nu) {
  cd div = grad(0, 0) + grad(1, 1);
  return p.alpha * div * nu + p.beta * (grad + grad.transpose()) * nu;
}

Mat2c green(const Pde& pde, const Vec2c& x, const Vec2c& y) {
  switch (pde.kind) {
    case PdeKind::Laplace: {
      Vec2c d = x - y;
      cd z = bdot(d, d);
      if (z == cd(0)) throw KernelError("Green function evaluated at coincident points");
      return scalar_mat(-std::log(z) / (4.0 * kPi));
    }
    case PdeKind::Helmholtz: return scalar_mat(helmholtz_green(pde.helmholtz.kappa, x, y));
    case PdeKind::Elastic: return elastic_green(pde.elastic, x, y);
  }
  return Mat2c::Zero();
}

Mat2c double_layer_kernel(const Pde& pde, const Vec2c& x, const Vec2c& y, const Vec2c& nu) {
  switch (pde.kind) {
    case PdeKind::Laplace: {
      Vec2c rho = x - y;
      return scalar_mat(bdot(nu, rho) / (2.0 * kPi * bdot(rho, rho)));
    }
    case PdeKind::Helmholtz: return scalar_mat(-bdot(nu, helmholtz_green_gradient(pde.helmholtz.kappa, x, y)));
    case PdeKind::Elastic: {
      std::array<Mat2c, 2> dg = elastic_green_gradient(pde.elastic, x, y);
      Mat2c k;
      for (int c = 0; c < 2; ++c) {
        Mat2c grad;  // d/dy_b of G(x - y) e_c, component a
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) grad(a, b) = -dg[b](a, c);
        k.row(c) = elastic_traction(pde.elastic, grad, nu).transpose();
      }
      return k;
    }
  }
  return Mat2c::Zero();
}

KernelSplit::KernelSplit(Pde pde) : pde_(std::move(pde)) {
  pde_.validate();
  f1_zero_ = evaluate(0.0).a1;
}

SplitValues KernelSplit::evaluate(cd z) const {
  SplitValues v{0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  switch (pde_.kind) {
    case PdeKind::Laplace: v.a1 = -1.0 / (4.0 * kPi); break;
    case PdeKind::Helmholtz: {
      const double k = pde_.helmholtz.kappa;
      WaveSeries w = wave_series(k, z);
      HelmPieces h = helm_pieces(w);
      v.a1 = h.f1;
      v.b1 = h.f2;
      v.s1 = -k * k / (4.0 * kPi) * w.j0m;
      break;
    }
    case PdeKind::Elastic: {
      const ElasticParams& p = pde_.elastic;
      const double ks2 = p.ks() * p.ks(), kp2 = p.kp() * p.kp(), w2 = p.omega * p.omega, b = p.beta;
      WaveSeries s = wave_series(p.ks(), z), q = wave_series(p.kp(), z);
      cd dj1 = ks2 * s.j1 - kp2 * q.j1;
      cd dlj1 = ks2 * s.log_half_k * s.j1 - kp2 * q.log_half_k * q.j1;
      cd dy1 = ks2 * s.y1s - kp2 * q.y1s;
      cd ys = (s.log_half_k + kEulerGamma) * s.j0 + s.y0s;
      cd yp = (q.log_half_k + kEulerGamma) * q.j0 + q.y0s;
      v.a1 = -s.j0 / (4.0 * kPi * b) + dj1 / (8.0 * kPi * w2);
      v.a2 = -(dj1 + kp2 * q.j0 - ks2 * s.j0) / (4.0 * kPi * w2);
      v.b1 = 0.25 * kI / b * s.j0 - ys / (2.0 * kPi * b) - kI / (8.0 * w2) * dj1 + dlj1 / (4.0 * kPi * w2) -
             dy1 / (8.0 * kPi * w2);
      v.b2 = kI / (4.0 * w2) * (dj1 + kp2 * q.j0 - ks2 * s.j0) - (dlj1 - 0.5 * dy1) / (2.0 * kPi * w2) -
             (kp2 * yp - ks2 * ys) / (2.0 * kPi * w2);
      v.s1 = -ks2 * s.j0m / (4.0 * kPi * b) + (ks2 * ks2 * s.j1m - kp2 * kp2 * q.j1m) / (8.0 * kPi * w2);
      v.s2 = -(ks2 * ks2 * s.j1m - kp2 * kp2 * q.j1m + kp2 * kp2 * q.j0m - ks2 * ks2 * s.j0m) / (4.0 * kPi * w2);
      break;
    }
  }
  return v;
}

Mat2c KernelSplit::F1(cd z, const Mat2c& D) const {
  SplitValues v = evaluate(z);
  if (pde_.components() == 1) return scalar_mat(v.a1);
  return v.a1 * Mat2c::Identity() + v.a2 * D;
}

Mat2c KernelSplit::F2(cd z, const Mat2c& D) const {
  SplitValues v = evaluate(z);
  if (pde_.components() == 1) return scalar_mat(v.b1);
  return v.b1 * Mat2c::Identity() + v.b2 * D;
}

KernelSplit helmholtz_split(const HelmholtzParams& p) {
  Pde pde;
  pde.kind = PdeKind::Helmholtz;
  pde.helmholtz = p;
  return KernelSplit(pde);
}

KernelSplit elastic_split(const ElasticParams& p) {
  Pde pde;
  pde.kind = PdeKind::Elastic;
  pde.elastic = p;
  return KernelSplit(pde);
}

KernelSplit laplace_split() { return KernelSplit(Pde::laplace()); }

PairGeometry PairGeometry::self_pair(const Arc& arc, double t, double tau) {
  PairGeometry g;
  g.self = true;
  g.x = eval_arc(arc, t);
  g.y = eval_arc(arc, tau);
  g.tx = eval_tangent(arc, t);
  g.ty = eval_tangent(arc, tau);
  g.dt = t - tau;
  g.m = averaged_tangent(arc, t, tau);
  g.q = bdot(g.m, g.m);
  return g;
}

PairGeometry PairGeometry::cross_pair(const Arc& ri, const Arc& rj, double t, double tau) {
  PairGeometry g;
  g.x = eval_arc(ri, t);
  g.y = eval_arc(rj, tau);
  g.tx = eval_tangent(ri, t);
  g.ty = eval_tangent(rj, tau);
  return g;
}

cd PairGeometry::z() const {
  if (self) return dt * dt * q;
  Vec2c d = x - y;
  return bdot(d, d);
}

SplitKernel single_layer(const KernelSplit& split, const PairGeometry& g) {
  cd lg = log_argument(g);
  SplitValues v = split.evaluate(g.z());
  SplitKernel k;
  if (split.pde().components() == 1) {
    Piece p = piece(g, v.a1, v.b1, lg);
    k.log_coeff = scalar_mat(p.a);
    k.smooth = scalar_mat(p.b);
    return k;
  }
  Mat2c D = direction(g);
  Piece p1 = piece(g, v.a1, v.b1, lg), p2 = piece(g, v.a2, v.b2, lg);
  k.log_coeff = p1.a * Mat2c::Identity() + p2.a * D;
  k.smooth = p1.b * Mat2c::Identity() + p2.b * D;
  return k;
}

SelfSplit kernel_self_split(const KernelSplit& split, const PairGeometry& g) {
  if (!g.self) throw InvalidArgument("kernel_self_split needs a self pair");
  SplitKernel k = single_layer(split, g);
  SplitValues v = split.evaluate(g.z());
  SelfSplit s;
  s.g_r = k.smooth;
  if (split.pde().components() == 1) {
    s.f_s2 = scalar_mat(g.q * v.s1);
  } else {
    s.f_s2 = g.q * (v.s1 * Mat2c::Identity() + v.s2 * direction(g));
  }
  return s;
}

SelfSplit kernel_self_split(const Arc& r, const KernelSplit& split, double t, double tau) {
  return kernel_self_split(split, PairGeometry::self_pair(r, t, tau));
}

SplitKernel maue_tilde(const KernelSplit& split, const PairGeometry& g) {
  const Pde& pde = split.pde();
  if (pde.kind == PdeKind::Elastic) throw InvalidArgument("maue_tilde is defined for scalar kernels");
  SplitKernel k;
  if (pde.kind == PdeKind::Laplace) return k;
  const double kk = pde.helmholtz.kappa;
  cd c = kk * kk * bdot(g.tx, g.ty);
  SplitKernel s = single_layer(split, g);
  k.log_coeff = c * s.log_coeff;
  k.smooth = c * s.smooth;
  return k;
}

cd maue_tilde_helmholtz(const HelmholtzParams& p, const Arc& ri, const Arc& rj, double t, double tau) {
  PairGeometry g = PairGeometry::cross_pair(ri, rj, t, tau);
  return p.kappa * p.kappa * bdot(g.tx, g.ty) * helmholtz_green(p.kappa, g.x, g.y);
}

Mat2c rotation_a() {
  Mat2c a;
  a << 0.0, -1.0, 1.0, 0.0;
  return a;
}

ElasticMaue maue_elastic(const KernelSplit& split, const PairGeometry& g) {
  const Pde& pde = split.pde();
  if (pde.kind != PdeKind::Elastic) throw InvalidArgument("maue_elastic needs an elastic split");
  const ElasticParams& p = pde.elastic;
  const double w2 = p.omega * p.omega, b = p.beta;
  const Mat2c I = Mat2c::Identity(), A = rotation_a();
  cd lg = log_argument(g);
  cd z = g.z();
  WaveSeries s = wave_series(p.ks(), z), q = wave_series(p.kp(), z);
  HelmPieces hs = helm_pieces(s), hp = helm_pieces(q);
  Piece phs = piece(g, hs.f1, hs.f2, lg), php = piece(g, hp.f1, hp.f2, lg);
  Vec2c ni = perp(g.tx), nj = perp(g.ty);
  ElasticMaue out;

  Mat2c np = ni * nj.transpose();
  Mat2c ns = bdot(ni, nj) * I + nj * ni.transpose() - 2.0 * ni * nj.transpose();
  out.k1.log_coeff = w2 * (php.a * np + phs.a * ns);
  out.k1.smooth = w2 * (php.b * np + phs.b * ns);

  SplitKernel gk = single_layer(split, g);
  out.k2.log_coeff = 4.0 * b * b * A * gk.log_coeff * A + 4.0 * b * phs.a * I;
  out.k2.smooth = 4.0 * b * b * A * gk.smooth * A + 4.0 * b * phs.b * I;

  auto [e1, e2] = elastic_h_pieces(p, s, q);
  Piece ph = piece(g, e1, e2, lg);
  Vec2c delta = g.delta();
  Mat2c d3 = ni * delta.transpose() * A;
  Mat2c d4 = A * delta * nj.transpose();
  out.k3.log_coeff = 0.5 * kI * b * ph.a * d3;
  out.k3.smooth = 0.5 * kI * b * ph.b * d3;
  out.k4.log_coeff = -0.5 * kI * b * ph.a * d4;
  out.k4.smooth = -0.5 * kI * b * ph.b * d4;
  return out;
}

std::array<Mat2c, 4> maue_kernels_elastic(const ElasticParams& p, const Arc& ri, const Arc& rj, double t, double tau) {
  ElasticMaue m = maue_elastic(elastic_split(p), PairGeometry::cross_pair(ri, rj, t, tau));
  return {m.k1.smooth, m.k2.smooth, m.k3.smooth, m.k4.smooth};
}

}  // namespace arcwave
