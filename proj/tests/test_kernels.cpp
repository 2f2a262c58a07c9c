#include <doctest.h>

#include <cmath>
#include <random>

#include "arcwave/bessel.hpp"
#include "arcwave/kernels.hpp"
#include "arcwave/oracles.hpp"

using namespace arcwave;

namespace {

Arc flat() { return segment_arc({-1.0, 0.0}, {1.0, 0.0}); }
Arc flat_at(double h) { return segment_arc({-1.0, h}, {1.0, h}); }

Vec2c point(double a, double b) { return Vec2c(a, b); }

double rel(cd a, cd b) { return std::abs(a - b) / std::abs(b); }
double rel(const Mat2c& a, const Mat2c& b) { return (a - b).norm() / b.norm(); }

cd hankel0(double x) { return cd(oracle::hankel1(0, x)); }

// H0(ks d) - H0(kp d) as a function of x for fixed y, in long double.
long double phi_re(const ElasticParams& p, const Eigen::Vector2d& x, const Eigen::Vector2d& y, bool imag) {
  const long double d = std::hypot((long double)(x(0) - y(0)), (long double)(x(1) - y(1)));
  auto h = oracle::hankel1(0, p.ks() * d) - oracle::hankel1(0, p.kp() * d);
  return imag ? h.imag() : h.real();
}

// Closed-contour reconstruction f(z0) = (1/2 pi i) int f(zeta)/(zeta - z0) on |zeta| = R.
cd cauchy(const std::function<cd(cd)>& f, double R, cd z0, int M = 160) {
  cd s = 0.0;
  for (int k = 0; k < M; ++k) {
    cd zeta = std::polar(R, 2 * kPi * k / M);
    s += f(zeta) * zeta / (zeta - z0);
  }
  return s / double(M);
}

// Density u(tau) = w(tau) p(tau) sampled by the midpoint rule in theta.
Vec2c pfun(double t) { return Vec2c(1.0 + 0.5 * t - 0.3 * t * t, cd(0.2, 0.1) - t + 0.4 * t * t * t); }
Vec2c dpfun(double t) { return Vec2c(0.5 - 0.6 * t, -1.0 + 1.2 * t * t); }

template <class F>
Vec2c integrate_density(F f, int nq = 600) {
  Vec2c s = Vec2c::Zero();
  for (int i = 0; i < nq; ++i) {
    const double th = (i + 0.5) * kPi / nq, t = std::cos(th), st = std::sin(th);
    Vec2c u = pfun(t) * st * st * (kPi / nq);
    Vec2c du = (-t * pfun(t) + st * st * dpfun(t)) * (kPi / nq);
    s += f(t, u, du);
  }
  return s;
}

}  // namespace

TEST_CASE("helmholtz_green: tabulated Bessel values at kappa d = 1") {
  const cd expected = 0.25 * kI * cd(0.7651976866, 0.0882569642);
  CHECK(std::abs(helmholtz_green(1.0, point(0, 0), point(0.6, 0.8)) - expected) < 1e-10);
  CHECK(rel(helmholtz_green(1.0, point(0, 0), point(1, 0)), oracle::helmholtz_green(1.0, 1.0)) < 1e-14);
}

TEST_CASE("helmholtz_green: logarithmic growth and symmetry") {
  for (double d : {1e-6, 1e-8, 1e-10}) {
    const double ratio = std::abs(helmholtz_green(2.0, point(0, 0), point(d, 0))) / std::abs(std::log(d));
    CHECK(ratio == doctest::Approx(1.0 / (2 * kPi)).epsilon(0.1));
  }
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 10; ++k) {
    Vec2c x = point(u(rng), u(rng)), y = point(u(rng), u(rng));
    CHECK(helmholtz_green(3.0, x, y) == helmholtz_green(3.0, y, x));
  }
}

TEST_CASE("helmholtz_green: PDE residual by the five-point Laplacian") {
  const double k = 2.5, h = 1e-4;
  Vec2c y = point(0.1, -0.2);
  for (Vec2c x : {point(1.0, 0.3), point(-0.4, 0.7), point(2.0, -1.5)}) {
    auto G = [&](double dx, double dy) { return helmholtz_green(k, x + point(dx, dy), y); };
    cd lap = (G(h, 0) + G(-h, 0) + G(0, h) + G(0, -h) - 4.0 * G(0, 0)) / (h * h);
    CHECK(std::abs(-lap - k * k * G(0, 0)) < 1e-4 * std::abs(G(0, 0)));
  }
}

TEST_CASE("helmholtz_split: F1(0) and reconstruction") {
  KernelSplit s = helmholtz_split({2.0});
  CHECK(std::abs(s.F1_at_zero() + 1.0 / (4 * kPi)) < 1e-16);
  CHECK(std::abs(s.F1_at_zero() * (-4 * kPi) - 1.0) < 1e-15);  // J0(0) = 1
  const cd z = 0.25;
  CHECK(rel(s.F1(z) * std::log(z) + s.F2(z), oracle::helmholtz_green(2.0, 0.5)) < 1e-11);
  for (double k : {0.5, 1.0, 5.0}) {
    KernelSplit sk = helmholtz_split({k});
    for (double d : {1e-3, 0.1, 0.9, 2.0}) {
      cd zz = d * d;
      CHECK(rel(sk.F1(zz) * std::log(zz) + sk.F2(zz), oracle::helmholtz_green(k, d)) < 1e-11);
    }
  }
}

TEST_CASE("elastic_green: symmetry and axis alignment") {
  ElasticParams p;
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 10; ++k) {
    Vec2c x = point(u(rng), u(rng)), y = point(u(rng), u(rng));
    Mat2c G = elastic_green(p, x, y);
    CHECK(std::abs(G(0, 1) - G(1, 0)) < 1e-13 * G.norm());
    CHECK((G - elastic_green(p, y, x).transpose()).norm() < 1e-13 * G.norm());
  }
  Mat2c G = elastic_green(p, point(0.3, 0.0), point(-0.9, 0.0));
  CHECK(G(1, 1) == elastic_radial(p, 1.2).g1);
  CHECK(std::abs(G(0, 1)) == 0.0);
}

TEST_CASE("elastic_green: finite-difference double gradient of the potential form") {
  ElasticParams p{2.0, 1.0, 1.0};
  Eigen::Vector2d x(0.2, 0.1), y = x + Eigen::Vector2d(0.6, 0.8);
  const double h = 1e-5;
  Mat2c hess;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      Eigen::Vector2d ea = Eigen::Vector2d::Unit(a) * h, eb = Eigen::Vector2d::Unit(b) * h;
      cd v;
      for (bool im : {false, true}) {
        long double f = phi_re(p, x + ea + eb, y, im) - phi_re(p, x + ea - eb, y, im) -
                        phi_re(p, x - ea + eb, y, im) + phi_re(p, x - ea - eb, y, im);
        (im ? v.imag(double(f / (4.0L * h * h))) : v.real(double(f / (4.0L * h * h))));
      }
      hess(a, b) = v;
    }
  Mat2c direct = kI / (4 * p.beta) * hankel0(p.ks()) * Mat2c::Identity() + kI / (4 * p.omega * p.omega) * hess;
  Mat2c G = elastic_green(p, x.cast<cd>(), y.cast<cd>());
  CHECK((G - direct).cwiseAbs().maxCoeff() < 1e-6);
  CHECK((G - oracle::elastic_green(p, x, y)).norm() < 1e-13);
}

TEST_CASE("elastic_split: values at zero and reconstruction") {
  ElasticParams p{2.0, 1.0, 1.0};
  KernelSplit s = elastic_split(p);
  SplitValues v0 = s.evaluate(0.0);
  CHECK(std::abs(v0.a2) == 0.0);
  const double j1 = -1.0 / (4 * kPi * p.beta) - (p.kp() * p.kp() - p.ks() * p.ks()) / (8 * kPi * p.omega * p.omega);
  CHECK(std::abs(v0.a1 - j1) < 1e-15);
  CHECK(std::abs(s.F1_at_zero() - j1) < 1e-15);
  for (double ang : {0.0, 0.4, 2.0}) {
    Eigen::Vector2d x(0.1, 0.2), y = x + 0.7 * Eigen::Vector2d(std::cos(ang), std::sin(ang));
    Eigen::Vector2d d = x - y;
    Mat2c D = (d * d.transpose() / d.squaredNorm()).cast<cd>();
    cd z = d.squaredNorm();
    Mat2c split = s.F1(z, D) * std::log(z) + s.F2(z, D);
    CHECK(rel(split, oracle::elastic_green(p, x, y)) < 1e-10);
  }
}

TEST_CASE("split pieces are entire: Cauchy reconstruction on |z| <= 4") {
  KernelSplit h = helmholtz_split({1.5});
  KernelSplit e = elastic_split({2.0, 1.0, 1.3});
  for (cd z0 : {cd(1.5, 0.0), cd(-0.7, 2.1), cd(0.0, -2.5)}) {
    CHECK(std::abs(cauchy([&](cd z) { return h.F1(z); }, 4.0, z0) - h.F1(z0)) < 1e-9);
    CHECK(std::abs(cauchy([&](cd z) { return h.F2(z); }, 4.0, z0) - h.F2(z0)) < 1e-9);
    for (int c = 0; c < 4; ++c) {
      auto pick = [&](cd z) {
        SplitValues v = e.evaluate(z);
        return c == 0 ? v.a1 : c == 1 ? v.a2 : c == 2 ? v.b1 : v.b2;
      };
      CHECK(std::abs(cauchy(pick, 4.0, z0) - pick(z0)) < 1e-9);
    }
  }
}

TEST_CASE("kernel_self_split: straight arc in the Laplace limit") {
  KernelSplit s = laplace_split();
  for (double t : {-0.7, 0.2})
    for (double tau : {0.5, -0.9, t}) CHECK(kernel_self_split(flat(), s, t, tau).g_r.norm() == 0.0);
}

TEST_CASE("kernel_self_split: reconstruction off the diagonal") {
  Arc c = circular_arc({0.2, -0.1}, 1.3, 0.5, 0.9);
  for (const Pde& pde : {Pde::make_helmholtz(2.0), Pde::make_elastic(2.0, 1.0, 1.5)}) {
    KernelSplit s(pde);
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      double t = u(rng), tau = u(rng);
      SelfSplit ss = kernel_self_split(c, s, t, tau);
      const double lt = std::log(std::abs(t - tau));
      Mat2c rebuilt = ss.g_r + 2.0 * lt * s.F1_at_zero() * Mat2c::Identity() + 2.0 * (t - tau) * (t - tau) * lt * ss.f_s2;
      Mat2c direct = green(pde, eval_arc(c, t), eval_arc(c, tau));
      if (pde.kind == PdeKind::Helmholtz) {
        rebuilt(0, 1) = rebuilt(1, 0) = rebuilt(1, 1) = 0.0;
        direct(0, 1) = direct(1, 0) = direct(1, 1) = 0.0;
      }
      worst = std::max(worst, rel(rebuilt, direct));
    }
    CHECK(worst < 1e-11);
  }
}

TEST_CASE("kernel_self_split: f_S2 on the diagonal is F1'(0) r'.r'") {
  Arc c = circular_arc({0.0, 0.0}, 1.0, 0.3, 0.7);
  KernelSplit s = helmholtz_split({2.0});
  const double h = 1e-4;
  cd d1 = (s.F1(cd(h)) - s.F1(cd(-h))) / (2 * h);
  for (double t : {-0.5, 0.0, 0.8}) {
    Vec2c r1 = eval_tangent(c, t);
    CHECK(std::abs(kernel_self_split(c, s, t, t).f_s2(0, 0) - d1 * bdot(r1, r1)) < 1e-8);
  }
}

TEST_CASE("maue_tilde_helmholtz: structure") {
  Arc a = flat(), b = flat_at(1.0);
  for (double t : {-0.3, 0.6})
    for (double tau : {0.1, -0.8}) {
      CHECK(std::abs(maue_tilde_helmholtz({1e-8}, a, b, t, tau)) < 1e-15);
      const double k = 1.7;
      cd g = helmholtz_green(k, eval_arc(a, t), eval_arc(b, tau));
      CHECK(std::abs(maue_tilde_helmholtz({k}, a, b, t, tau) - k * k * g) < 1e-15);
    }
  Arc c = circular_arc({0.0, 0.0}, 1.0, 0.3, 0.7);
  CHECK(std::abs(maue_tilde_helmholtz({2.0}, c, c, 0.3, -0.6) - maue_tilde_helmholtz({2.0}, c, c, -0.6, 0.3)) <
        1e-15);
}

TEST_CASE("maue_kernels_elastic: rotation identity and second kernel") {
  Mat2c A = rotation_a();
  CHECK((A * A + Mat2c::Identity()).norm() == 0.0);
  ElasticParams p{2.0, 1.0, 1.3};
  Arc a = flat(), b = circular_arc({0.0, 2.0}, 0.8, -1.0, 0.6);
  for (double t : {-0.4, 0.7}) {
    Vec2c x = eval_arc(a, t), y = eval_arc(b, -0.2);
    auto k = maue_kernels_elastic(p, a, b, t, -0.2);
    const double d = std::abs(std::sqrt(bdot(Vec2c(x - y), Vec2c(x - y))));
    Mat2c expected = 4 * p.beta * p.beta * A * elastic_green(p, x, y) * A + kI * p.beta * hankel0(p.ks() * d) * Mat2c::Identity();
    CHECK(rel(k[1], expected) < 1e-12);
  }
}

TEST_CASE("maue_kernels_elastic: third and fourth kernels stay bounded as arcs meet") {
  ElasticParams p{2.0, 1.0, 1.3};
  auto at = [&](double d) { return maue_kernels_elastic(p, flat(), flat_at(d), 0.1, 0.1); };
  auto near = at(1e-6), nearer = at(1e-8);
  for (int m : {2, 3}) {
    CHECK(near[m].allFinite());
    CHECK(nearer[m].allFinite());
    CHECK((near[m] - nearer[m]).norm() < 1e-4 * std::max(1.0, near[m].norm()));
  }
}

TEST_CASE("Maue representation matches the normal derivative of the double layer") {
  Arc arc = circular_arc({0.0, 0.0}, 1.0, 0.3, 0.7);
  Vec2c x(0.3, 0.45), tx(std::cos(0.4), std::sin(0.4));
  Vec2c nx = perp(tx);
  const double h = 1e-4;

  SUBCASE("helmholtz") {
    Pde pde = Pde::make_helmholtz(1.7);
    const double k = 1.7;
    auto dl = [&](const Vec2c& xx) {
      return integrate_density([&](double t, const Vec2c& u, const Vec2c&) {
        return Vec2c(double_layer_kernel(pde, xx, eval_arc(arc, t), perp(eval_tangent(arc, t)))(0, 0) * u(0), 0.0);
      })(0);
    };
    auto sl = [&](const Vec2c& xx) {
      return integrate_density([&](double t, const Vec2c&, const Vec2c& du) {
        return Vec2c(helmholtz_green(k, xx, eval_arc(arc, t)) * du(0), 0.0);
      })(0);
    };
    cd lhs = (dl(x + h * nx) - dl(x - h * nx)) / (2 * h);
    cd tangential = (sl(x + h * tx) - sl(x - h * tx)) / (2 * h);
    cd smooth = integrate_density([&](double t, const Vec2c& u, const Vec2c&) {
      return Vec2c(k * k * bdot(tx, eval_tangent(arc, t)) * helmholtz_green(k, x, eval_arc(arc, t)) * u(0), 0.0);
    })(0);
    CHECK(std::abs(lhs - tangential - smooth) < 1e-7 * std::abs(lhs));
  }

  SUBCASE("elastic") {
    Pde pde = Pde::make_elastic(2.0, 1.0, 1.3);
    KernelSplit sp = elastic_split(pde.elastic);
    auto geo = [&](const Vec2c& xx, double t) {
      PairGeometry g;
      g.x = xx;
      g.tx = tx;
      g.y = eval_arc(arc, t);
      g.ty = eval_tangent(arc, t);
      return g;
    };
    auto dl = [&](const Vec2c& xx) {
      return integrate_density([&](double t, const Vec2c& u, const Vec2c&) {
        return Vec2c(double_layer_kernel(pde, xx, eval_arc(arc, t), perp(eval_tangent(arc, t))) * u);
      });
    };
    Mat2c grad;
    for (int b = 0; b < 2; ++b) {
      Vec2c e = Vec2c::Zero();
      e(b) = 1.0;
      grad.col(b) = (dl(x + h * e) - dl(x - h * e)) / (2 * h);
    }
    Vec2c lhs = elastic_traction(pde.elastic, grad, nx);
    auto with = [&](int m, bool deriv, const Vec2c& xx) {
      return integrate_density([&](double t, const Vec2c& u, const Vec2c& du) {
        ElasticMaue km = maue_elastic(sp, geo(xx, t));
        const SplitKernel& kk = m == 1 ? km.k1 : m == 2 ? km.k2 : m == 3 ? km.k3 : km.k4;
        return Vec2c(kk.smooth * (deriv ? du : u));
      });
    };
    Vec2c rhs = with(1, false, x) + (with(2, true, x + h * tx) - with(2, true, x - h * tx)) / (2 * h) +
                with(3, true, x) + (with(4, false, x + h * tx) - with(4, false, x - h * tx)) / (2 * h);
    CHECK((lhs - rhs).norm() < 1e-7 * lhs.norm());
  }
}
