#include <doctest.h>

#include <cmath>
#include <random>

#include "arcwave/oracles.hpp"
#include "arcwave/spectral.hpp"

using namespace arcwave;

namespace {

VectorXcd sample(const std::vector<double>& t, const std::function<cd(double)>& f) {
  VectorXcd v(t.size());
  for (size_t k = 0; k < t.size(); ++k) v[k] = f(t[k]);
  return v;
}

double w(double t) { return std::sqrt(1.0 - t * t); }

VectorXcd unit(int n, int k) {
  VectorXcd e = VectorXcd::Zero(n);
  e[k] = 1.0;
  return e;
}

}  // namespace

TEST_CASE("analyze: normalized T_3/w in TW is e_3") {
  auto t = chebyshev_nodes(16, Basis::TW);
  SpectralDensity d = analyze(sample(t, [](double x) { return t_norm(3) * std::cos(3 * std::acos(x)) / w(x); }),
                              Basis::TW);
  CHECK((d.coeffs - unit(16, 3)).norm() < 1e-13);
}

TEST_CASE("analyze: u = 1 expands as sqrt(pi) That_0 in the plain first-kind family") {
  auto t = chebyshev_nodes(12, Basis::T_plain);
  SpectralDensity d = analyze(sample(t, [](double) { return cd(1.0); }), Basis::T_plain);
  CHECK(std::abs(d.coeffs[0] - std::sqrt(kPi)) < 1e-14);
  CHECK(d.coeffs.tail(11).norm() < 1e-14);
  // The TW pairing of u = 1 is int That_0 dt = 2/sqrt(pi).
  SpectralDensity tw = analyze(sample(chebyshev_nodes(64, Basis::TW), [](double) { return cd(1.0); }), Basis::TW);
  CHECK(std::abs(tw.coeffs[0] - 2.0 / std::sqrt(kPi)) < 1e-3);
}

TEST_CASE("analyze: t^2 against direct quadrature of int t^2 That_n / w") {
  auto t = chebyshev_nodes(10, Basis::T_plain);
  SpectralDensity d = analyze(sample(t, [](double x) { return cd(x * x); }), Basis::T_plain);
  for (int n = 0; n < 10; ++n) {
    cd q = oracle::integrate([n](double th) { return cd(std::pow(std::cos(th), 2) * t_norm(n) * std::cos(n * th)); },
                             0.0, kPi);
    CHECK(std::abs(d.coeffs[n] - q) < 1e-13);
  }
}

TEST_CASE("analyze: fast and naive transforms agree for every family") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (Basis b : {Basis::TW, Basis::WU, Basis::T_plain, Basis::U_plain})
    for (int n : {1, 2, 9, 32}) {
      VectorXcd v(n);
      for (int k = 0; k < n; ++k) v[k] = cd(g(rng), g(rng));
      CHECK((analyze(v, b).coeffs - analyze_naive(v, b).coeffs).norm() < 1e-12 * v.norm() * n);
    }
}

TEST_CASE("synthesize: point values") {
  CHECK(std::abs(synthesize_at(SpectralDensity(unit(3, 0), Basis::TW), 0.0) - 1.0 / std::sqrt(kPi)) < 1e-15);
  CHECK(std::abs(synthesize_at(SpectralDensity(unit(3, 1), Basis::WU), 0.0)) < 1e-15);
}

TEST_CASE("synthesize: random degree-8 series against term-by-term sums") {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(-0.99, 0.99);
  for (Basis b : {Basis::TW, Basis::WU, Basis::T_plain, Basis::U_plain}) {
    VectorXcd c(9);
    for (int k = 0; k < 9; ++k) c[k] = cd(g(rng), g(rng));
    std::vector<double> pts(5);
    for (double& p : pts) p = u(rng);
    VectorXcd got = synthesize(SpectralDensity(c, b), pts);
    for (size_t i = 0; i < pts.size(); ++i) {
      const double th = std::acos(pts[i]);
      cd sum = 0.0;
      for (int n = 0; n < 9; ++n) {
        double phi = is_first_kind(b) ? t_norm(n) * std::cos(n * th) : u_norm() * std::sin((n + 1) * th) / std::sin(th);
        if (b == Basis::TW) phi /= w(pts[i]);
        if (b == Basis::WU) phi *= w(pts[i]);
        sum += c[n] * phi;
      }
      CHECK(std::abs(got[i] - sum) < 1e-12 * (1.0 + std::abs(sum)));
    }
  }
}

TEST_CASE("round trip: synthesize at nodes then analyze") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  for (Basis b : {Basis::TW, Basis::WU, Basis::T_plain, Basis::U_plain}) {
    VectorXcd c(2 * 17);
    for (auto& x : c) x = cd(g(rng), g(rng));
    SpectralDensity d(c, b, 2);
    auto t = chebyshev_nodes(17, b);
    VectorXcd v0 = synthesize(SpectralDensity(d.component(0), b), t), v1 = synthesize(SpectralDensity(d.component(1), b), t);
    VectorXcd back(34);
    back << analyze(v0, b).coeffs, analyze(v1, b).coeffs;
    CHECK((back - c).norm() < 1e-12 * c.norm());
  }
}

TEST_CASE("lift: worked values") {
  const int L = 8;
  auto th = periodic_grid(L);
  VectorXcd ones = VectorXcd::Ones(L);
  CHECK((lift(ones, Lifting::Nhat) - ones).norm() == 0.0);
  CHECK(std::abs(th[6] - kPi / 2) < 1e-15);
  CHECK(std::abs(lift(ones, Lifting::N)[6] - 1.0) < 1e-15);
  VectorXcd u(L);
  for (int k = 0; k < L; ++k) u[k] = std::cos(th[k]);
  CHECK(std::abs(th[3] + kPi / 4) < 1e-15);
  CHECK(std::abs(lift(u, Lifting::Zhat)[3] + std::sqrt(2.0) / 2) < 1e-15);
  CHECK_THROWS_AS(lift(VectorXcd::Ones(6), Lifting::N), InvalidArgument);
}

TEST_CASE("sobolev norm: worked values") {
  CHECK(sobolev_norm(SpectralDensity(unit(5, 0), Basis::TW), 2.7).value == doctest::Approx(1.0));
  CHECK(sobolev_norm(SpectralDensity(unit(5, 3), Basis::TW), 1.0).value == doctest::Approx(std::sqrt(10.0)));
  SpectralDensity one = analyze(VectorXcd::Ones(8), Basis::T_plain);
  CHECK(sobolev_norm(one, 0.0).value == doctest::Approx(std::sqrt(kPi)).epsilon(1e-14));
}

TEST_CASE("derivative: w U_n maps to -(n+1) T_{n+1}/w, checked by finite differences") {
  for (int n : {0, 3}) {
    SpectralDensity mu(unit(n + 1, n), Basis::WU);
    SpectralDensity d = derivative(mu);
    CHECK(d.basis == Basis::TW);
    CHECK(std::abs(d.coeffs[n + 1] + double(n + 1)) < 1e-15);
    const double h = 1e-3;
    auto f = [&](double x) { return synthesize_at(mu, x); };
    for (int k = 0; k < 20; ++k) {
      double t = -0.8 + 1.6 * k / 19.0;
      cd fd = (-f(t + 2 * h) + 8.0 * f(t + h) - 8.0 * f(t - h) + f(t - 2 * h)) / (12 * h);
      CHECK(std::abs(synthesize_at(d, t) - fd) < 1e-8);
    }
  }
  SpectralDensity zero(VectorXcd::Zero(4), Basis::WU);
  CHECK(derivative(zero).coeffs.norm() == 0.0);
}

TEST_CASE("antiderivative inverts the WU derivative") {
  VectorXcd c(6);
  c << 1.0, cd(0.0, 2.0), -0.5, 0.25, 0.0, 3.0;
  SpectralDensity mu(c, Basis::WU);
  SpectralDensity back = antiderivative(derivative(mu));
  CHECK((back.coeffs.head(6) - c).norm() < 1e-14);
}

TEST_CASE("classical coefficients round trip") {
  VectorXcd c(5);
  c << 1.0, 2.0, cd(0.0, 1.0), -1.0, 0.5;
  for (Basis b : {Basis::TW, Basis::WU, Basis::T_plain, Basis::U_plain}) {
    SpectralDensity d(c, b);
    CHECK((from_classical(to_classical(d), b).coeffs - c).norm() < 1e-14);
  }
}

TEST_CASE("bi-periodic norm: worked values") {
  const int L = 16;
  auto th = periodic_grid(L);
  MatrixXcd one = MatrixXcd::Ones(L, L);
  CHECK(biperiodic_sobolev_norm(one, 1.3, 0.4) == doctest::Approx(2 * kPi).epsilon(1e-14));
  MatrixXcd e1(L, L);
  for (int a = 0; a < L; ++a)
    for (int b = 0; b < L; ++b) e1(a, b) = std::exp(kI * th[a]) / (2 * kPi);
  CHECK(biperiodic_sobolev_norm(e1, 1.0, 0.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  auto smooth = [](int n) {
    auto g = periodic_grid(n);
    MatrixXcd m(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) m(a, b) = std::cos(g[a]) * std::cos(g[b]);
    return m;
  };
  double n32 = biperiodic_sobolev_norm(smooth(32), 2, 2), n64 = biperiodic_sobolev_norm(smooth(64), 2, 2);
  CHECK(std::abs(n32 - n64) < 1e-10 * n64);
  CHECK_THROWS_AS(biperiodic_sobolev_norm(MatrixXcd::Ones(12, 16), 1, 1), InvalidArgument);
}

TEST_CASE("dct2 and dst1 against their definitions") {
  VectorXcd x(7);
  x << 1.0, -2.0, cd(0.5, 1.0), 0.0, 3.0, cd(0.0, -1.0), 2.0;
  CHECK((dct2(x) - dct2_naive(x)).norm() < 1e-13);
  CHECK((dst1(x) - dst1_naive(x)).norm() < 1e-13);
}

TEST_CASE("decay fit") {
  VectorXd c(30);
  for (int k = 0; k < 30; ++k) c[k] = 3.0 * std::pow(2.0, -k);
  DecayFit f = fit_geometric_decay(c);
  CHECK(f.rho == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(f.residual < 1e-10);
  // Parity staircase: odd coefficients vanish.
  for (int k = 1; k < 30; k += 2) c[k] = 0.0;
  CHECK(fit_geometric_decay(c).residual < 1e-10);
  // A rounding plateau does not flatten the fitted rate.
  VectorXd p(60);
  for (int k = 0; k < 60; ++k) p[k] = k < 20 ? std::pow(5.0, -k) : 1e-15 * (1 + (k % 3));
  CHECK(fit_geometric_decay(p).rho > 4.0);
  // Constant sequence tail below the floor: infinite rate.
  VectorXd one = VectorXd::Zero(10);
  one[0] = 1.0;
  CHECK(std::isinf(fit_geometric_decay(one).rho));
  CHECK_THROWS_AS(fit_geometric_decay(c, 0), InvalidArgument);
}
