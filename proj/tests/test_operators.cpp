#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "arcwave/operators.hpp"
#include "arcwave/oracles.hpp"

using namespace arcwave;

namespace {

Arc flat() { return segment_arc({-1.0, 0.0}, {1.0, 0.0}); }
Arc flat_at(double h) { return segment_arc({-1.0, h}, {1.0, h}); }

VectorXcd unit(int n, int k) {
  VectorXcd e = VectorXcd::Zero(n);
  e[k] = 1.0;
  return e;
}

// Value at t of the range expansion produced by a block acting on coefficients c.
cd apply_at(const OperatorBlock& b, const VectorXcd& c, double t) {
  return oracle::range_value(b.matrix * c, b.range, 1, t)(0);
}

// int f(t, tau) sum_n c_n That_n(tau) / w(tau) dtau in the theta variable, split at tau = t.
cd quad_tw(const std::function<cd(double, double)>& f, const VectorXcd& c, double t) {
  return oracle::integrate(
      [&](double th) {
        cd s = 0.0;
        for (int n = 0; n < c.size(); ++n) s += c[n] * t_norm(n) * std::cos(n * th);
        return f(t, std::cos(th)) * s;
      },
      0.0, kPi, {std::acos(t)});
}

double max_abs(const MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("assemble_smooth: constant kernel") {
  OperatorBlock b = assemble_smooth([](double, double) { return cd(1.0); }, 8);
  CHECK(b.domain == Basis::TW);
  CHECK(b.range == Basis::T_plain);
  // int That_0/w = sqrt(pi), and the constant sqrt(pi) has T_plain coefficient pi.
  CHECK(std::abs(b.matrix(0, 0) - kPi) < 1e-13);
  MatrixXcd rest = b.matrix;
  rest(0, 0) = 0.0;
  CHECK(max_abs(rest) < 1e-13);
}

TEST_CASE("assemble_smooth: separable kernel is rank one") {
  OperatorBlock b = assemble_smooth([](double t, double tau) { return cd(t * tau); }, 10);
  Eigen::JacobiSVD<MatrixXcd> svd(b.matrix);
  auto s = svd.singularValues();
  CHECK(s[0] > 0.1);
  CHECK(s[1] < 1e-13 * s[0]);
}

TEST_CASE("assemble_smooth: random quartic kernel against quadrature") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> g;
  MatrixXcd a(5, 5);
  for (auto& x : a.reshaped()) x = cd(g(rng), g(rng));
  auto f = [&](double t, double tau) {
    cd s = 0.0;
    for (int k = 0; k < 5; ++k)
      for (int l = 0; l < 5; ++l) s += a(k, l) * std::pow(t, k) * std::pow(tau, l);
    return s;
  };
  const int N = 9;
  VectorXcd c(N + 1);
  for (auto& x : c) x = cd(g(rng), g(rng));
  for (Basis dom : {Basis::TW, Basis::WU}) {
    OperatorBlock b = assemble_smooth(f, N, dom);
    for (double t : {-0.93, -0.2, 0.41, 0.88}) {
      cd q = dom == Basis::TW ? quad_tw(f, c, t)
                              : oracle::integrate(
                                    [&](double th) {
                                      cd s = 0.0;
                                      for (int n = 0; n <= N; ++n) s += c[n] * u_norm() * std::sin((n + 1) * th);
                                      return f(t, std::cos(th)) * s * std::sin(th);
                                    },
                                    0.0, kPi);
      CHECK(std::abs(apply_at(b, c, t) - q) < 1e-10 * (1.0 + std::abs(q)));
    }
  }
}

TEST_CASE("assemble_log: classical log moments") {
  OperatorBlock b = assemble_log([](double, double) { return cd(1.0); }, 6);
  // Classical T_0/w and T_3/w in the orthonormal family.
  VectorXcd c0 = std::sqrt(kPi) * unit(7, 0), c3 = std::sqrt(kPi / 2) * unit(7, 3);
  for (double t : {-0.8, 0.0, 0.35, 0.9}) {
    CHECK(std::abs(apply_at(b, c0, t) + kPi * std::log(2.0)) < 1e-13);
    CHECK(std::abs(apply_at(b, c3, t) + kPi / 3 * std::cos(3 * std::acos(t))) < 1e-13);
    CHECK(std::abs(apply_at(b, c0, t) - quad_tw([](double t, double tau) { return cd(std::log(std::abs(t - tau))); },
                                               c0, t)) < 1e-11);
  }
  CHECK(max_abs(b.matrix * VectorXcd::Zero(7)) == 0.0);
}

TEST_CASE("assemble_logsq: agrees with the log path on (t - tau)^2 f") {
  auto f = [](double t, double tau) { return std::exp(cd(0.3 * t, tau)); };
  auto g = [&](double t, double tau) { return (t - tau) * (t - tau) * f(t, tau); };
  for (Basis dom : {Basis::TW, Basis::WU}) {
    MatrixXcd sq = assemble_logsq(f, 12, dom).matrix, lg = assemble_log(g, 12, dom).matrix;
    CHECK(max_abs(sq - lg) < 1e-12);
  }
}

TEST_CASE("assemble_logsq: quadrature and smoothing") {
  auto one = [](double, double) { return cd(1.0); };
  OperatorBlock b = assemble_logsq(one, 10);
  VectorXcd c = unit(11, 1) + 0.5 * unit(11, 4);
  for (double t : {-0.6, 0.1, 0.77}) {
    cd q = quad_tw([](double t, double tau) { return (t - tau) * (t - tau) * std::log(std::abs(t - tau)); }, c, t);
    CHECK(std::abs(apply_at(b, c, t) - q) < 1e-9);
  }
  OperatorBlock e = assemble_logsq([](double t, double tau) { return std::exp(cd(t * tau)); }, 30);
  VectorXd col = e.matrix.col(0).cwiseAbs();
  CHECK(fit_geometric_decay(col).rho > 1.0);
}

TEST_CASE("V_self on the segment") {
  OperatorBlock lap = assemble_V_self(flat(), laplace_split(), 8);
  CHECK(std::abs(lap.matrix(0, 0) - std::log(2.0) / 2) < 1e-13);
  KernelSplit h = helmholtz_split({1.0});
  OperatorBlock b = assemble_V_self(flat(), h, 16);
  VectorXcd c = unit(17, 2);
  const Pde pde = Pde::make_helmholtz(1.0);
  cd direct = oracle::single_layer_at(pde, {flat()}, 0, 0, SpectralDensity(c, Basis::TW), 0.3)(0);
  CHECK(std::abs(apply_at(b, c, 0.3) - direct) < 1e-8);
  CHECK(max_abs(b.matrix - b.matrix.transpose()) < 1e-10);
  Arc c2 = circular_arc({0.0, 0.0}, 1.0, 0.4, 0.8);
  MatrixXcd m = assemble_V_self(c2, h, 16).matrix;
  CHECK(max_abs(m - m.transpose()) < 1e-10);
}

TEST_CASE("V_self: singular values decay to zero") {
  MatrixXcd m = assemble_V_self(flat(), laplace_split(), 40).matrix;
  Eigen::VectorXd s = Eigen::JacobiSVD<MatrixXcd>(m).singularValues();
  CHECK(s[40] < s[20]);
  CHECK(s[40] < 0.02);
}

TEST_CASE("V_cross: sup bound, reciprocity and decay with distance") {
  KernelSplit h = helmholtz_split({1.0});
  OperatorBlock near = assemble_V_cross(flat(), flat_at(5.0), h, 12);
  // |entry| <= sup|G| (int |That_n|/w)^2 <= 2 pi sup|G|, and |G| decreases on [5, sqrt(29)].
  CHECK(max_abs(near.matrix) <= 2 * kPi * std::abs(oracle::helmholtz_green(1.0, 5.0)));
  OperatorBlock back = assemble_V_cross(flat_at(5.0), flat(), h, 12);
  CHECK(max_abs(near.matrix - back.matrix.transpose()) < 1e-10);
  OperatorBlock far = assemble_V_cross(flat(), flat_at(100.0), h, 12);
  CHECK(far.matrix.norm() < near.matrix.norm());
  CHECK_THROWS_AS(assemble_system({flat(), segment_arc({1.0, 0.0}, {2.0, 1.0})}, Pde::make_helmholtz(1.0),
                               Problem::Dirichlet, 8), GeometryError);
}

TEST_CASE("W block: Laplace limit on the segment is diagonal") {
  OperatorBlock w = assemble_W_block({flat()}, 0, 0, laplace_split(), 12);
  CHECK(w.domain == Basis::WU);
  CHECK(w.range == Basis::U_plain);
  for (int n = 0; n < 8; ++n) CHECK(std::abs(w.matrix(n, n) - oracle::laplace_segment_w_eigenvalue(n)) < 1e-12);
  MatrixXcd off = w.matrix.topLeftCorner(8, 8);
  off.diagonal().setZero();
  CHECK(max_abs(off) < 1e-12);
  CHECK(max_abs(w.matrix * VectorXcd::Zero(13)) == 0.0);
}

TEST_CASE("W block: Helmholtz against the pointwise Maue form") {
  const Pde pde = Pde::make_helmholtz(1.0);
  std::vector<Arc> arcs = {flat(), circular_arc({0.0, 2.0}, 0.7, -1.2, 0.5)};
  const int N = 20, modes = 6;
  for (int j : {0, 1}) {
    OperatorBlock w = assemble_W_block(arcs, 0, j, KernelSplit(pde), N);
    for (double t : {-0.5, 0.2, 0.7}) {
      MatrixXcd cols = oracle::hypersingular_columns(pde, arcs, 0, j, modes, t);
      for (int n = 0; n < modes; ++n)
        CHECK(std::abs(apply_at(w, unit(N + 1, n), t) - cols(0, n)) < 1e-8);
    }
  }
}

TEST_CASE("assemble_system: bookkeeping and mirror symmetry") {
  const Pde pde = Pde::make_helmholtz(1.5);
  Arc a = circular_arc({0.0, 1.0}, 0.8, -1.0, 0.7);
  BlockSystem one = assemble_system({a}, pde, Problem::Dirichlet, 10);
  CHECK(max_abs(one.dense() - assemble_V_self(a, KernelSplit(pde), 10).matrix) == 0.0);

  // Reflection across the x-axis keeps the parametrization and all distances.
  Arc m = a;
  m.y = -a.y;
  BlockSystem two = assemble_system({a, m}, pde, Problem::Dirichlet, 10);
  CHECK(max_abs(two.blocks[0][0].matrix - two.blocks[1][1].matrix) < 1e-12);
  CHECK(max_abs(two.blocks[0][1].matrix - two.blocks[1][0].matrix.transpose()) < 1e-10);

  BlockSystem three = assemble_system({flat(), flat_at(3.0), flat_at(-3.0)}, Pde::make_elastic(2, 1, 1), Problem::Neumann, 6);
  CHECK(three.dense().rows() == 3 * 2 * 7);
  CHECK(three.dense().cols() == 3 * 2 * 7);
  CHECK(three.blocks[0][0].components == 2);
}

TEST_CASE("solve_system: Laplace limit on the segment") {
  BlockSystem d = assemble_system({flat()}, Pde::laplace(), Problem::Dirichlet, 8);
  SolveResult r = solve_system(d, {SpectralDensity(std::sqrt(kPi) * unit(9, 0), Basis::T_plain)});
  CHECK(std::abs(r.densities[0].coeffs[0] - 2 * std::sqrt(kPi) / std::log(2.0)) < 1e-12);
  CHECK(r.densities[0].coeffs.tail(8).norm() < 1e-12);

  BlockSystem n = assemble_system({flat()}, Pde::laplace(), Problem::Neumann, 8);
  SolveResult s = solve_system(n, {SpectralDensity(unit(9, 2), Basis::U_plain)});
  CHECK(s.densities[0].basis == Basis::WU);
  CHECK((s.densities[0].coeffs - unit(9, 2) / -1.5).norm() < 1e-12);
}

TEST_CASE("solve_system: recovers a known density") {
  std::mt19937_64 rng(22);
  std::normal_distribution<double> g;
  for (const Pde& pde : {Pde::make_helmholtz(2.0), Pde::make_elastic(2.0, 1.0, 1.2)})
    for (Problem p : {Problem::Dirichlet, Problem::Neumann}) {
      std::vector<Arc> arcs = {circular_arc({0.0, 0.0}, 1.0, 0.3, 0.6), flat_at(-1.5)};
      BlockSystem sys = assemble_system(arcs, pde, p, 12);
      VectorXcd x(sys.dense().cols());
      for (auto& v : x) v = cd(g(rng), g(rng));
      VectorXcd b = sys.dense() * x;
      const int n = sys.block_size();
      Basis range = p == Problem::Dirichlet ? Basis::T_plain : Basis::U_plain;
      SolveResult r = solve_system(sys, {SpectralDensity(b.head(n), range, pde.components()),
                                         SpectralDensity(b.tail(n), range, pde.components())});
      VectorXcd y(x.size());
      y << r.densities[0].coeffs, r.densities[1].coeffs;
      CHECK((y - x).norm() < 1e-9 * x.norm());
      CHECK(r.diagnostics.residual < 1e-10);
    }
}

TEST_CASE("condition 4 and diagnostic scales") {
  CHECK(default_diagnostic_s(Problem::Dirichlet) == -0.5);
  CHECK(default_diagnostic_s(Problem::Neumann) == 0.5);
  CHECK(condition4_holds(2, 0.5, -0.5));
  CHECK_FALSE(condition4_holds(1, 0.5, -0.5));
  CHECK(condition4_holds(3, 0.5, 0.5));
  CHECK_FALSE(condition4_holds(2, 0.9, 0.5));
  Arc rough = flat();
  rough.m = 1;
  rough.alpha = 0.2;
  CHECK_THROWS_AS(assemble_system({rough}, Pde::make_helmholtz(1.0), Problem::Neumann, 4), InvalidArgument);
}

TEST_CASE("block system binary dump round trip") {
  BlockSystem sys = assemble_system({flat(), flat_at(2.0)}, Pde::make_elastic(2.0, 1.0, 1.0), Problem::Dirichlet, 5);
  auto path = (std::filesystem::temp_directory_path() / "arcwave_blocks.bin").string();
  write_block_system(path, sys);
  BlockSystem back = read_block_system(path);
  std::filesystem::remove(path);
  CHECK(back.N == 5);
  CHECK(back.arcs() == 2);
  CHECK(back.problem == Problem::Dirichlet);
  CHECK(back.pde.kind == PdeKind::Elastic);
  CHECK(max_abs(back.dense() - sys.dense()) == 0.0);
  CHECK_THROWS_AS(read_block_system(path), InvalidArgument);
}
