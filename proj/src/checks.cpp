#include "arcwave/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <limits>
#include <memory>
#include <random>
#include <sstream>

#include <json.hpp>

#include "arcwave/holomorphy.hpp"
#include "arcwave/oracles.hpp"

#ifndef ARCWAVE_DEFAULT_FIXTURE_DIR
#define ARCWAVE_DEFAULT_FIXTURE_DIR "fixtures"
#endif
#ifndef ARCWAVE_VERSION
#define ARCWAVE_VERSION "0.0.0"
#endif

namespace arcwave::checks {
namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
CheckResult timed(const std::string& name, double tol, F&& body) {
  CheckResult r;
  r.name = name;
  r.tolerance = tol;
  auto t0 = Clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.error = std::numeric_limits<double>::infinity();
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return r;
}

void set_error(CheckResult& r, double err) {
  r.error = err;
  r.pass = std::isfinite(err) && err <= r.tolerance;
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::vector<double> sample_points(int n) {
  std::vector<double> t(n);
  for (int k = 0; k < n; ++k) t[k] = std::cos(kPi * (k + 0.37) / n);
  return t;
}

Arc flat_arc() { return segment_arc({-1.0, 0.0}, {1.0, 0.0}); }

// ---------------------------------------------------------------- spectral

CheckResult transform_agreement() {
  return timed("dct2/dst1 fast vs naive", 1e-12, [](CheckResult& r) {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g;
    double err = 0.0;
    for (int n : {1, 7, 16, 33, 64}) {
      VectorXcd x(n);
      for (int k = 0; k < n; ++k) x[k] = cd(g(rng), g(rng));
      err = std::max(err, (dct2(x) - dct2_naive(x)).norm() / x.norm() / n);
      err = std::max(err, (dst1(x) - dst1_naive(x)).norm() / x.norm() / n);
    }
    set_error(r, err);
  });
}

CheckResult analyze_round_trip() {
  return timed("analyze/synthesize round trip", 1e-12, [](CheckResult& r) {
    double err = 0.0;
    for (Basis b : {Basis::TW, Basis::WU, Basis::T_plain, Basis::U_plain}) {
      const int n = 24;
      std::vector<double> t = chebyshev_nodes(n, b);
      VectorXcd v(n);
      for (int k = 0; k < n; ++k) v[k] = std::exp(cd(0.3, 1.0) * t[k]) / (2.0 + t[k]);
      if (b == Basis::TW)
        for (int k = 0; k < n; ++k) v[k] /= std::sqrt(1.0 - t[k] * t[k]);
      if (b == Basis::WU)
        for (int k = 0; k < n; ++k) v[k] *= std::sqrt(1.0 - t[k] * t[k]);
      SpectralDensity d = analyze(v, b);
      err = std::max(err, (synthesize(d, t) - v).norm() / v.norm());
      err = std::max(err, (d.coeffs - analyze_naive(v, b).coeffs).norm() / d.coeffs.norm());
    }
    set_error(r, err);
  });
}

CheckResult decay_fit_geometric() {
  return timed("decay fit on rho = 1.7 sequence", 1e-8, [](CheckResult& r) {
    VectorXd c(40);
    for (int k = 0; k < 40; ++k) c[k] = std::pow(1.7, -k);
    DecayFit f = fit_geometric_decay(c);
    set_error(r, std::abs(f.rho - 1.7) / 1.7);
    r.detail = "rho = " + fmt("%.10g", f.rho);
  });
}

// ---------------------------------------------------------------- kernels

CheckResult helmholtz_split_check(double kappa) {
  return timed("helmholtz split reconstruction kappa=" + fmt("%g", kappa), 1e-10, [kappa](CheckResult& r) {
    KernelSplit sp(Pde::make_helmholtz(kappa));
    double err = 0.0;
    for (int k = 0; k < 200; ++k) {
      double d = 1e-3 * std::pow(2e3, k / 199.0);
      cd z = d * d;
      cd g = sp.F1(z) * std::log(z) + sp.F2(z);
      cd o = oracle::helmholtz_green(kappa, d);
      err = std::max(err, std::abs(g - o) / std::abs(o));
    }
    set_error(r, err);
  });
}

CheckResult elastic_split_check(double omega) {
  return timed("elastic split reconstruction omega=" + fmt("%g", omega), 1e-10, [omega](CheckResult& r) {
    Pde pde = Pde::make_elastic(2.0, 1.0, omega);
    KernelSplit sp(pde);
    double err = 0.0;
    for (int k = 0; k < 200; ++k) {
      double d = 1e-3 * std::pow(2e3, k / 199.0);
      double a = 0.7 + 0.013 * k;
      Eigen::Vector2d x(0.1, -0.2), e(std::cos(a), std::sin(a));
      Eigen::Vector2d y = x - d * e;
      Mat2c D = (e * e.transpose()).cast<cd>();
      cd z = d * d;
      Mat2c g = sp.F1(z, D) * std::log(z) + sp.F2(z, D);
      Mat2c o = oracle::elastic_green(pde.elastic, x, y);
      err = std::max(err, (g - o).norm() / o.norm());
    }
    set_error(r, err);
  });
}

CheckResult elastic_zero_values() {
  return timed("elastic J1(0), J2(0)", 1e-12, [](CheckResult& r) {
    double err = 0.0;
    for (double omega : {1.0, 3.0}) {
      Pde pde = Pde::make_elastic(2.0, 1.0, omega);
      KernelSplit sp(pde);
      SplitValues v = sp.evaluate(0.0);
      double j1 = oracle::elastic_j1_at_zero(pde.elastic);
      err = std::max(err, std::abs(v.a1 - j1) / std::abs(j1));
      err = std::max(err, std::abs(v.a2));
      err = std::max(err, std::abs(sp.F1_at_zero() - j1) / std::abs(j1));
    }
    set_error(r, err);
  });
}

CheckResult scalar_f1_at_zero() {
  return timed("scalar F1(0) = -1/(4 pi)", 1e-15, [](CheckResult& r) {
    double err = 0.0;
    for (double kappa : {0.5, 1.0, 5.0}) {
      KernelSplit sp(Pde::make_helmholtz(kappa));
      err = std::max(err, std::abs(sp.F1_at_zero() + 1.0 / (4.0 * kPi)));
    }
    err = std::max(err, std::abs(laplace_split().F1_at_zero() + 1.0 / (4.0 * kPi)));
    set_error(r, err);
  });
}

CheckResult helmholtz_green_value() {
  return timed("helmholtz green vs Hankel oracle off the split", 1e-13, [](CheckResult& r) {
    double err = 0.0;
    for (double kappa : {0.5, 1.0, 5.0})
      for (double d : {0.05, 0.7, 2.5, 9.0}) {
        cd g = helmholtz_green(kappa, Vec2c(0.0, 0.0), Vec2c(d, 0.0));
        cd o = oracle::helmholtz_green(kappa, d);
        err = std::max(err, std::abs(g - o) / std::abs(o));
      }
    set_error(r, err);
  });
}

// ---------------------------------------------------------------- operators

CheckResult log_moment_check() {
  return timed("log moment diagonalization", 1e-10, [](CheckResult& r) {
    const int N = 12;
    OperatorBlock L = assemble_log([](double, double) { return cd(1.0); }, N, Basis::TW);
    double err = 0.0;
    for (int n = 0; n <= 8; ++n) {
      VectorXcd u = VectorXcd::Zero(N + 1);
      u[n] = 1.0 / t_norm(n);
      VectorXcd out = L.matrix * u;
      for (double t : sample_points(9)) {
        double exact = n == 0 ? -kPi * std::log(2.0) : -kPi / n * std::cos(n * std::acos(t));
        double quad = oracle::log_moment(n, t);
        cd lib = oracle::range_value(out, L.range, 1, t)(0);
        err = std::max({err, std::abs(lib - exact), std::abs(quad - exact), std::abs(lib - quad)});
      }
    }
    set_error(r, err);
  });
}

CheckResult laplace_w_check() {
  return timed("laplace-limit W on straight arc", 1e-8, [](CheckResult& r) {
    const int N = 12, n_max = 7;
    OperatorBlock W = assemble_W_block({flat_arc()}, 0, 0, laplace_split(), N);
    Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(n_max + 1, n_max + 1);
    for (int n = 0; n <= n_max; ++n) expected(n, n) = oracle::laplace_segment_w_eigenvalue(n);
    MatrixXcd got = W.matrix.topLeftCorner(n_max + 1, n_max + 1);
    double err = (got - expected.cast<cd>()).cwiseAbs().maxCoeff() / expected.cwiseAbs().maxCoeff();
    set_error(r, err);
    r.detail = "W[w U_n] = -(n+1)/2 U_n, n = 0..7";
  });
}

struct BlockCase {
  std::string name;
  std::function<OperatorBlock()> assemble;
  // Oracle columns (components x components*modes) at t.
  std::function<MatrixXcd(double)> columns;
  int components = 1;
  Basis domain = Basis::TW;
};

constexpr int kModes = 7;

// Direct quadrature of the generic scalar kernels in theta = acos(tau).
MatrixXcd generic_columns(int kind, const std::function<cd(double, double)>& f, Basis domain, double t) {
  MatrixXcd out(1, kModes);
  const double th0 = std::acos(t);
  for (int n = 0; n < kModes; ++n) {
    auto integrand = [&, n](double th) {
      double tau = std::cos(th);
      double basis = domain == Basis::TW ? t_norm(n) * std::cos(n * th)
                                         : u_norm() * std::sin((n + 1) * th) * std::sin(th);
      double lg = std::log(std::abs(t - tau));
      double ker = kind == 0 ? 1.0 : kind == 1 ? lg : (t - tau) * (t - tau) * lg;
      return f(t, tau) * ker * basis;
    };
    out(0, n) = oracle::integrate(integrand, 0.0, kPi, {th0});
  }
  return out;
}

std::vector<BlockCase> block_cases(int N) {
  std::vector<BlockCase> cases;
  auto arcs = std::make_shared<std::vector<Arc>>(
      std::vector<Arc>{circular_arc({0.0, 0.0}, 1.0, 1.2, 0.6), segment_arc({-0.5, -1.0}, {0.8, -0.7})});
  const std::vector<Pde> pdes{Pde::laplace(), Pde::make_helmholtz(2.0), Pde::make_elastic(2.0, 1.0, 2.0)};
  for (const Pde& pde : pdes)
    for (int j = 0; j < 2; ++j) {
      const std::string pair = j == 0 ? "self" : "cross";
      cases.push_back({pde.name() + " V " + pair,
                       [=] {
                         KernelSplit sp(pde);
                         return j == 0 ? assemble_V_self((*arcs)[0], sp, N)
                                       : assemble_V_cross((*arcs)[0], (*arcs)[1], sp, N);
                       },
                       [=](double t) { return oracle::single_layer_columns(pde, *arcs, 0, j, kModes, t); },
                       pde.components(), Basis::TW});
      cases.push_back({pde.name() + " W " + pair,
                       [=] { return assemble_W_block(*arcs, 0, j, KernelSplit(pde), N); },
                       [=](double t) { return oracle::hypersingular_columns(pde, *arcs, 0, j, kModes, t); },
                       pde.components(), Basis::WU});
    }
  auto f = [](double t, double tau) { return std::cos(t + 2.0 * tau) + cd(0.0, 0.5) * t * tau * tau; };
  const char* kinds[] = {"smooth", "log", "logsq"};
  for (int kind = 0; kind < 3; ++kind)
    for (Basis b : {Basis::TW, Basis::WU}) {
      cases.push_back({std::string("generic ") + kinds[kind] + " " + basis_name(b),
                       [=] {
                         return kind == 0 ? assemble_smooth(f, N, b) : kind == 1 ? assemble_log(f, N, b)
                                                                                 : assemble_logsq(f, N, b);
                       },
                       [=](double t) { return generic_columns(kind, f, b, t); }, 1, b});
    }
  return cases;
}

// Assembled block against direct quadrature, for random densities of kModes modes per component.
CheckResult galerkin_consistency(int n_densities, int n_points, std::uint64_t seed) {
  return timed("galerkin consistency (" + std::to_string(n_densities) + " densities, " +
                   std::to_string(n_points) + " points)",
               1e-7, [=](CheckResult& r) {
                 const int N = 32;
                 std::mt19937_64 rng(seed);
                 std::normal_distribution<double> g;
                 double worst = 0.0;
                 std::string worst_name;
                 for (const BlockCase& c : block_cases(N)) {
                   OperatorBlock B = c.assemble();
                   const int comps = c.components;
                   std::vector<double> pts = sample_points(n_points);
                   std::vector<MatrixXcd> cols;
                   for (double t : pts) cols.push_back(c.columns(t));
                   double err = 0.0, scale = 0.0;
                   for (int s = 0; s < n_densities; ++s) {
                     VectorXcd u = VectorXcd::Zero(comps * (N + 1)), u7(comps * kModes);
                     for (int cc = 0; cc < comps; ++cc)
                       for (int n = 0; n < kModes; ++n) {
                         cd v = cd(g(rng), g(rng)) / double(1 + n * n);
                         u[cc * (N + 1) + n] = v;
                         u7[cc * kModes + n] = v;
                       }
                     VectorXcd out = B.matrix * u;
                     for (std::size_t p = 0; p < pts.size(); ++p) {
                       Vec2c a = oracle::range_value(out, B.range, comps, pts[p]);
                       VectorXcd o = cols[p] * u7;
                       for (int cc = 0; cc < comps; ++cc) {
                         err = std::max(err, std::abs(a(cc) - o[cc]));
                         scale = std::max(scale, std::abs(o[cc]));
                       }
                     }
                   }
                   double rel = err / std::max(scale, 1e-300);
                   if (rel > worst || worst_name.empty()) {
                     worst = std::max(worst, rel);
                     worst_name = c.name;
                   }
                 }
                 set_error(r, worst);
                 r.detail = "18 block types, worst " + worst_name;
               });
}

CheckResult manufactured_dirichlet() {
  return timed("manufactured laplace-limit Dirichlet solution", 1e-9, [](CheckResult& r) {
    const int N = 16;
    VectorXcd f = VectorXcd::Zero(N + 1);
    f[0] = std::sqrt(kPi);
    ScatteringSolution sol =
        solve_with_rhs({flat_arc()}, Pde::laplace(), Problem::Dirichlet, N, {SpectralDensity(f, Basis::T_plain)});
    VectorXcd expected = VectorXcd::Zero(N + 1);
    expected[0] = 2.0 / std::log(2.0) * std::sqrt(kPi);
    set_error(r, (sol.densities[0].coeffs - expected).cwiseAbs().maxCoeff());
    r.detail = "lambda = (2/log 2)/w";
  });
}

CheckResult reciprocity() {
  return timed("V block reciprocity under pairing", 1e-10, [](CheckResult& r) {
    const int N = 16;
    Arc a = flat_arc(), b = segment_arc({-1.0, 5.0}, {1.0, 5.0});
    KernelSplit sp(Pde::make_helmholtz(1.0));
    MatrixXcd ab = assemble_V_cross(a, b, sp, N).matrix, ba = assemble_V_cross(b, a, sp, N).matrix;
    set_error(r, (ab - ba.transpose()).norm() / ab.norm());
  });
}

// ---------------------------------------------------------------- geometry

CheckResult admissibility_formulas() {
  return timed("delta_self / delta_cross worked examples", 1e-14, [](CheckResult& r) {
    Arc a = flat_arc(), a2 = segment_arc({-2.0, 0.0}, {2.0, 0.0}), b = segment_arc({-1.0, 1.0}, {1.0, 1.0});
    const double s2 = std::sqrt(2.0);
    const double c = (std::sqrt(1.0 + (1.0 + s2) * (1.0 + s2)) - (1.0 + s2)) / 2.0;
    auto dc = delta_cross({a}, {b});
    double err = std::max({std::abs(delta_self({a}) - (s2 - 1.0)), std::abs(delta_self({a2}) - 2.0 * (s2 - 1.0)),
                           std::abs(delta_self({a, a2}) - (std::sqrt(5.0) - 2.0)), std::abs(dc.first - c),
                           std::abs(dc.second - c)});
    set_error(r, err);
  });
}

CheckResult cross_distance_brute_force() {
  return timed("cross distance vs brute force grid", 1e-12, [](CheckResult& r) {
    Arc a = flat_arc(), b = segment_arc({2.0, 0.0}, {4.0, 0.0});
    double lib = cross_bounds({a}, {b}).inf_distance;
    double bf = oracle::brute_force_distance(a, b, 1000);
    set_error(r, std::max(std::abs(lib - 1.0), std::abs(bf - 1.0)));
    r.detail = "inf distance " + fmt("%.15g", lib);
  });
}

CheckResult tube_positivity(int n_samples) {
  return timed("tube positivity (" + std::to_string(n_samples) + " samples)", 0.0, [=](CheckResult& r) {
    Arc a = flat_arc(), c = circular_arc({0.0, -1.5}, 1.0, kPi / 2, kPi / 4);
    double ds = kAdmissibilitySafety * std::min(delta_self({a}), delta_self({c}));
    double dc = kAdmissibilitySafety * delta_cross({a}, {c}).first;
    TubeReport rep = verify_tube_positivity({a, c}, ds, dc, n_samples, 2024);
    double m = std::min({rep.min_re_q, rep.min_re_q_inv, rep.min_re_d2_cross});
    r.error = -m;
    r.pass = rep.pass;
    r.detail = "min Re Q " + fmt("%.4g", rep.min_re_q) + ", min Re 1/Q " + fmt("%.4g", rep.min_re_q_inv) +
               ", min Re d^2 " + fmt("%.4g", rep.min_re_d2_cross);
  });
}

CheckResult zero_perturbation_q() {
  return timed("Q = 1 on the straight arc", 1e-15, [](CheckResult& r) {
    Arc a = flat_arc();
    double err = 0.0;
    for (double t : sample_points(7))
      for (double s : sample_points(5)) err = std::max(err, std::abs(q_function(a, t, s) - 1.0));
    set_error(r, err);
  });
}

// ---------------------------------------------------------------- holomorphy

CheckResult self_convergence() {
  return timed("spectral self-convergence N=48 vs 96", 1e-8, [](CheckResult& r) {
    Arc c = circular_arc({0.0, 0.0}, 1.0, kPi / 2, kPi / 4);
    Pde pde = Pde::make_helmholtz(1.0);
    IncidentField inc = IncidentField::plane_wave({std::cos(-1.0), std::sin(-1.0)});
    double err = 0.0, rho = 1e300;
    for (Problem p : {Problem::Dirichlet, Problem::Neumann}) {
      ScatteringSolution lo = solve_scattering({c}, pde, inc, p, 48);
      ScatteringSolution hi = solve_scattering({c}, pde, inc, p, 96);
      VectorXcd a = lo.densities[0].coeffs, b = hi.densities[0].coeffs.head(49);
      err = std::max(err, (a - b).cwiseAbs().maxCoeff() / b.cwiseAbs().maxCoeff());
      rho = std::min(rho, hi.diagnostics.rho_hat);
    }
    r.error = err;
    r.pass = err < r.tolerance && rho > 1.2;
    r.detail = "rho_hat " + fmt("%.4g", rho) + " (needs > 1.2)";
  });
}

ForwardModel far_field_model(int N) {
  ForwardModel m;
  m.pde = Pde::make_helmholtz(1.0);
  m.incident = IncidentField::plane_wave({0.6, -0.8});
  m.problem = Problem::Dirichlet;
  m.N = N;
  m.functional = far_field_functional({0.0, 1.0});
  return m;
}

CheckResult certificate(int N, int nodes) {
  return timed("bpe certificate, bump family (N=" + std::to_string(N) + ", " + std::to_string(nodes) + " nodes)",
               kMaxFitResidual, [=](CheckResult& r) {
                 ParametricArcFamily fam = flat_bump_family(3);
                 Certificate c = bpe_certificate(fam, far_field_model(N), {0, 1, 2}, nodes);
                 double res = 0.0;
                 std::ostringstream os;
                 os << "rho_hat";
                 for (const SweepResult& s : c.sweeps) {
                   res = std::max(res, s.residual);
                   os << " " << fmt("%.4g", s.rho_hat);
                 }
                 os << ", monotone " << (c.monotone ? "yes" : "no");
                 r.error = res;
                 r.pass = c.pass;
                 r.detail = os.str();
               });
}

CheckResult frechet(int n_directions) {
  return timed("complex step vs central difference, complex linearity", 1e-5, [=](CheckResult& r) {
    Arc a = flat_arc();
    ForwardModel model = far_field_model(32);
    const double radius = kAdmissibilitySafety * delta_self({a});
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> unif(0.2, 1.0);
    double gap = 0.0, cr = 0.0;
    for (int k = 0; k < n_directions; ++k) {
      Arc v = random_perturbation(rng(), 3, 1.0, a.m, a.alpha);
      v.x = v.x.real().cast<cd>();
      v.y = v.y.real().cast<cd>();
      double s = holder_surrogate_norm(v, a.m, a.alpha);
      double len = unif(rng) * radius / s;
      v.x *= len;
      v.y *= len;
      DerivativeCheck d = complex_step_check({a}, 0, v, model, {1e-4});
      gap = std::max(gap, d.max_relative_gap);
      cr = std::max(cr, d.cr_gap);
    }
    r.error = gap;
    r.pass = gap <= 1e-5 && cr <= 1e-7;
    r.detail = "max CR gap " + fmt("%.3g", cr) + " (tol 1e-7)";
  });
}

MatrixXcd rough_samples(int L) {
  std::vector<double> g = periodic_grid(L);
  MatrixXcd s(L, L);
  for (int a = 0; a < L; ++a)
    for (int b = 0; b < L; ++b) s(a, b) = std::pow(std::abs(std::sin(g[a])), 2.5) * std::cos(g[b]);
  return s;
}

CheckResult biperiodic_sanity() {
  return timed("bi-periodic norm under grid doubling", 1e-3, [](CheckResult& r) {
    const std::vector<int> sizes{64, 128, 256, 512, 1024};
    auto norms = [&](double s1, double s2) {
      std::vector<double> v;
      for (int L : sizes) v.push_back(biperiodic_sobolev_norm(rough_samples(L), s1, s2));
      return v;
    };
    auto stable_change = [](const std::vector<double>& v) {
      return std::abs(v.back() - v[v.size() - 2]) / v.back();
    };
    std::vector<double> a = norms(2.0, 0.0), b = norms(1.0, 1.0), c = norms(3.5, 0.0);
    double change = std::max(stable_change(a), stable_change(b));
    bool growing = true;
    for (std::size_t k = 1; k < c.size(); ++k) growing = growing && c[k] / c[k - 1] > 1.2;
    r.error = change;
    r.pass = change <= r.tolerance && growing;
    r.detail = "(3.5,0) ratio at last doubling " + fmt("%.4g", c.back() / c[c.size() - 2]);
  });
}

CheckResult admissible_polyradius_check() {
  return timed("admissible polyradius", 0.0, [](CheckResult& r) {
    std::vector<double> b{0.1, 0.05, 0.025};
    bool ok = admissible_polyradius(b, 0.1, {1.5, 1.5, 1.5}) && !admissible_polyradius(b, 0.05, {1.5, 1.5, 1.5}) &&
              admissible_polyradius(b, 0.0875, {1.5, 1.5, 1.5});
    r.error = ok ? 0.0 : 1.0;
    r.pass = ok;
  });
}

// ---------------------------------------------------------------- regression

using Json = nlohmann::ordered_json;

constexpr double kRegressionTolerance = 1e-10;

struct RegressionCase {
  std::string name;
  std::function<cd()> run;
};

std::vector<RegressionCase> regression_cases() {
  auto far = [](const std::vector<Arc>& arcs, const Pde& pde, const IncidentField& inc, Problem p, int N) {
    return far_field(solve_scattering(arcs, pde, inc, p, N), {0.0, 1.0});
  };
  auto pot = [](const std::vector<Arc>& arcs, const Pde& pde, const IncidentField& inc, Problem p, int N, int comp) {
    return eval_potential(solve_scattering(arcs, pde, inc, p, N), Vec2c(0.3, 1.5))(comp);
  };
  const IncidentField wave = IncidentField::plane_wave({0.6, -0.8});
  const Arc circ = circular_arc({0.0, 0.0}, 1.0, kPi / 2, kPi / 4);
  const Arc upper = segment_arc({-0.5, 2.5}, {0.7, 2.2});
  const Pde h1 = Pde::make_helmholtz(1.0), h3 = Pde::make_helmholtz(3.0), el = Pde::make_elastic(2.0, 1.0, 1.5);
  return {
      {"helmholtz k=1 dirichlet flat far field", [=] { return far({flat_arc()}, h1, wave, Problem::Dirichlet, 32); }},
      {"helmholtz k=3 neumann circular far field", [=] { return far({circ}, h3, wave, Problem::Neumann, 40); }},
      {"helmholtz k=1 dirichlet two arcs far field",
       [=] { return far({flat_arc(), upper}, h1, wave, Problem::Dirichlet, 32); }},
      {"elastic dirichlet flat potential u0",
       [=] { return pot({flat_arc()}, el, wave, Problem::Dirichlet, 32, 0); }},
      {"elastic neumann circular potential u1",
       [=] { return pot({circ}, el, IncidentField::plane_wave({0.6, -0.8}, IncidentField::Mode::S), Problem::Neumann,
                        32, 1); }},
  };
}

Json load_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open fixture file " + path);
  return Json::parse(in);
}

std::vector<CheckResult> run_regression() {
  std::vector<CheckResult> out;
  const std::string path = fixture_path();
  Json fx;
  try {
    fx = load_fixture(path);
  } catch (const std::exception& e) {
    CheckResult r;
    r.name = "regression fixtures";
    r.error = std::numeric_limits<double>::infinity();
    r.detail = e.what();
    return {r};
  }
  for (const RegressionCase& c : regression_cases()) {
    out.push_back(timed("regression: " + c.name, kRegressionTolerance, [&](CheckResult& r) {
      const Json* entry = nullptr;
      for (const Json& e : fx.at("cases"))
        if (e.at("name") == c.name) entry = &e;
      if (!entry) throw InvalidArgument("case missing from " + path);
      r.tolerance = entry->at("tolerance").get<double>();
      cd ref(entry->at("value")[0].get<double>(), entry->at("value")[1].get<double>());
      cd got = c.run();
      set_error(r, std::abs(got - ref) / std::max(std::abs(ref), 1e-300));
    }));
  }
  return out;
}

// ---------------------------------------------------------------- registry

std::vector<CheckResult> run_named(const std::string& suite) {
  if (suite == "spectral") return {transform_agreement(), analyze_round_trip(), decay_fit_geometric()};
  if (suite == "kernels")
    return {helmholtz_split_check(0.5), helmholtz_split_check(1.0), helmholtz_split_check(5.0),
            elastic_split_check(1.0), elastic_split_check(3.0), elastic_zero_values(), scalar_f1_at_zero(),
            helmholtz_green_value()};
  if (suite == "operators")
    return {log_moment_check(), laplace_w_check(), galerkin_consistency(4, 4, 5), manufactured_dirichlet(),
            reciprocity()};
  if (suite == "geometry")
    return {admissibility_formulas(), cross_distance_brute_force(), zero_perturbation_q(), tube_positivity(50)};
  if (suite == "holomorphy") return {admissible_polyradius_check(), biperiodic_sanity(), frechet(2)};
  if (suite == "regression") return run_regression();
  throw InvalidArgument("unknown suite: " + suite);
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"spectral", "kernels", "operators", "geometry", "holomorphy", "regression"};
}

bool is_suite(const std::string& name) {
  auto s = suite_names();
  return name == "all" || std::find(s.begin(), s.end(), name) != s.end();
}

std::vector<CheckResult> run_suite(const std::string& suite) {
  if (!is_suite(suite)) throw InvalidArgument("unknown suite: " + suite);
  if (suite != "all") return run_named(suite);
  std::vector<CheckResult> all;
  for (const auto& s : suite_names()) {
    auto part = run_named(s);
    all.insert(all.end(), part.begin(), part.end());
  }
  return all;
}

std::string fixture_dir() {
  const char* env = std::getenv("ARCWAVE_FIXTURE_DIR");
  return env && *env ? std::string(env) : std::string(ARCWAVE_DEFAULT_FIXTURE_DIR);
}

std::string fixture_path() { return fixture_dir() + "/regression.json"; }

void write_regression_fixtures(const std::string& path) {
  std::time_t now = std::time(nullptr);
  char date[32];
  std::strftime(date, sizeof date, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  Json j;
  j["schema_version"] = 1;
  j["generator"] = std::string("arcwave ") + ARCWAVE_VERSION;
  j["compiler"] = __VERSION__;
  j["created"] = date;
  j["cases"] = Json::array();
  for (const RegressionCase& c : regression_cases()) {
    cd v = c.run();
    j["cases"].push_back({{"name", c.name}, {"value", {v.real(), v.imag()}}, {"tolerance", kRegressionTolerance}});
  }
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << j.dump(2) << "\n";
}

std::string fixture_summary(const std::string& path) {
  Json j = load_fixture(path);
  std::ostringstream os;
  os << "fixtures: " << path << "\n";
  for (const char* key : {"schema_version", "generator", "compiler", "created"})
    if (j.contains(key)) os << "  " << key << ": " << (j[key].is_string() ? j[key].get<std::string>() : j[key].dump())
                            << "\n";
  for (const Json& e : j.at("cases")) os << "  case: " << e.at("name").get<std::string>() << "\n";
  return os.str();
}

std::string acceptance_title(int id) {
  static const char* titles[] = {"log-moment diagonalization",
                                 "hypersingular diagonalization",
                                 "kernel-split reconstruction",
                                 "Galerkin consistency",
                                 "manufactured Dirichlet solution",
                                 "spectral self-convergence",
                                 "parametric holomorphy certificate",
                                 "Frechet and complex-linearity check",
                                 "tube positivity",
                                 "admissibility formulas",
                                 "bi-periodic norm sanity"};
  if (id < 1 || id > kAcceptanceCount) throw InvalidArgument("acceptance id out of range");
  return titles[id - 1];
}

CheckResult acceptance(int id) {
  CheckResult r;
  switch (id) {
    case 1: r = log_moment_check(); break;
    case 2: r = laplace_w_check(); break;
    case 3: {
      std::vector<CheckResult> parts{helmholtz_split_check(0.5), helmholtz_split_check(1.0),
                                     helmholtz_split_check(5.0), elastic_split_check(1.0), elastic_split_check(3.0)};
      CheckResult zero = elastic_zero_values();
      r.name = "kernel splits";
      r.tolerance = 1e-10;
      r.pass = zero.pass;
      for (const auto& p : parts) {
        r.error = std::max(r.error, p.error);
        r.pass = r.pass && p.pass;
        r.seconds += p.seconds;
      }
      r.seconds += zero.seconds;
      r.detail = "J1(0), J2(0) error " + fmt("%.3g", zero.error) + " (tol 1e-12)";
      break;
    }
    case 4: r = galerkin_consistency(20, 8, 4); break;
    case 5: r = manufactured_dirichlet(); break;
    case 6: r = self_convergence(); break;
    case 7: r = certificate(48, 33); break;
    case 8: r = frechet(5); break;
    case 9: r = tube_positivity(200); break;
    case 10: r = admissibility_formulas(); break;
    case 11: r = biperiodic_sanity(); break;
    default: throw InvalidArgument("acceptance id out of range");
  }
  r.name = std::to_string(id) + " " + acceptance_title(id);
  return r;
}

std::string format_result(const CheckResult& r) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s  %-58s err %-10.3g tol %-9.3g %7.2fs", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                r.error, r.tolerance, r.seconds);
  std::string s = buf;
  if (!r.detail.empty()) s += "  " + r.detail;
  return s;
}

}  // namespace arcwave::checks
