#include "arcwave/solver.hpp"

#include <cmath>
#include <limits>

namespace arcwave {

namespace {

// Density times d tau, written as a function of theta (t = cos theta) on [0, pi].
cd density_weight(const SpectralDensity& d, int comp, double theta) {
  const int m = d.modes();
  const VectorXcd& c = d.coeffs;
  cd s = 0.0;
  if (d.basis == Basis::TW) {
    for (int n = 0; n < m; ++n) s += c[comp * m + n] * (t_norm(n) * std::cos(n * theta));
  } else if (d.basis == Basis::WU) {
    const double st = std::sin(theta);
    for (int n = 0; n < m; ++n) s += c[comp * m + n] * (u_norm() * std::sin((n + 1) * theta) * st);
  } else {
    throw InvalidArgument("densities must be in the TW or WU basis");
  }
  return s;
}

Vec2c point(const Eigen::Vector2d& v) { return v.cast<cd>(); }

cd plane_phase(double k, const Eigen::Vector2d& d, const Vec2c& x) { return std::exp(kI * k * bdot(point(d), x)); }

// Midpoint rule in theta with the given node count.
template <typename F>
Vec2c theta_rule(const ScatteringSolution& sol, int nq, F&& integrand) {
  Vec2c total = Vec2c::Zero();
  const double wgt = kPi / nq;
  for (size_t j = 0; j < sol.arcs.size(); ++j) {
    const Arc& arc = sol.arcs[j];
    VectorXcd dx = chebyshev_derivative(arc.x), dy = chebyshev_derivative(arc.y);
    const SpectralDensity& d = sol.densities[j];
    for (int i = 0; i < nq; ++i) {
      const double th = (i + 0.5) * kPi / nq, tau = std::cos(th);
      Vec2c r(clenshaw_t<cd>(arc.x, tau), clenshaw_t<cd>(arc.y, tau));
      Vec2c dr(clenshaw_t<cd>(dx, tau), clenshaw_t<cd>(dy, tau));
      Vec2c u = Vec2c::Zero();
      for (int c = 0; c < d.components; ++c) u(c) = density_weight(d, c, th);
      total += wgt * integrand(static_cast<int>(j), tau, r, dr, u);
    }
  }
  return total;
}

}  // namespace

IncidentField IncidentField::plane_wave(const Eigen::Vector2d& d, Mode mode) {
  IncidentField f;
  f.kind = Kind::PlaneWave;
  f.direction = d;
  f.mode = mode;
  f.validate();
  return f;
}

IncidentField IncidentField::point_source(const Eigen::Vector2d& x, const Eigen::Vector2d& force) {
  IncidentField f;
  f.kind = Kind::PointSource;
  f.source = x;
  f.polarization = force;
  f.validate();
  return f;
}

void IncidentField::validate() const {
  if (kind == Kind::PlaneWave && std::abs(direction.norm() - 1.0) > 1e-12)
    throw InvalidArgument("plane-wave direction must be a unit vector");
  if (!source.allFinite() || !polarization.allFinite()) throw InvalidArgument("incident field data must be finite");
}

Vec2c IncidentField::value(const Pde& pde, const Vec2c& x) const {
  Vec2c out = Vec2c::Zero();
  switch (pde.kind) {
    case PdeKind::Laplace:
      if (kind == Kind::PlaneWave) throw InvalidArgument("plane waves need a positive wavenumber");
      out(0) = green(pde, x, point(source))(0, 0);
      break;
    case PdeKind::Helmholtz:
      if (kind == Kind::PlaneWave)
        out(0) = plane_phase(pde.helmholtz.kappa, direction, x);
      else
        out(0) = helmholtz_green(pde.helmholtz.kappa, x, point(source));
      break;
    case PdeKind::Elastic: {
      const ElasticParams& p = pde.elastic;
      if (kind == Kind::PlaneWave) {
        if (mode == Mode::P)
          out = point(direction) * plane_phase(p.kp(), direction, x);
        else
          out = Vec2c(-direction(1), direction(0)) * plane_phase(p.ks(), direction, x);
      } else {
        out = elastic_green(p, x, point(source)) * point(polarization);
      }
      break;
    }
  }
  return out;
}

Mat2c IncidentField::gradient(const Pde& pde, const Vec2c& x) const {
  Mat2c g = Mat2c::Zero();
  switch (pde.kind) {
    case PdeKind::Laplace: {
      if (kind == Kind::PlaneWave) throw InvalidArgument("plane waves need a positive wavenumber");
      Vec2c rho = x - point(source);
      g.row(0) = (-rho / (2.0 * kPi * bdot(rho, rho))).transpose();
      break;
    }
    case PdeKind::Helmholtz: {
      const double k = pde.helmholtz.kappa;
      if (kind == Kind::PlaneWave)
        g.row(0) = (kI * k * plane_phase(k, direction, x) * point(direction)).transpose();
      else
        g.row(0) = helmholtz_green_gradient(k, x, point(source)).transpose();
      break;
    }
    case PdeKind::Elastic: {
      const ElasticParams& p = pde.elastic;
      if (kind == Kind::PlaneWave) {
        Vec2c d = point(direction);
        if (mode == Mode::P)
          g = kI * p.kp() * plane_phase(p.kp(), direction, x) * d * d.transpose();
        else
          g = kI * p.ks() * plane_phase(p.ks(), direction, x) * Vec2c(-direction(1), direction(0)) * d.transpose();
      } else {
        std::array<Mat2c, 2> dg = elastic_green_gradient(p, x, point(source));
        Vec2c q = point(polarization);
        for (int b = 0; b < 2; ++b) g.col(b) = dg[b] * q;
      }
      break;
    }
  }
  return g;
}

double distance_to_arcs(const std::vector<Arc>& arcs, const Vec2c& x) {
  double best = std::numeric_limits<double>::infinity();
  for (const Arc& arc : arcs) {
    // Coarse grid, then golden-section refinement around the best node.
    const int n = 256;
    int bi = 0;
    double bd = best;
    auto dist = [&](double t) { return (eval_arc(arc, t) - x).norm(); };
    bd = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      double t = -1.0 + 2.0 * i / (n - 1), d = dist(t);
      if (d < bd) {
        bd = d;
        bi = i;
      }
    }
    double lo = -1.0 + 2.0 * std::max(0, bi - 1) / (n - 1), hi = -1.0 + 2.0 * std::min(n - 1, bi + 1) / (n - 1);
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = hi - g * (hi - lo), b = lo + g * (hi - lo), fa = dist(a), fb = dist(b);
    for (int it = 0; it < 80; ++it) {
      if (fa < fb) {
        hi = b;
        b = a;
        fb = fa;
        a = hi - g * (hi - lo);
        fa = dist(a);
      } else {
        lo = a;
        a = b;
        fa = fb;
        b = lo + g * (hi - lo);
        fb = dist(b);
      }
    }
    best = std::min({best, bd, fa, fb});
  }
  return best;
}

std::vector<SpectralDensity> build_rhs(const std::vector<Arc>& arcs, const Pde& pde, const IncidentField& inc,
                                       Problem problem, int N, const RhsOptions& opt) {
  inc.validate();
  if (inc.kind == IncidentField::Kind::PointSource && distance_to_arcs(arcs, point(inc.source)) < 1e-6)
    throw InvalidArgument("point source lies on an arc");
  const int q = opt.quadrature > 0 ? opt.quadrature : 2 * (N + 1) + 64;
  const int c = pde.components();
  const Basis range = problem == Problem::Dirichlet ? Basis::T_plain : Basis::U_plain;
  std::vector<double> nodes = chebyshev_nodes(q, range);
  std::vector<SpectralDensity> out;
  for (const Arc& arc : arcs) {
    VectorXcd dx = chebyshev_derivative(arc.x), dy = chebyshev_derivative(arc.y);
    std::vector<VectorXcd> vals(c, VectorXcd(q));
    for (int k = 0; k < q; ++k) {
      const double t = nodes[k];
      Vec2c r(clenshaw_t<cd>(arc.x, t), clenshaw_t<cd>(arc.y, t));
      Vec2c g;
      if (problem == Problem::Dirichlet) {
        g = -inc.value(pde, r);
      } else {
        Vec2c nu = perp(Vec2c(clenshaw_t<cd>(dx, t), clenshaw_t<cd>(dy, t)));
        Mat2c grad = inc.gradient(pde, r);
        if (pde.kind == PdeKind::Elastic)
          g = -elastic_traction(pde.elastic, grad, nu);
        else
          g = Vec2c(-bdot(Vec2c(grad.row(0).transpose()), nu), 0.0);
      }
      for (int cc = 0; cc < c; ++cc) vals[cc][k] = g(cc);
    }
    VectorXcd coeffs(c * (N + 1));
    for (int cc = 0; cc < c; ++cc) coeffs.segment(cc * (N + 1), N + 1) = analyze(vals[cc], range).coeffs.head(N + 1);
    out.emplace_back(coeffs, range, c);
  }
  return out;
}

void check_geometry(const std::vector<Arc>& arcs) {
  for (size_t j = 0; j < arcs.size(); ++j) {
    arcs[j].validate();
    if (!arcs[j].is_real()) continue;
    if (tangent_bounds({arcs[j]}).inf < 1e-12) throw GeometryError("arc " + std::to_string(j) + ": vanishing tangent");
  }
  for (size_t i = 0; i < arcs.size(); ++i)
    for (size_t j = i + 1; j < arcs.size(); ++j) {
      if (!arcs[i].is_real() || !arcs[j].is_real()) continue;
      if (cross_bounds({arcs[i]}, {arcs[j]}).inf_distance < 1e-12)
        throw GeometryError("arcs " + std::to_string(i) + " and " + std::to_string(j) + " touch");
    }
}

ScatteringSolution solve_with_rhs(const std::vector<Arc>& arcs, const Pde& pde, Problem problem, int N,
                                  const std::vector<SpectralDensity>& rhs, const AssemblyOptions& opt) {
  check_geometry(arcs);
  BlockSystem sys = assemble_system(arcs, pde, problem, N, opt);
  SolveResult res = solve_system(sys, rhs);
  ScatteringSolution sol;
  sol.arcs = arcs;
  sol.pde = pde;
  sol.problem = problem;
  sol.N = N;
  sol.densities = std::move(res.densities);
  sol.diagnostics.condition_estimate = res.diagnostics.condition_estimate;
  sol.diagnostics.residual = res.diagnostics.residual;
  sol.diagnostics.warnings = res.diagnostics.warnings;
  double rho = std::numeric_limits<double>::infinity();
  for (const auto& d : sol.densities)
    for (int c = 0; c < d.components; ++c) rho = std::min(rho, fit_geometric_decay(d.component(c).cwiseAbs()).rho);
  sol.diagnostics.rho_hat = rho;
  return sol;
}

ScatteringSolution solve_scattering(const std::vector<Arc>& arcs, const Pde& pde, const IncidentField& inc,
                                    Problem problem, int N, const AssemblyOptions& opt) {
  return solve_with_rhs(arcs, pde, problem, N, build_rhs(arcs, pde, inc, problem, N), opt);
}

Vec2c eval_potential(const ScatteringSolution& sol, const Vec2c& x) {
  if (distance_to_arcs(sol.arcs, x) < 1e-6) throw InvalidArgument("evaluation point too close to an arc");
  auto integrand = [&](int, double, const Vec2c& r, const Vec2c& dr, const Vec2c& u) -> Vec2c {
    Mat2c k = sol.problem == Problem::Dirichlet ? green(sol.pde, x, r) : double_layer_kernel(sol.pde, x, r, perp(dr));
    if (sol.pde.components() == 1) return Vec2c(k(0, 0) * u(0), 0.0);
    return k * u;
  };
  int nq = 64;
  Vec2c prev = theta_rule(sol, nq, integrand);
  while (nq < (1 << 15)) {
    nq *= 2;
    Vec2c cur = theta_rule(sol, nq, integrand);
    double scale = std::max(cur.norm(), 1e-300);
    if ((cur - prev).norm() <= 1e-12 * scale) return cur;
    prev = cur;
  }
  return prev;
}

cd linear_functional(const ScatteringSolution& sol, const Probe& probe, int quadrature) {
  const int nq = quadrature > 0 ? quadrature : 2 * (sol.N + 1) + 64;
  Vec2c v = theta_rule(sol, nq, [&](int j, double tau, const Vec2c& r, const Vec2c& dr, const Vec2c& u) -> Vec2c {
    Vec2c w = probe(j, tau, r, dr);
    return Vec2c(bdot(w, u), 0.0);
  });
  return v(0);
}

Probe far_field_probe(const Pde& pde, Problem problem, const Eigen::Vector2d& xhat) {
  if (pde.kind != PdeKind::Helmholtz) throw InvalidArgument("far-field patterns are implemented for Helmholtz only");
  const double k = pde.helmholtz.kappa;
  const cd pref = std::exp(kI * kPi / 4.0) / std::sqrt(8.0 * kPi * k);
  const Vec2c xh = point(xhat);
  return [=](int, double, const Vec2c& r, const Vec2c& dr) -> Vec2c {
    cd e = pref * std::exp(-kI * k * bdot(xh, r));
    if (problem == Problem::Neumann) e *= -kI * k * bdot(xh, perp(dr));
    return Vec2c(e, 0.0);
  };
}

Probe potential_probe(const Pde& pde, Problem problem, const Vec2c& x, int component) {
  return [=](int, double, const Vec2c& r, const Vec2c& dr) -> Vec2c {
    Mat2c k = problem == Problem::Dirichlet ? green(pde, x, r) : double_layer_kernel(pde, x, r, perp(dr));
    return k.row(component).transpose();
  };
}

cd far_field(const ScatteringSolution& sol, const Eigen::Vector2d& xhat) {
  return linear_functional(sol, far_field_probe(sol.pde, sol.problem, xhat));
}

}  // namespace arcwave
