#include <doctest.h>

#include <cmath>

#include "arcwave/solver.hpp"

using namespace arcwave;

namespace {

Arc flat() { return segment_arc({-1.0, 0.0}, {1.0, 0.0}); }
Arc bent() { return circular_arc({0.0, 0.0}, 1.0, kPi / 2, kPi / 4); }

Vec2c at(double a, double b) { return Vec2c(a, b); }

VectorXcd unit(int n, int k) {
  VectorXcd e = VectorXcd::Zero(n);
  e[k] = 1.0;
  return e;
}

}  // namespace

TEST_CASE("build_rhs: plane wave on the segment") {
  const Pde pde = Pde::make_helmholtz(1.5);
  IncidentField inc = IncidentField::plane_wave({0.0, 1.0});
  auto d = build_rhs({flat()}, pde, inc, Problem::Dirichlet, 8);
  CHECK(d[0].basis == Basis::T_plain);
  CHECK(std::abs(d[0].coeffs[0] + std::sqrt(kPi)) < 1e-14);
  CHECK(d[0].coeffs.tail(8).norm() < 1e-14);
  // nu = perp(r') = (0, -1), so nu . grad u_inc = -i kappa on the arc.
  auto n = build_rhs({flat()}, pde, inc, Problem::Neumann, 8);
  CHECK(n[0].basis == Basis::U_plain);
  for (double t : {-0.7, 0.0, 0.5}) CHECK(std::abs(synthesize_at(n[0], t) - kI * 1.5) < 1e-13);
  CHECK(n[0].coeffs.tail(8).norm() < 1e-14);
}

TEST_CASE("build_rhs: curved arc data decay geometrically") {
  auto d = build_rhs({bent()}, Pde::make_helmholtz(2.0), IncidentField::plane_wave({0.6, -0.8}), Problem::Dirichlet, 40);
  CHECK(fit_geometric_decay(d[0].coeffs.cwiseAbs()).rho > 1.5);
}

TEST_CASE("build_rhs: point source on an arc is refused") {
  CHECK_THROWS_AS(build_rhs({flat()}, Pde::make_helmholtz(1.0), IncidentField::point_source({0.2, 0.0}),
                            Problem::Dirichlet, 8),
                  InvalidArgument);
}

TEST_CASE("solve_with_rhs: Laplace limit manufactured data") {
  SpectralDensity one(std::sqrt(kPi) * unit(17, 0), Basis::T_plain);
  ScatteringSolution s = solve_with_rhs({flat()}, Pde::laplace(), Problem::Dirichlet, 16, {one});
  CHECK(std::abs(s.densities[0].coeffs[0] - 2 * std::sqrt(kPi) / std::log(2.0)) < 1e-12);
  CHECK(s.densities[0].coeffs.tail(16).norm() < 1e-12);
}

TEST_CASE("solve_scattering: energy norm converges under N doubling") {
  const Pde pde = Pde::make_helmholtz(1.0);
  IncidentField inc = IncidentField::plane_wave({0.6, -0.8});
  ScatteringSolution a = solve_scattering({flat()}, pde, inc, Problem::Dirichlet, 48);
  ScatteringSolution b = solve_scattering({flat()}, pde, inc, Problem::Dirichlet, 96);
  const double na = sobolev_norm(a.densities[0], -0.5).value, nb = sobolev_norm(b.densities[0], -0.5).value;
  CHECK(std::abs(na - nb) < 1e-8 * nb);
  CHECK(a.diagnostics.rho_hat > 1.0);
  CHECK((a.densities[0].coeffs.head(24) - b.densities[0].coeffs.head(24)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("solve_scattering: elastic density decays geometrically") {
  ScatteringSolution s = solve_scattering({flat()}, Pde::make_elastic(2.0, 1.0, 1.0),
                                          IncidentField::plane_wave({0.6, -0.8}), Problem::Dirichlet, 40);
  CHECK(s.densities[0].components == 2);
  for (int c = 0; c < 2; ++c) CHECK(fit_geometric_decay(s.densities[0].component(c).cwiseAbs()).rho > 1.5);
}

TEST_CASE("solve_scattering: touching arcs are rejected") {
  CHECK_THROWS_AS(solve_scattering({flat(), segment_arc({1.0, 0.0}, {2.0, 1.0})}, Pde::make_helmholtz(1.0),
                                   IncidentField::plane_wave({0.0, 1.0}), Problem::Dirichlet, 8),
                  GeometryError);
}

TEST_CASE("eval_potential: far decay, boundary values and refusal near arcs") {
  const Pde pde = Pde::make_helmholtz(1.0);
  IncidentField inc = IncidentField::plane_wave({0.6, -0.8});
  ScatteringSolution s = solve_scattering({bent()}, pde, inc, Problem::Dirichlet, 40);
  Eigen::Vector2d xh(0.28, 0.96);
  const double r50 = std::abs(eval_potential(s, 50.0 * xh.cast<cd>())(0));
  const double r200 = std::abs(eval_potential(s, 200.0 * xh.cast<cd>())(0));
  CHECK(r200 / r50 == doctest::Approx(0.5).epsilon(0.02));

  Vec2c mid = eval_arc(bent(), 0.0), nu = perp(eval_tangent(bent(), 0.0));
  Vec2c x = mid + 1e-3 * nu / std::sqrt(bdot(nu, nu));
  CHECK(std::abs(eval_potential(s, x)(0) + inc.value(pde, x)(0)) < 1e-2);

  CHECK_THROWS(eval_potential(s, mid));
  CHECK(distance_to_arcs({flat()}, at(0.3, 0.5)) == doctest::Approx(0.5));

  ScatteringSolution zero = s;
  zero.densities[0].coeffs.setZero();
  CHECK(std::abs(eval_potential(zero, at(0.3, 2.0))(0)) == 0.0);
}

TEST_CASE("scattered field solves the homogeneous equation") {
  const double k = 2.0;
  const Pde pde = Pde::make_helmholtz(k);
  for (Problem p : {Problem::Dirichlet, Problem::Neumann}) {
    ScatteringSolution s = solve_scattering({bent(), flat()}, pde, IncidentField::plane_wave({0.6, -0.8}), p, 40);
    const double h = 1e-3;
    for (Vec2c x : {at(0.0, 0.5), at(1.8, -0.2), at(-0.5, -0.8)}) {
      auto u = [&](double dx, double dy) { return eval_potential(s, x + at(dx, dy))(0); };
      cd lap = (u(h, 0) + u(-h, 0) + u(0, h) + u(0, -h) - 4.0 * u(0, 0)) / (h * h);
      CHECK(std::abs(lap + k * k * u(0, 0)) < 1e-4 * std::abs(u(0, 0)));
    }
  }
}

TEST_CASE("field values are mesh independent") {
  const Pde pde = Pde::make_helmholtz(1.0);
  IncidentField inc = IncidentField::plane_wave({0.0, -1.0});
  for (Problem p : {Problem::Dirichlet, Problem::Neumann}) {
    ScatteringSolution a = solve_scattering({bent()}, pde, inc, p, 32);
    ScatteringSolution b = solve_scattering({bent()}, pde, inc, p, 64);
    for (Vec2c x : {at(0.0, 0.0), at(2.0, 1.0)}) {
      cd ua = eval_potential(a, x)(0), ub = eval_potential(b, x)(0);
      CHECK(std::abs(ua - ub) < 1e-7 * std::abs(ub));
    }
  }
}

TEST_CASE("Green reciprocity through the scatterer") {
  const Pde pde = Pde::make_helmholtz(1.3);
  std::vector<Arc> arcs = {bent(), segment_arc({-1.0, -1.0}, {0.5, -1.3})};
  Eigen::Vector2d a(0.4, 0.2), b(-2.0, 1.5);
  ScatteringSolution sa = solve_scattering(arcs, pde, IncidentField::point_source(a), Problem::Dirichlet, 40);
  ScatteringSolution sb = solve_scattering(arcs, pde, IncidentField::point_source(b), Problem::Dirichlet, 40);
  cd ab = eval_potential(sa, b.cast<cd>())(0), ba = eval_potential(sb, a.cast<cd>())(0);
  CHECK(std::abs(ab - ba) < 1e-6 * std::abs(ab));
}

TEST_CASE("linear functionals") {
  const Pde pde = Pde::make_helmholtz(1.0);
  std::vector<Arc> arcs = {bent(), segment_arc({-1.0, -1.0}, {0.5, -1.3})};
  ScatteringSolution s = solve_scattering(arcs, pde, IncidentField::plane_wave({0.6, -0.8}), Problem::Dirichlet, 40);
  cd moment = linear_functional(s, [](int, double, const Vec2c&, const Vec2c&) { return Vec2c(1.0, 0.0); });
  CHECK(std::abs(moment - std::sqrt(kPi) * (s.densities[0].coeffs[0] + s.densities[1].coeffs[0])) < 1e-12);

  Vec2c x(0.3, 2.5);
  CHECK(std::abs(linear_functional(s, potential_probe(pde, Problem::Dirichlet, x)) - eval_potential(s, x)(0)) < 1e-12);

  for (Problem p : {Problem::Dirichlet, Problem::Neumann}) {
    ScatteringSolution sp = solve_scattering(arcs, pde, IncidentField::plane_wave({0.6, -0.8}), p, 40);
    Eigen::Vector2d xh(-0.6, 0.8);
    const double R = 2000.0;
    cd far = eval_potential(sp, (R * xh).cast<cd>())(0) * std::sqrt(R) * std::exp(-kI * R);
    CHECK(std::abs(far - far_field(sp, xh)) < 1e-2 * std::abs(far));
  }
}
