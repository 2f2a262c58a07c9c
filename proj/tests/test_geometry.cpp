#include <doctest.h>

#include <cmath>

#include "arcwave/geometry.hpp"
#include "arcwave/oracles.hpp"

using namespace arcwave;

namespace {

Arc flat() { return segment_arc({-1.0, 0.0}, {1.0, 0.0}); }
Arc flat_at(double height) { return segment_arc({-1.0, height}, {1.0, height}); }
Arc quarter() { return circular_arc({0.0, 0.0}, 1.0, 0.0, kPi / 4); }

// (0, s (1 - t^2)) = (0, s (T_0 - T_2) / 2)
Arc bump(double s) {
  VectorXcd y(3);
  y << 0.5 * s, 0.0, -0.5 * s;
  return Arc(VectorXcd::Zero(1), y);
}

}  // namespace

TEST_CASE("eval_arc and eval_tangent") {
  Vec2c p = eval_arc(flat(), 0.5);
  CHECK(std::abs(p(0) - 0.5) < 1e-15);
  CHECK(std::abs(p(1)) < 1e-15);
  Vec2c d = eval_tangent(flat(), -0.3);
  CHECK(std::abs(d(0) - 1.0) < 1e-15);
  CHECK(std::abs(d(1)) < 1e-15);
  // r = (cos(pi t / 4), sin(pi t / 4)) has r'(0) = (0, pi/4).
  Vec2c c = eval_tangent(quarter(), 0.0);
  CHECK(std::abs(c(0)) < 1e-13);
  CHECK(std::abs(c(1) - kPi / 4) < 1e-13);
}

TEST_CASE("squared distance") {
  CHECK(std::abs(squared_distance(flat(), flat(), 0.2, -0.1) - 0.09) < 1e-15);
  CHECK(std::abs(squared_distance(flat(), flat_at(1.0), 0.0, 0.0) - 1.0) < 1e-15);
  Arc c = arc_axpy(flat(), kI, bump(0.1));
  CHECK(std::abs(squared_distance(c, c, 1.0, -1.0) - 4.0) < 1e-15);
  CHECK(!c.is_real());
}

TEST_CASE("Q function") {
  Arc doubled = segment_arc({-2.0, 0.0}, {2.0, 0.0});
  for (double t : {-0.9, 0.0, 0.4})
    for (double s : {-0.5, 0.4, 1.0}) {
      CHECK(std::abs(q_function(flat(), t, s) - 1.0) < 1e-15);
      CHECK(std::abs(q_function(doubled, t, s) - 4.0) < 1e-14);
    }
  CHECK(std::abs(q_function(quarter(), 0.3, 0.3) - kPi * kPi / 16) < 1e-13);
}

TEST_CASE("averaged tangent matches divided differences") {
  Arc c = quarter();
  for (double t : {-0.8, 0.1, 0.7})
    for (double s : {-0.3, 0.5}) {
      Vec2c m = averaged_tangent(c, t, s);
      Vec2c dd = (eval_arc(c, t) - eval_arc(c, s)) / (t - s);
      CHECK((m - dd).norm() < 1e-13);
    }
}

TEST_CASE("direction matrix") {
  for (double t : {-0.5, 0.2})
    for (double s : {0.7, -0.9}) {
      Mat2c D = d_matrix(flat(), flat(), t, s, true);
      CHECK((D - Mat2c{{1.0, 0.0}, {0.0, 0.0}}).norm() < 1e-15);
      CHECK(std::abs(d_matrix(quarter(), flat_at(3.0), t, s).trace() - 1.0) < 1e-14);
    }
  Mat2c D0 = d_matrix(quarter(), quarter(), 0.0, 0.0, true);
  CHECK((D0 - Mat2c{{0.0, 0.0}, {0.0, 1.0}}).norm() < 1e-13);
}

TEST_CASE("delta_self worked examples") {
  Arc doubled = segment_arc({-2.0, 0.0}, {2.0, 0.0});
  CHECK(std::abs(delta_self({flat()}) - (std::sqrt(2.0) - 1.0)) < 1e-15);
  CHECK(std::abs(delta_self({doubled}) - 2.0 * (std::sqrt(2.0) - 1.0)) < 1e-15);
  CHECK(std::abs(delta_self({flat(), doubled}) - (std::sqrt(5.0) - 2.0)) < 1e-15);
}

TEST_CASE("delta_cross worked examples") {
  const double s = 1.0 + std::sqrt(2.0);
  auto d1 = delta_cross({flat()}, {flat_at(1.0)});
  CHECK(std::abs(d1.first - (std::sqrt(1.0 + s * s) - s) / 2.0) < 1e-15);
  CHECK(d1.first == d1.second);
  auto d10 = delta_cross({flat()}, {flat_at(10.0)});
  CHECK(d10.first > d1.first);
  Arc shifted = segment_arc({2.0, 0.0}, {4.0, 0.0});
  double bf = oracle::brute_force_distance(flat(), shifted, 1000);
  CHECK(std::abs(cross_bounds({flat()}, {shifted}).inf_distance - bf) < 1e-12);
  CHECK(std::abs(bf - 1.0) < 1e-12);
}

TEST_CASE("check_family: tangent condition") {
  ParametricArcFamily f;
  f.nominal = {flat()};
  f.perturbations = {{bump(0.1)}};
  f.fill_b();
  AdmissibilityReport ok = check_family(f);
  CHECK(ok.zeta == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(ok.pass_zeta);
  CHECK(ok.pass);
  f.perturbations = {{bump(1.0)}};
  f.fill_b();
  AdmissibilityReport bad = check_family(f);
  CHECK(bad.zeta == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_FALSE(bad.pass_zeta);
  CHECK_FALSE(bad.pass);
}

TEST_CASE("check_family: separation condition") {
  ParametricArcFamily f;
  f.nominal = {flat(), flat_at(1.0)};
  f.perturbations = {{bump(0.2)}, {bump(0.2)}};
  f.fill_b();
  AdmissibilityReport r = check_family(f);
  CHECK(r.eta == doctest::Approx(0.4).epsilon(1e-5));  // grid sup
  CHECK(r.pass_eta);
  CHECK(r.delta_cross.size() == 1);
}

TEST_CASE("materialize") {
  ParametricArcFamily f;
  f.nominal = {flat(), flat_at(1.0)};
  f.perturbations = {{bump(0.1), bump(0.3)}, {bump(0.2), bump(0.4)}};
  f.fill_b();
  auto zero = materialize(f, {0.0, 0.0, 0.0, 0.0});
  CHECK((zero[0].y - flat().y).norm() == 0.0);
  // y = (a, b, c, d): arc 0 takes (a, c), arc 1 takes (b, d).
  auto r = materialize(f, {0.5, -1.0, 0.25, 1.0});
  Vec2c p0 = eval_arc(r[0], 0.0), p1 = eval_arc(r[1], 0.0);
  CHECK(std::abs(p0(1) - (0.5 * 0.1 + 0.25 * 0.3)) < 1e-15);
  CHECK(std::abs(p1(1) - (1.0 - 0.2 + 0.4)) < 1e-15);
  ParametricArcFamily one;
  one.nominal = {flat()};
  one.perturbations = {{bump(0.1)}};
  one.fill_b();
  Arc sum = materialize(one, {1.0})[0];
  CHECK(std::abs(eval_arc(sum, 0.3)(1) - 0.1 * (1 - 0.09)) < 1e-15);
}

TEST_CASE("tube positivity sampling") {
  const double d = delta_self({flat()});
  TubeReport rep = verify_tube_positivity({flat()}, d, 0.0, 100, 7);
  CHECK(rep.pass);
  CHECK(rep.min_re_q > 0.0);
  MESSAGE("straight arc, 100 samples: min Re Q = " << rep.min_re_q);
  TubeReport zero = verify_tube_positivity({flat()}, 0.0, 0.0, 3, 7);
  CHECK(std::abs(zero.min_re_q - 1.0) < 1e-15);
  TubeReport wide = verify_tube_positivity({flat()}, 10 * d, 0.0, 100, 7);
  MESSAGE("ten times the radius: min Re Q = " << wide.min_re_q << ", pass = " << wide.pass);
}

TEST_CASE("real arcs: nonvanishing tangent and injectivity") {
  for (const Arc& a : {flat(), quarter(), circular_arc({0.3, 0.2}, 2.0, 1.0, 1.2)}) {
    CHECK(tangent_bounds({a}).inf > 0.0);
    CHECK(injectivity_ratio(a) > 0.0);
  }
}

TEST_CASE("holder surrogate norm of the segment") {
  // sup|r| + sup|r'| for (t, 0); higher derivatives vanish.
  CHECK(holder_surrogate_norm(flat(), 3, 0.5) == doctest::Approx(2.0).epsilon(1e-12));
}
