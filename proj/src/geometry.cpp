#include "arcwave/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "arcwave/parallel.hpp"
#include "arcwave/spectral.hpp"

namespace arcwave {

namespace {

double cnorm(const Vec2c& v) { return std::sqrt(std::norm(v(0)) + std::norm(v(1))); }

VectorXcd padded(const VectorXcd& a, Eigen::Index n) {
  VectorXcd out = VectorXcd::Zero(n);
  out.head(a.size()) = a;
  return out;
}

VectorXcd derivative_coeffs(const VectorXcd& a, int order) {
  VectorXcd d = a;
  for (int k = 0; k < order; ++k) d = chebyshev_derivative(d);
  return d;
}

void check_parameter(double t) {
  if (!(t >= -1.0 && t <= 1.0)) throw InvalidArgument("parameter outside [-1,1]");
}

// Hankel coefficient matrix of the divided difference:
// (T_k(t) - T_k(tau))/(t - tau) = 2 sum'_{j<k} T_j(t) U_{k-1-j}(tau), primed sum halving j = 0.
MatrixXcd divided_difference_matrix(const VectorXcd& a) {
  const int n = std::max<int>(1, static_cast<int>(a.size()) - 1);
  MatrixXcd c = MatrixXcd::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int l = 0; j + l + 1 < a.size(); ++l) c(j, l) = (j == 0 ? 1.0 : 2.0) * a[j + l + 1];
  return c;
}

// Rows: points; columns: T_0..T_{n-1} or U_0..U_{n-1}.
Eigen::MatrixXd t_table(const std::vector<double>& pts, int n) {
  Eigen::MatrixXd m(pts.size(), n);
  for (size_t i = 0; i < pts.size(); ++i) {
    double t = pts[i], a = 1.0, b = t;
    for (int k = 0; k < n; ++k) {
      m(i, k) = a;
      double c = 2.0 * t * b - a;
      a = b;
      b = c;
    }
  }
  return m;
}

Eigen::MatrixXd u_table(const std::vector<double>& pts, int n) {
  Eigen::MatrixXd m(pts.size(), n);
  for (size_t i = 0; i < pts.size(); ++i) {
    double t = pts[i], a = 1.0, b = 2.0 * t;
    for (int k = 0; k < n; ++k) {
      m(i, k) = a;
      double c = 2.0 * t * b - a;
      a = b;
      b = c;
    }
  }
  return m;
}

struct ArcTable {
  std::vector<Vec2c> r, dr;
};

ArcTable tabulate(const Arc& arc, const std::vector<double>& grid) {
  ArcTable tab;
  tab.r.resize(grid.size());
  tab.dr.resize(grid.size());
  VectorXcd dx = chebyshev_derivative(arc.x), dy = chebyshev_derivative(arc.y);
  for (size_t i = 0; i < grid.size(); ++i) {
    tab.r[i] = {clenshaw_t<cd>(arc.x, grid[i]), clenshaw_t<cd>(arc.y, grid[i])};
    tab.dr[i] = {clenshaw_t<cd>(dx, grid[i]), clenshaw_t<cd>(dy, grid[i])};
  }
  return tab;
}

}  // namespace

Arc::Arc(VectorXcd xc, VectorXcd yc, int m_, double alpha_) : x(std::move(xc)), y(std::move(yc)), m(m_), alpha(alpha_) {
  const Eigen::Index n = std::max(x.size(), y.size());
  x = padded(x, n);
  y = padded(y, n);
  validate();
}

bool Arc::is_real(double tol) const {
  return x.imag().cwiseAbs().maxCoeff() <= tol && y.imag().cwiseAbs().maxCoeff() <= tol;
}

void Arc::validate() const {
  if (x.size() == 0 || y.size() == 0) throw InvalidArgument("arc needs at least one coefficient");
  if (!x.allFinite() || !y.allFinite()) throw InvalidArgument("arc coefficients must be finite");
  if (m < 1) throw InvalidArgument("arc smoothness m must be >= 1");
  if (alpha < 0.0 || alpha > 1.0) throw InvalidArgument("arc Hoelder exponent must lie in [0,1]");
}

Arc segment_arc(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  VectorXcd x(2), y(2);
  x << 0.5 * (a(0) + b(0)), 0.5 * (b(0) - a(0));
  y << 0.5 * (a(1) + b(1)), 0.5 * (b(1) - a(1));
  return Arc(x, y);
}

Arc arc_from_function(const std::function<Vec2c(double)>& r, int degree, int m, double alpha) {
  const int n = degree + 1;
  std::vector<double> nodes = chebyshev_nodes(n, Basis::T_plain);
  std::vector<cd> xs(n), ys(n);
  bool real = true;
  for (int k = 0; k < n; ++k) {
    Vec2c v = r(nodes[k]);
    xs[k] = v(0);
    ys[k] = v(1);
    real = real && v.imag().isZero(0.0);
  }
  VectorXcd x = chebyshev_interpolate(xs), y = chebyshev_interpolate(ys);
  if (real) {
    x = x.real().cast<cd>();
    y = y.real().cast<cd>();
  }
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    if (std::abs(x[k]) < 1e-17) x[k] = 0.0;
    if (std::abs(y[k]) < 1e-17) y[k] = 0.0;
  }
  return Arc(x, y, m, alpha);
}

Arc circular_arc(const Eigen::Vector2d& center, double radius, double theta_mid, double half_angle, int degree) {
  return arc_from_function(
      [&](double t) {
        double a = theta_mid + half_angle * t;
        return Vec2c(center(0) + radius * std::cos(a), center(1) + radius * std::sin(a));
      },
      degree);
}

Arc arc_axpy(const Arc& a, cd s, const Arc& b) {
  const Eigen::Index n = std::max(a.x.size(), b.x.size());
  Arc out = a;
  out.x = padded(a.x, n) + s * padded(b.x, n);
  out.y = padded(a.y, n) + s * padded(b.y, n);
  return out;
}

Vec2c eval_arc(const Arc& arc, double t) {
  check_parameter(t);
  return {clenshaw_t<cd>(arc.x, t), clenshaw_t<cd>(arc.y, t)};
}

Vec2c eval_derivative(const Arc& arc, double t, int order) {
  check_parameter(t);
  return {clenshaw_t<cd>(derivative_coeffs(arc.x, order), t), clenshaw_t<cd>(derivative_coeffs(arc.y, order), t)};
}

Vec2c eval_tangent(const Arc& arc, double t) { return eval_derivative(arc, t, 1); }

cd squared_distance(const Arc& r, const Arc& p, double t, double tau) {
  Vec2c d = eval_arc(r, t) - eval_arc(p, tau);
  return bdot(d, d);
}

Vec2c averaged_tangent(const Arc& arc, double t, double tau) {
  check_parameter(t);
  check_parameter(tau);
  TangentGrid g = averaged_tangent_grid(arc, {t}, {tau});
  return {g.mx(0, 0), g.my(0, 0)};
}

TangentGrid averaged_tangent_grid(const Arc& arc, const std::vector<double>& ts, const std::vector<double>& taus) {
  MatrixXcd cx = divided_difference_matrix(arc.x), cy = divided_difference_matrix(arc.y);
  const int n = static_cast<int>(cx.rows());
  Eigen::MatrixXd tt = t_table(ts, n), uu = u_table(taus, n);
  TangentGrid g;
  g.mx = tt.cast<cd>() * cx * uu.transpose().cast<cd>();
  g.my = tt.cast<cd>() * cy * uu.transpose().cast<cd>();
  return g;
}

cd q_function(const Arc& r, double t, double tau) {
  Vec2c m = averaged_tangent(r, t, tau);
  return bdot(m, m);
}

Mat2c d_matrix(const Arc& r, const Arc& p, double t, double tau, bool same_arc) {
  Vec2c v = same_arc ? averaged_tangent(r, t, tau) : Vec2c(eval_arc(r, t) - eval_arc(p, tau));
  cd q = bdot(v, v);
  if (std::abs(q) < 1e-28) throw GeometryError("direction matrix undefined: coincident points");
  return v * v.transpose() / q;
}

std::vector<double> uniform_grid(int n) {
  if (n < 2) throw InvalidArgument("grid needs at least two points");
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = -1.0 + 2.0 * i / (n - 1);
  return g;
}

double holder_surrogate_norm(const Arc& arc, int m, double alpha, int grid) {
  std::vector<double> g = uniform_grid(grid);
  double total = 0.0;
  VectorXcd dx = arc.x, dy = arc.y;
  for (int k = 0; k <= m; ++k) {
    double sup = 0.0;
    for (double t : g) sup = std::max(sup, cnorm(Vec2c(clenshaw_t<cd>(dx, t), clenshaw_t<cd>(dy, t))));
    total += sup;
    if (k < m) {
      dx = chebyshev_derivative(dx);
      dy = chebyshev_derivative(dy);
    }
  }
  if (alpha > 0.0) {
    std::vector<double> h = uniform_grid(std::min(grid, 96));
    std::vector<Vec2c> v(h.size());
    for (size_t i = 0; i < h.size(); ++i) v[i] = {clenshaw_t<cd>(dx, h[i]), clenshaw_t<cd>(dy, h[i])};
    double q = 0.0;
    for (size_t i = 0; i < h.size(); ++i)
      for (size_t j = i + 1; j < h.size(); ++j) q = std::max(q, cnorm(v[i] - v[j]) / std::pow(h[j] - h[i], alpha));
    total += q;
  }
  return total;
}

TangentBounds tangent_bounds(const std::vector<Arc>& samples, int grid) {
  if (samples.empty()) throw InvalidArgument("empty arc sample set");
  std::vector<double> g = uniform_grid(grid);
  TangentBounds b{std::numeric_limits<double>::infinity(), 0.0};
  for (const Arc& a : samples) {
    ArcTable tab = tabulate(a, g);
    for (const Vec2c& d : tab.dr) {
      double n = cnorm(d);
      b.inf = std::min(b.inf, n);
      b.sup = std::max(b.sup, n);
    }
  }
  return b;
}

double delta_self(const std::vector<Arc>& samples, int grid) {
  for (const Arc& a : samples)
    if (!a.is_real()) throw InvalidArgument("delta_self expects real arcs");
  TangentBounds b = tangent_bounds(samples, grid);
  if (b.inf < 1e-12) throw GeometryError("vanishing tangent in arc sample set");
  return std::sqrt(b.inf * b.inf + b.sup * b.sup) - b.sup;
}

CrossBounds cross_bounds(const std::vector<Arc>& k1, const std::vector<Arc>& k2, int grid) {
  if (k1.empty() || k2.empty()) throw InvalidArgument("empty arc sample set");
  std::vector<double> g = uniform_grid(grid);
  std::vector<ArcTable> t1, t2;
  for (const Arc& a : k1) t1.push_back(tabulate(a, g));
  for (const Arc& a : k2) t2.push_back(tabulate(a, g));
  double sup1 = 0.0, sup2 = 0.0;
  for (const auto& t : t1)
    for (const auto& v : t.r) sup1 = std::max(sup1, cnorm(v));
  for (const auto& t : t2)
    for (const auto& v : t.r) sup2 = std::max(sup2, cnorm(v));
  double inf = std::numeric_limits<double>::infinity();
  for (const auto& a : t1)
    for (const auto& b : t2)
      for (const auto& u : a.r)
        for (const auto& v : b.r) inf = std::min(inf, cnorm(u - v));
  return {inf, sup1 + sup2};
}

std::pair<double, double> delta_cross(const std::vector<Arc>& k1, const std::vector<Arc>& k2, int grid) {
  CrossBounds b = cross_bounds(k1, k2, grid);
  if (b.inf_distance < 1e-12) throw GeometryError("arcs touch or intersect");
  double d = 0.5 * (std::sqrt(b.inf_distance * b.inf_distance + b.sup_sum * b.sup_sum) - b.sup_sum);
  return {d, d};
}

double injectivity_ratio(const Arc& arc, int grid) {
  std::vector<double> g = uniform_grid(grid);
  TangentGrid tg = averaged_tangent_grid(arc, g, g);
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      if (i == j) continue;
      worst = std::min(worst, cnorm(Vec2c(tg.mx(i, j), tg.my(i, j))));
    }
  return worst;
}

int ParametricArcFamily::max_terms() const {
  size_t n = 0;
  for (const auto& p : perturbations) n = std::max(n, p.size());
  return static_cast<int>(n);
}

double ParametricArcFamily::b_of(int j, int n) const {
  if (j < static_cast<int>(b.size()) && n < static_cast<int>(b[j].size())) return b[j][n];
  return 0.0;
}

double ParametricArcFamily::b_parameter(int k) const {
  const int m = arcs();
  return b_of(k % m, k / m);
}

void ParametricArcFamily::fill_b(int grid) {
  b.assign(arcs(), {});
  for (int j = 0; j < arcs(); ++j) {
    if (j >= static_cast<int>(perturbations.size())) continue;
    for (const Arc& p : perturbations[j]) b[j].push_back(holder_surrogate_norm(p, nominal[j].m, nominal[j].alpha, grid));
  }
}

std::vector<Arc> materialize_complex(const ParametricArcFamily& family, const std::vector<cd>& y) {
  const int m = family.arcs();
  std::vector<Arc> out = family.nominal;
  const int total = family.parameter_count();
  for (int k = 0; k < std::min<int>(total, static_cast<int>(y.size())); ++k) {
    int j = k % m, n = k / m;
    if (j >= static_cast<int>(family.perturbations.size()) || n >= static_cast<int>(family.perturbations[j].size()))
      continue;
    if (y[k] != cd(0)) out[j] = arc_axpy(out[j], y[k], family.perturbations[j][n]);
  }
  return out;
}

std::vector<Arc> materialize(const ParametricArcFamily& family, const std::vector<double>& y) {
  for (double v : y)
    if (!(std::abs(v) <= 1.0)) throw InvalidArgument("parameter outside [-1,1]");
  return materialize_complex(family, std::vector<cd>(y.begin(), y.end()));
}

std::vector<std::vector<Arc>> family_samples(const ParametricArcFamily& family) {
  const int m = family.arcs();
  std::vector<std::vector<Arc>> s(m);
  for (int j = 0; j < m; ++j) {
    s[j].push_back(family.nominal[j]);
    if (j >= static_cast<int>(family.perturbations.size())) continue;
    const auto& pj = family.perturbations[j];
    Arc plus = family.nominal[j], minus = family.nominal[j];
    for (const Arc& p : pj) {
      s[j].push_back(arc_axpy(family.nominal[j], 1.0, p));
      s[j].push_back(arc_axpy(family.nominal[j], -1.0, p));
      plus = arc_axpy(plus, 1.0, p);
      minus = arc_axpy(minus, -1.0, p);
    }
    if (pj.size() > 1) {
      s[j].push_back(plus);
      s[j].push_back(minus);
    }
  }
  return s;
}

AdmissibilityReport check_family(const ParametricArcFamily& family, int grid) {
  AdmissibilityReport rep;
  const int m = family.arcs();
  if (m == 0) throw InvalidArgument("family has no arcs");
  ParametricArcFamily fam = family;
  if (fam.b.empty()) fam.fill_b(grid);
  std::vector<double> g = uniform_grid(grid);

  rep.summable = true;
  for (const auto& bj : fam.b)
    for (double v : bj)
      if (!std::isfinite(v) || v < 0.0) rep.summable = false;

  rep.zeta = 0.0;
  std::vector<double> sup_sum(m, 0.0);
  for (int j = 0; j < m; ++j) {
    TangentBounds tb = tangent_bounds({fam.nominal[j]}, grid);
    std::vector<double> acc(g.size(), 0.0);
    if (j < static_cast<int>(fam.perturbations.size())) {
      for (const Arc& p : fam.perturbations[j]) {
        ArcTable tab = tabulate(p, g);
        double sup = 0.0;
        for (size_t i = 0; i < g.size(); ++i) {
          acc[i] += cnorm(tab.dr[i]);
          sup = std::max(sup, cnorm(tab.r[i]));
        }
        sup_sum[j] += sup;
      }
    }
    double worst = *std::max_element(acc.begin(), acc.end());
    double z = tb.inf > 0.0 ? worst / tb.inf : std::numeric_limits<double>::infinity();
    rep.zeta = std::max(rep.zeta, z);
  }
  rep.pass_zeta = rep.zeta < 1.0;
  if (!rep.pass_zeta) rep.messages.push_back("tangent perturbation ratio zeta >= 1");

  rep.eta = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      CrossBounds cb = cross_bounds({fam.nominal[i]}, {fam.nominal[j]}, grid);
      double e = cb.inf_distance > 0.0 ? (sup_sum[i] + sup_sum[j]) / cb.inf_distance
                                       : std::numeric_limits<double>::infinity();
      rep.eta = std::max(rep.eta, e);
    }
  rep.pass_eta = rep.eta < 1.0;
  if (!rep.pass_eta) rep.messages.push_back("separation perturbation ratio eta >= 1");

  std::vector<std::vector<Arc>> samples = family_samples(fam);
  rep.pass_self = true;
  for (int j = 0; j < m; ++j) {
    double d = 0.0;
    bool real = true;
    for (const Arc& a : samples[j]) real = real && a.is_real();
    if (!real) {
      rep.messages.push_back("arc " + std::to_string(j) + " is not real");
      rep.pass_self = false;
    } else {
      try {
        d = delta_self(samples[j], grid);
      } catch (const GeometryError& e) {
        rep.messages.push_back("arc " + std::to_string(j) + ": " + e.what());
      }
    }
    rep.delta_self.push_back(d);
    if (!(d > 0.0)) rep.pass_self = false;
  }
  rep.pass_cross = true;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      double d = 0.0;
      try {
        d = delta_cross(samples[i], samples[j], grid).first;
      } catch (const GeometryError& e) {
        rep.messages.push_back("arcs " + std::to_string(i) + "," + std::to_string(j) + ": " + e.what());
      }
      rep.delta_cross.push_back({i, j, d});
      if (!(d > 0.0)) rep.pass_cross = false;
    }
  rep.pass = rep.summable && rep.pass_zeta && rep.pass_eta && rep.pass_self && rep.pass_cross;
  return rep;
}

Arc random_perturbation(std::uint64_t seed, int degree, double norm, int m, double alpha, int grid) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  VectorXcd x(degree + 1), y(degree + 1);
  for (int k = 0; k <= degree; ++k) {
    x[k] = cd(gauss(rng), gauss(rng));
    y[k] = cd(gauss(rng), gauss(rng));
  }
  Arc p(x, y, m, alpha);
  double s = holder_surrogate_norm(p, m, alpha, grid);
  p.x *= norm / s;
  p.y *= norm / s;
  return p;
}

TubeReport verify_tube_positivity(const std::vector<Arc>& arcs, double delta_self_value, double delta_cross_value,
                                  int n_samples, std::uint64_t seed, int grid, int perturbation_degree) {
  TubeReport rep;
  rep.samples = n_samples;
  rep.has_cross = arcs.size() > 1;
  const int m = static_cast<int>(arcs.size());
  std::vector<double> g = uniform_grid(grid);
  std::vector<double> min_q(n_samples, 1e300), min_qi(n_samples, 1e300), min_d(n_samples, 1e300);

  parallel_for(n_samples, [&](int s) {
    std::mt19937_64 rng(seed + 7919ull * s);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<Arc> pert(m), cross_pert(m);
    for (int j = 0; j < m; ++j) {
      double u = unif(rng);
      std::uint64_t sub = rng();
      pert[j] = arc_axpy(arcs[j], 1.0,
                         random_perturbation(sub, perturbation_degree, u * delta_self_value, arcs[j].m, arcs[j].alpha));
      double uc = unif(rng);
      std::uint64_t subc = rng();
      cross_pert[j] = arc_axpy(arcs[j], 1.0,
                               random_perturbation(subc, perturbation_degree, uc * delta_cross_value, arcs[j].m, arcs[j].alpha));
    }
    for (int j = 0; j < m; ++j) {
      TangentGrid tg = averaged_tangent_grid(pert[j], g, g);
      MatrixXcd q = tg.mx.cwiseProduct(tg.mx) + tg.my.cwiseProduct(tg.my);
      min_q[s] = std::min(min_q[s], q.real().minCoeff());
      min_qi[s] = std::min(min_qi[s], q.cwiseInverse().real().minCoeff());
    }
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) {
        ArcTable a = tabulate(cross_pert[i], g), b = tabulate(cross_pert[j], g);
        for (const auto& u : a.r)
          for (const auto& v : b.r) {
            Vec2c d = u - v;
            min_d[s] = std::min(min_d[s], bdot(d, d).real());
          }
      }
  });

  rep.min_re_q = *std::min_element(min_q.begin(), min_q.end());
  rep.min_re_q_inv = *std::min_element(min_qi.begin(), min_qi.end());
  rep.min_re_d2_cross = rep.has_cross ? *std::min_element(min_d.begin(), min_d.end()) : 0.0;
  rep.pass = rep.min_re_q > 0.0 && rep.min_re_q_inv > 0.0 && (!rep.has_cross || rep.min_re_d2_cross > 0.0);
  return rep;
}

}  // namespace arcwave
