#include "arcwave/holomorphy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "arcwave/parallel.hpp"

namespace arcwave {

Functional far_field_functional(const Eigen::Vector2d& xhat) {
  return [xhat](const ScatteringSolution& sol) { return far_field(sol, xhat); };
}

Functional potential_functional(const Vec2c& x, int component) {
  return [x, component](const ScatteringSolution& sol) {
    return linear_functional(sol, potential_probe(sol.pde, sol.problem, x, component));
  };
}

cd ForwardModel::evaluate(const std::vector<Arc>& arcs) const {
  if (!functional) throw InvalidArgument("forward model has no functional");
  ScatteringSolution sol = solve_scattering(arcs, pde, incident, problem, N, assembly);
  return functional(sol);
}

std::vector<double> lobatto_nodes(int n) {
  if (n < 2) throw InvalidArgument("at least two Lobatto nodes are required");
  std::vector<double> t(n);
  for (int k = 0; k < n; ++k) t[k] = std::cos(kPi * k / (n - 1));
  return t;
}

VectorXcd lobatto_coefficients(const std::vector<cd>& values) {
  const int n = static_cast<int>(values.size());
  if (n < 2) throw InvalidArgument("at least two Lobatto values are required");
  const int m = n - 1;
  VectorXcd c(n);
  for (int k = 0; k <= m; ++k) {
    cd s = 0.0;
    for (int j = 0; j <= m; ++j) {
      const double w = (j == 0 || j == m) ? 0.5 : 1.0;
      s += w * values[j] * std::cos(kPi * double(j) * k / m);
    }
    s *= 2.0 / m;
    if (k == 0 || k == m) s *= 0.5;
    c[k] = s;
  }
  return c;
}

SweepResult sweep_parameter(const ParametricArcFamily& family, const ForwardModel& model, int index, int n_nodes) {
  if (index < 0 || index >= family.parameter_count()) throw InvalidArgument("parameter index out of range");
  SweepResult r;
  r.index = index;
  r.n_nodes = n_nodes;
  r.nodes = lobatto_nodes(n_nodes);
  r.values.assign(n_nodes, 0.0);
  std::vector<std::string> errors(n_nodes);
  parallel_for(n_nodes, [&](int k) {
    std::vector<double> y(family.parameter_count(), 0.0);
    y[index] = r.nodes[k];
    try {
      r.values[k] = model.evaluate(materialize(family, y));
    } catch (const std::exception& e) {
      errors[k] = e.what();
    }
  });
  for (int k = 0; k < n_nodes; ++k)
    if (!errors[k].empty())
      throw SolverError("sweep of parameter " + std::to_string(index) + " failed at node " + std::to_string(k) +
                        " (y = " + std::to_string(r.nodes[k]) + "): " + errors[k]);
  r.coefficients = lobatto_coefficients(r.values);
  DecayFit fit = fit_geometric_decay(r.coefficients.cwiseAbs());
  r.rho_hat = fit.rho;
  r.residual = fit.residual;
  return r;
}

namespace {

std::vector<Arc> shifted(const std::vector<Arc>& arcs, int j, const Arc& v, cd s) {
  std::vector<Arc> out = arcs;
  out[j] = arc_axpy(arcs[j], s, v);
  return out;
}

double relative(cd a, cd b) {
  const double scale = std::abs(b);
  return scale > 0.0 ? std::abs(a - b) / scale : std::abs(a - b);
}

}  // namespace

cd directional_derivative(const std::vector<Arc>& arcs, int arc_index, const Arc& direction, cd scale,
                          const ForwardModel& model, double h) {
  const cd f0 = model.evaluate(arcs);
  auto forward = [&](double step) { return (model.evaluate(shifted(arcs, arc_index, direction, scale * step)) - f0) / step; };
  const cd d1 = forward(h), d2 = forward(h / 2), d4 = forward(h / 4), d8 = forward(h / 8);
  const cd r1 = 2.0 * d2 - d1, r2 = 2.0 * d4 - d2, r3 = 2.0 * d8 - d4;
  const cd s1 = (4.0 * r2 - r1) / 3.0, s2 = (4.0 * r3 - r2) / 3.0;
  return (8.0 * s2 - s1) / 7.0;
}

DerivativeCheck complex_step_check(const std::vector<Arc>& arcs, int arc_index, const Arc& direction,
                                   const ForwardModel& model, const std::vector<double>& steps) {
  if (arc_index < 0 || arc_index >= static_cast<int>(arcs.size())) throw InvalidArgument("arc index out of range");
  if (steps.empty()) throw InvalidArgument("at least one step is required");
  for (size_t k = 0; k < steps.size(); ++k) {
    if (!(steps[k] > 0.0)) throw InvalidArgument("steps must be positive");
    if (k > 0 && !(steps[k] < steps[k - 1])) throw InvalidArgument("steps must be strictly decreasing");
  }
  DerivativeCheck d;
  d.steps = steps;
  const bool zero = direction.x.isZero(0.0) && direction.y.isZero(0.0);
  for (double h : steps) {
    if (zero) {
      d.complex_step.push_back(0.0);
      d.central.push_back(0.0);
      continue;
    }
    const cd fp = model.evaluate(shifted(arcs, arc_index, direction, kI * h));
    const cd fm = model.evaluate(shifted(arcs, arc_index, direction, -kI * h));
    d.complex_step.push_back((fp - fm) / (2.0 * kI * h));
    const cd gp = model.evaluate(shifted(arcs, arc_index, direction, h));
    const cd gm = model.evaluate(shifted(arcs, arc_index, direction, -h));
    d.central.push_back((gp - gm) / (2.0 * h));
  }
  const cd ref = d.complex_step.back();
  for (size_t k = 0; k < steps.size(); ++k) {
    d.max_relative_gap = std::max(d.max_relative_gap, relative(d.central[k], d.complex_step[k]));
    d.step_spread = std::max(d.step_spread, relative(d.complex_step[k], ref));
  }
  if (!zero) {
    d.derivative_v = directional_derivative(arcs, arc_index, direction, 1.0, model, d.cr_step);
    d.derivative_iv = directional_derivative(arcs, arc_index, direction, kI, model, d.cr_step);
    d.cr_gap = relative(d.derivative_iv, kI * d.derivative_v);
  }
  return d;
}

bool admissible_polyradius(const std::vector<double>& b, double epsilon, const std::vector<double>& rho) {
  if (b.size() != rho.size()) throw InvalidArgument("b and rho must have the same length");
  double sum = 0.0, magnitude = 0.0;
  for (size_t j = 0; j < b.size(); ++j) {
    if (b[j] < 0.0) throw InvalidArgument("b must be nonnegative");
    if (b[j] > 0.0 && !(rho[j] > 1.0)) throw InvalidArgument("rho_j must exceed 1 where b_j > 0");
    if (b[j] == 0.0) continue;
    const double term = (rho[j] - 1.0) * b[j];
    sum += term;
    magnitude += std::abs(term);
  }
  // Rounding allowance of the summation.
  const double slack = 4.0 * std::numeric_limits<double>::epsilon() * (magnitude + std::abs(epsilon));
  return sum <= epsilon + slack;
}

namespace {

double energy_norm(const MatrixXcd& a, int components, double power) {
  const int n = static_cast<int>(a.rows()) / components;
  VectorXd w(a.rows());
  for (int c = 0; c < components; ++c)
    for (int k = 0; k < n; ++k) w[c * n + k] = std::pow(1.0 + k, power);
  MatrixXcd s = w.asDiagonal() * a * w.asDiagonal();
  Eigen::JacobiSVD<MatrixXcd> svd(s);
  return svd.singularValues()[0];
}

double self_block_norm(const Arc& arc, const KernelSplit& split, Problem problem, int N, int components) {
  if (problem == Problem::Dirichlet) return energy_norm(assemble_V_self(arc, split, N).matrix, components, 0.5);
  return energy_norm(assemble_W_block({arc}, 0, 0, split, N).matrix, components, -0.5);
}

}  // namespace

TubeBound tube_operator_bound(const std::vector<Arc>& k_samples, double delta, const Pde& pde, Problem problem, int N,
                              int n_samples, std::uint64_t seed, int perturbation_degree) {
  if (k_samples.empty()) throw InvalidArgument("at least one sample arc is required");
  if (delta < 0.0) throw InvalidArgument("delta must be nonnegative");
  if (n_samples < 0) throw InvalidArgument("sample count must be nonnegative");
  pde.validate();
  const KernelSplit split(pde);
  const int c = pde.components();
  TubeBound out;
  for (const Arc& a : k_samples) out.nominal_norm = std::max(out.nominal_norm, self_block_norm(a, split, problem, N, c));
  out.samples = n_samples;
  out.sample_norms.assign(n_samples, 0.0);
  std::vector<std::string> errors(n_samples);
  parallel_for(n_samples, [&](int s) {
    const std::uint64_t sd = seed + 7919ull * static_cast<std::uint64_t>(s);
    const Arc& base = k_samples[s % k_samples.size()];
    std::mt19937_64 rng(sd);
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    Arc v = random_perturbation(sd, perturbation_degree, 1.0, base.m, base.alpha);
    try {
      out.sample_norms[s] = self_block_norm(arc_axpy(base, u * delta, v), split, problem, N, c);
    } catch (const std::exception& e) {
      errors[s] = e.what();
    }
  });
  for (int s = 0; s < n_samples; ++s)
    if (!errors[s].empty()) throw GeometryError("tube violation at sample " + std::to_string(s) + ": " + errors[s]);
  out.max_norm = out.nominal_norm;
  for (double v : out.sample_norms) out.max_norm = std::max(out.max_norm, v);
  return out;
}

std::vector<double> default_epsilon_scan() {
  std::vector<double> e;
  for (int k = -3; k <= 1; ++k) {
    e.push_back(std::pow(10.0, k));
    if (k < 1) e.push_back(3.0 * std::pow(10.0, k));
  }
  return e;
}

Certificate bpe_certificate(const ParametricArcFamily& family, const ForwardModel& model,
                            const std::vector<int>& indices, int n_nodes, const std::vector<double>& epsilon_scan) {
  if (indices.empty()) throw InvalidArgument("at least one parameter index is required");
  AdmissibilityReport adm = check_family(family);
  if (!adm.pass) {
    std::string msg = "family is not admissible";
    for (const auto& m : adm.messages) msg += "; " + m;
    throw GeometryError(msg);
  }
  Certificate cert;
  cert.indices = indices;
  cert.epsilon_scan = epsilon_scan;
  bool all = true;
  for (int k : indices) {
    cert.b.push_back(family.b_parameter(k));
    cert.sweeps.push_back(sweep_parameter(family, model, k, n_nodes));
    const SweepResult& s = cert.sweeps.back();
    const bool finite = s.coefficients.allFinite();
    const bool ok = finite && s.rho_hat > 1.0 && s.residual < kMaxFitResidual;
    cert.index_pass.push_back(ok);
    if (!ok) {
      all = false;
      cert.messages.push_back("parameter " + std::to_string(k) + ": rho_hat = " + std::to_string(s.rho_hat) +
                              ", residual = " + std::to_string(s.residual) +
                              (finite ? "" : ", non-finite coefficients"));
    }
  }
  cert.monotone = true;
  for (size_t j = 1; j < cert.sweeps.size(); ++j)
    if (cert.sweeps[j].rho_hat < cert.sweeps[j - 1].rho_hat) cert.monotone = false;
  if (!cert.monotone) cert.messages.push_back("rho_hat is not nondecreasing along the indices");
  std::vector<double> rho;
  for (const auto& s : cert.sweeps) rho.push_back(s.rho_hat);
  cert.epsilon_min = 0.0;
  for (size_t j = 0; j < rho.size(); ++j) cert.epsilon_min += (rho[j] - 1.0) * cert.b[j];
  for (double e : epsilon_scan) {
    bool a = false;
    if (all) a = admissible_polyradius(cert.b, e, rho);
    cert.admissible.push_back(a);
  }
  cert.pass = all && cert.monotone;
  return cert;
}

ParametricArcFamily flat_bump_family(int terms, double scale, int m, double alpha) {
  if (terms < 1) throw InvalidArgument("at least one term is required");
  ParametricArcFamily f;
  Arc nominal = segment_arc({-1.0, 0.0}, {1.0, 0.0});
  nominal.m = m;
  nominal.alpha = alpha;
  f.nominal = {nominal};
  f.perturbations.resize(1);
  for (int j = 0; j < terms; ++j) {
    Arc phi = arc_from_function([j](double t) { return Vec2c(0.0, (1.0 - t * t) * std::pow(t, j)); }, j + 2, m, alpha);
    const double norm = holder_surrogate_norm(phi, m, alpha);
    f.perturbations[0].push_back(arc_axpy(Arc(VectorXcd::Zero(1), VectorXcd::Zero(1), m, alpha),
                                          scale * std::pow(2.0, -j) / norm, phi));
  }
  f.fill_b();
  return f;
}

}  // namespace arcwave
