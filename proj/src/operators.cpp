#include "arcwave/operators.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>

#include "arcwave/parallel.hpp"

namespace arcwave {

namespace {

// c_m h_m: normalization of That_m times int T_m^2/w.
double moment_scale(int m) { return m == 0 ? std::sqrt(kPi) : std::sqrt(kPi / 2.0); }

double log_moment(int p) { return p == 0 ? -kPi * kPi * std::log(2.0) : -kPi * kPi / (2.0 * p); }

struct ArcNodes {
  std::vector<double> t;
  std::vector<Vec2c> r, dr;
};

ArcNodes arc_nodes(const Arc& arc, int q) {
  ArcNodes n;
  n.t = chebyshev_nodes(q, Basis::T_plain);
  VectorXcd dx = chebyshev_derivative(arc.x), dy = chebyshev_derivative(arc.y);
  for (double t : n.t) {
    n.r.emplace_back(clenshaw_t<cd>(arc.x, t), clenshaw_t<cd>(arc.y, t));
    n.dr.emplace_back(clenshaw_t<cd>(dx, t), clenshaw_t<cd>(dy, t));
  }
  return n;
}

// Grid of pair geometries for a self or cross block.
class PairGrid {
 public:
  PairGrid(const Arc& ri, const Arc& rj, bool self, int q) : self_(self), a_(arc_nodes(ri, q)), b_(self ? a_ : arc_nodes(rj, q)) {
    if (self) tg_ = averaged_tangent_grid(ri, a_.t, a_.t);
  }
  int size() const { return static_cast<int>(a_.t.size()); }
  PairGeometry at(int i, int j) const {
    PairGeometry g;
    g.x = a_.r[i];
    g.y = b_.r[j];
    g.tx = a_.dr[i];
    g.ty = b_.dr[j];
    g.self = self_;
    if (self_) {
      g.dt = a_.t[i] - a_.t[j];
      g.m = Vec2c(tg_.mx(i, j), tg_.my(i, j));
      g.q = bdot(g.m, g.m);
    }
    return g;
  }

 private:
  bool self_;
  ArcNodes a_, b_;
  TangentGrid tg_;
};

// Component grids of log coefficients and smooth parts.
struct Sampled {
  int comps;
  std::vector<MatrixXcd> a, b;
  Sampled(int c, int q) : comps(c), a(c * c, MatrixXcd::Zero(q, q)), b(c * c, MatrixXcd::Zero(q, q)) {}
};

template <typename F>
Sampled sample_split(int q, int comps, F&& kernel) {
  Sampled s(comps, q);
  parallel_for(q, [&](int i) {
    for (int j = 0; j < q; ++j) {
      SplitKernel k = kernel(i, j);
      for (int c1 = 0; c1 < comps; ++c1)
        for (int c2 = 0; c2 < comps; ++c2) {
          s.a[c1 * comps + c2](i, j) = k.log_coeff(c1, c2);
          s.b[c1 * comps + c2](i, j) = k.smooth(c1, c2);
        }
    }
  });
  for (const auto& m : s.b)
    if (!m.allFinite()) throw KernelError("non-finite kernel sample");
  for (const auto& m : s.a)
    if (!m.allFinite()) throw KernelError("non-finite kernel sample");
  return s;
}

bool is_zero(const MatrixXcd& m) { return m.cwiseAbs().maxCoeff() == 0.0; }

// smooth(b) + log(2 a), per component, into a comps*n square matrix.
MatrixXcd galerkin_split(const Sampled& s, int n) {
  const int c = s.comps;
  MatrixXcd out = MatrixXcd::Zero(c * n, c * n);
  for (int c1 = 0; c1 < c; ++c1)
    for (int c2 = 0; c2 < c; ++c2) {
      const MatrixXcd& a = s.a[c1 * c + c2];
      const MatrixXcd& b = s.b[c1 * c + c2];
      MatrixXcd e = MatrixXcd::Zero(n, n);
      if (!is_zero(b)) e += galerkin_smooth(chebyshev_coefficients_2d(b), n);
      if (!is_zero(a)) e += galerkin_log(chebyshev_coefficients_2d(2.0 * a), n);
      out.block(c1 * n, c2 * n, n, n) = e;
    }
  return out;
}

MatrixXcd kron_identity(int c, const Eigen::MatrixXd& m) {
  MatrixXcd out = MatrixXcd::Zero(c * m.rows(), c * m.cols());
  for (int k = 0; k < c; ++k) out.block(k * m.rows(), k * m.cols(), m.rows(), m.cols()) = m.cast<cd>();
  return out;
}

// V on TW coefficients 0..n-1 through G_R + 2 F1(0) log|t - tau| + 2 (t - tau)^2 log|t - tau| f_S2.
MatrixXcd v_self_tw(const Arc& arc, const KernelSplit& split, int n, int q) {
  const int c = split.pde().components();
  PairGrid grid(arc, arc, true, q);
  Sampled gr(c, q), fs(c, q);
  parallel_for(q, [&](int i) {
    for (int j = 0; j < q; ++j) {
      SelfSplit s = kernel_self_split(split, grid.at(i, j));
      for (int c1 = 0; c1 < c; ++c1)
        for (int c2 = 0; c2 < c; ++c2) {
          gr.b[c1 * c + c2](i, j) = s.g_r(c1, c2);
          fs.b[c1 * c + c2](i, j) = s.f_s2(c1, c2);
        }
    }
  });
  for (int k = 0; k < c * c; ++k)
    if (!gr.b[k].allFinite() || !fs.b[k].allFinite()) throw KernelError("non-finite kernel sample");
  MatrixXcd one = MatrixXcd::Zero(1, 1);
  one(0, 0) = 1.0;
  MatrixXcd l1 = galerkin_log(one, n);
  const cd f10 = split.F1_at_zero();
  MatrixXcd out = MatrixXcd::Zero(c * n, c * n);
  for (int c1 = 0; c1 < c; ++c1)
    for (int c2 = 0; c2 < c; ++c2) {
      MatrixXcd e = galerkin_smooth(chebyshev_coefficients_2d(gr.b[c1 * c + c2]), n);
      e += galerkin_logsq(chebyshev_coefficients_2d(2.0 * fs.b[c1 * c + c2]), n);
      if (c1 == c2) e += 2.0 * f10 * l1;
      out.block(c1 * n, c2 * n, n, n) = e;
    }
  return out;
}

MatrixXcd v_cross_tw(const Arc& ri, const Arc& rj, const KernelSplit& split, int n, int q) {
  PairGrid grid(ri, rj, false, q);
  Sampled s = sample_split(q, split.pde().components(), [&](int i, int j) { return single_layer(split, grid.at(i, j)); });
  return galerkin_split(s, n);
}

OperatorBlock finish_scalar(MatrixXcd tw, int N, Basis domain) {
  OperatorBlock blk;
  blk.domain = domain;
  if (domain == Basis::TW) {
    blk.matrix = tw.topLeftCorner(N + 1, N + 1);
    blk.range = Basis::T_plain;
  } else if (domain == Basis::WU) {
    Eigen::MatrixXd b = wu_to_tw(N);
    blk.matrix = b.transpose().cast<cd>() * tw * b.cast<cd>();
    blk.range = Basis::U_plain;
  } else {
    throw InvalidArgument("operator domain must be TW or WU");
  }
  return blk;
}

MatrixXcd sample_scalar(const KernelFn& f, int q) {
  std::vector<double> t = chebyshev_nodes(q, Basis::T_plain);
  MatrixXcd s(q, q);
  parallel_for(q, [&](int i) {
    for (int j = 0; j < q; ++j) s(i, j) = f(t[i], t[j]);
  });
  if (!s.allFinite()) throw KernelError("non-finite kernel sample");
  return s;
}

int work_size(int N, Basis domain) { return domain == Basis::WU ? N + 3 : N + 1; }

}  // namespace

const char* problem_name(Problem p) { return p == Problem::Dirichlet ? "dirichlet" : "neumann"; }

Problem problem_from_name(const std::string& name) {
  if (name == "dirichlet") return Problem::Dirichlet;
  if (name == "neumann") return Problem::Neumann;
  throw InvalidArgument("unknown problem: " + name);
}

MatrixXcd BlockSystem::dense() const {
  const int m = arcs(), n = block_size();
  MatrixXcd a(m * n, m * n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a.block(i * n, j * n, n, n) = blocks[i][j].matrix;
  return a;
}

bool condition4_holds(int m, double alpha, double s) {
  const double reg = m + alpha;
  return s > -0.5 ? s + 2.5 < reg : 1.5 - s < reg;
}

double default_diagnostic_s(Problem p) { return p == Problem::Dirichlet ? -0.5 : 0.5; }

MatrixXcd chebyshev_coefficients_2d(const MatrixXcd& samples) {
  const int q = static_cast<int>(samples.rows());
  if (samples.cols() != q || q == 0) throw InvalidArgument("kernel samples must form a square grid");
  Eigen::MatrixXd c(q, q);
  for (int k = 0; k < q; ++k)
    for (int i = 0; i < q; ++i) c(k, i) = (k == 0 ? 1.0 : 2.0) / q * std::cos(k * (i + 0.5) * kPi / q);
  MatrixXcd cc = c.cast<cd>();
  return cc * samples * cc.transpose();
}

MatrixXcd galerkin_smooth(const MatrixXcd& a, int n) {
  MatrixXcd e = MatrixXcd::Zero(n, n);
  const int r = std::min<int>(n, a.rows()), c = std::min<int>(n, a.cols());
  for (int m = 0; m < r; ++m)
    for (int k = 0; k < c; ++k) e(m, k) = moment_scale(m) * moment_scale(k) * a(m, k);
  return e;
}

MatrixXcd galerkin_log(const MatrixXcd& a, int n) {
  const int ka = static_cast<int>(a.rows()), la = static_cast<int>(a.cols());
  const int pmax = std::max(ka, la) + n;
  MatrixXcd e = MatrixXcd::Zero(n, n);
  // Indices k with p in {k + m, |k - m|}, with multiplicity.
  auto members = [](int m, int p, int limit, int* out) {
    int cnt = 0;
    if (p - m >= 0 && p - m < limit) out[cnt++] = p - m;
    if (m + p < limit) out[cnt++] = m + p;
    if (p > 0 && m - p >= 0 && m - p < limit) out[cnt++] = m - p;
    return cnt;
  };
  std::vector<double> cn(n);
  for (int m = 0; m < n; ++m) cn[m] = t_norm(m);
  for (int p = 0; p < pmax; ++p) {
    const double mu = log_moment(p);
    for (int m = 0; m < n; ++m) {
      int km[3];
      int nk = members(m, p, ka, km);
      if (nk == 0) continue;
      for (int nn = 0; nn < n; ++nn) {
        int ln[3];
        int nl = members(nn, p, la, ln);
        if (nl == 0) continue;
        cd s = 0.0;
        for (int x = 0; x < nk; ++x)
          for (int y = 0; y < nl; ++y) s += a(km[x], ln[y]);
        e(m, nn) += 0.25 * cn[m] * cn[nn] * mu * s;
      }
    }
  }
  return e;
}

MatrixXcd multiply_by_difference_squared(const MatrixXcd& a) {
  const int n = static_cast<int>(std::max(a.rows(), a.cols())) + 2;
  MatrixXcd p = MatrixXcd::Zero(n, n);
  p.topLeftCorner(a.rows(), a.cols()) = a;
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, n);  // multiplication by t on T-coefficients
  for (int k = 0; k < n; ++k) {
    if (k == 0) {
      if (n > 1) x(1, 0) = 1.0;
    } else {
      if (k + 1 < n) x(k + 1, k) += 0.5;
      x(k - 1, k) += 0.5;
    }
  }
  MatrixXcd xc = x.cast<cd>();
  return xc * (xc * p) - 2.0 * xc * p * xc.transpose() + p * xc.transpose() * xc.transpose();
}

MatrixXcd galerkin_logsq(const MatrixXcd& a, int n) { return galerkin_log(multiply_by_difference_squared(a), n); }

Eigen::MatrixXd wu_to_tw(int N) {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(N + 3, N + 1);
  for (int n = 0; n <= N; ++n) {
    b(n, n) = n == 0 ? 1.0 / std::sqrt(2.0) : 0.5;
    b(n + 2, n) = -0.5;
  }
  return b;
}

Eigen::MatrixXd wu_derivative_to_tw(int N) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(N + 3, N + 1);
  for (int n = 0; n <= N; ++n) d(n + 1, n) = -(n + 1.0);
  return d;
}

OperatorBlock assemble_smooth(const KernelFn& f, int N, Basis domain, int quadrature) {
  const int q = quadrature > 0 ? quadrature : 2 * (N + 3) + 16;
  MatrixXcd a = chebyshev_coefficients_2d(sample_scalar(f, q));
  return finish_scalar(galerkin_smooth(a, work_size(N, domain)), N, domain);
}

OperatorBlock assemble_log(const KernelFn& f, int N, Basis domain, int quadrature) {
  const int q = quadrature > 0 ? quadrature : 2 * (N + 3) + 16;
  MatrixXcd a = chebyshev_coefficients_2d(sample_scalar(f, q));
  return finish_scalar(galerkin_log(a, work_size(N, domain)), N, domain);
}

OperatorBlock assemble_logsq(const KernelFn& f, int N, Basis domain, int quadrature) {
  const int q = quadrature > 0 ? quadrature : 2 * (N + 3) + 16;
  MatrixXcd a = chebyshev_coefficients_2d(sample_scalar(f, q));
  return finish_scalar(galerkin_logsq(a, work_size(N, domain)), N, domain);
}

OperatorBlock assemble_V_self(const Arc& arc, const KernelSplit& split, int N, const AssemblyOptions& opt) {
  OperatorBlock blk;
  blk.components = split.pde().components();
  blk.matrix = v_self_tw(arc, split, N + 1, opt.quadrature_for(N));
  return blk;
}

namespace {

void require_disjoint(const Arc& ri, const Arc& rj) {
  if (cross_bounds({ri}, {rj}, 128).inf_distance < 1e-12) throw GeometryError("arcs touch or intersect");
}

}  // namespace

OperatorBlock assemble_V_cross(const Arc& ri, const Arc& rj, const KernelSplit& split, int N, const AssemblyOptions& opt) {
  require_disjoint(ri, rj);
  OperatorBlock blk;
  blk.components = split.pde().components();
  blk.matrix = v_cross_tw(ri, rj, split, N + 1, opt.quadrature_for(N));
  return blk;
}

OperatorBlock assemble_W_block(const std::vector<Arc>& arcs, int i, int j, const KernelSplit& split, int N,
                               const AssemblyOptions& opt) {
  const int c = split.pde().components();
  const int n3 = N + 3, q = opt.quadrature_for(N);
  const bool self = i == j;
  const Arc& ri = arcs.at(i);
  const Arc& rj = arcs.at(j);
  if (!self) require_disjoint(ri, rj);
  MatrixXcd b = kron_identity(c, wu_to_tw(N)), d = kron_identity(c, wu_derivative_to_tw(N));
  MatrixXcd bt = b.transpose(), dtr = d.transpose();
  PairGrid grid(ri, rj, self, q);
  MatrixXcd w;
  if (split.pde().kind == PdeKind::Elastic) {
    std::vector<ElasticMaue> vals(static_cast<size_t>(q) * q);
    parallel_for(q, [&](int a) {
      for (int bb = 0; bb < q; ++bb) vals[static_cast<size_t>(a) * q + bb] = maue_elastic(split, grid.at(a, bb));
    });
    auto pick = [&](SplitKernel ElasticMaue::*member) {
      return sample_split(q, c, [&](int a, int bb) { return vals[static_cast<size_t>(a) * q + bb].*member; });
    };
    MatrixXcd v1 = galerkin_split(pick(&ElasticMaue::k1), n3);
    MatrixXcd v2 = galerkin_split(pick(&ElasticMaue::k2), n3);
    MatrixXcd v3 = galerkin_split(pick(&ElasticMaue::k3), n3);
    MatrixXcd v4 = galerkin_split(pick(&ElasticMaue::k4), n3);
    w = bt * v1 * b - dtr * v2 * d + bt * v3 * d - dtr * v4 * b;
  } else {
    MatrixXcd vg = self ? v_self_tw(ri, split, n3, q) : v_cross_tw(ri, rj, split, n3, q);
    w = -dtr * vg * d;
    if (split.pde().kind == PdeKind::Helmholtz) {
      Sampled s = sample_split(q, 1, [&](int a, int bb) { return maue_tilde(split, grid.at(a, bb)); });
      w += bt * galerkin_split(s, n3) * b;
    }
  }
  OperatorBlock blk;
  blk.matrix = w;
  blk.domain = Basis::WU;
  blk.range = Basis::U_plain;
  blk.components = c;
  blk.i = i;
  blk.j = j;
  return blk;
}

BlockSystem assemble_system(const std::vector<Arc>& arcs, const Pde& pde, Problem problem, int N,
                            const AssemblyOptions& opt) {
  if (arcs.empty()) throw InvalidArgument("no arcs");
  if (N < 1) throw InvalidArgument("N must be positive");
  pde.validate();
  const double s = opt.diagnostic_s.value_or(default_diagnostic_s(problem));
  for (size_t k = 0; k < arcs.size(); ++k) {
    arcs[k].validate();
    if (!condition4_holds(arcs[k].m, arcs[k].alpha, s))
      throw InvalidArgument("arc " + std::to_string(k) + ": smoothness (m, alpha) too low for diagnostic scale s");
  }
  KernelSplit split(pde);
  BlockSystem sys;
  sys.pde = pde;
  sys.problem = problem;
  sys.N = N;
  const int m = static_cast<int>(arcs.size());
  sys.blocks.assign(m, std::vector<OperatorBlock>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      try {
        OperatorBlock blk;
        if (problem == Problem::Dirichlet) {
          blk = i == j ? assemble_V_self(arcs[i], split, N, opt) : assemble_V_cross(arcs[i], arcs[j], split, N, opt);
        } else {
          blk = assemble_W_block(arcs, i, j, split, N, opt);
        }
        blk.i = i;
        blk.j = j;
        sys.blocks[i][j] = std::move(blk);
      } catch (const GeometryError& e) {
        throw GeometryError("block (" + std::to_string(i) + "," + std::to_string(j) + "): " + e.what());
      }
    }
  return sys;
}

SolveResult solve_system(const BlockSystem& system, const std::vector<SpectralDensity>& rhs) {
  const int m = system.arcs(), n = system.block_size(), c = system.pde.components();
  if (static_cast<int>(rhs.size()) != m) throw InvalidArgument("one right-hand side per arc expected");
  VectorXcd b(m * n);
  for (int i = 0; i < m; ++i) {
    if (rhs[i].coeffs.size() != n || rhs[i].components != c) throw InvalidArgument("right-hand side has wrong size");
    b.segment(i * n, n) = rhs[i].coeffs;
  }
  MatrixXcd a = system.dense();
  Eigen::PartialPivLU<MatrixXcd> lu(a);
  SolveResult res;
  res.diagnostics.rcond = lu.rcond();
  if (!(res.diagnostics.rcond > 1e-16)) throw SolverError("Galerkin matrix is numerically singular (nonunique solution)");
  res.diagnostics.condition_estimate = 1.0 / res.diagnostics.rcond;
  if (res.diagnostics.condition_estimate > 1e12) res.diagnostics.warnings.push_back("condition estimate above 1e12");
  VectorXcd x = lu.solve(b);
  double bn = b.norm();
  res.diagnostics.residual = (a * x - b).norm() / (bn > 0.0 ? bn : 1.0);
  Basis domain = system.problem == Problem::Dirichlet ? Basis::TW : Basis::WU;
  for (int i = 0; i < m; ++i) res.densities.emplace_back(x.segment(i * n, n), domain, c);
  return res;
}

namespace {

static_assert(std::endian::native == std::endian::little, "binary dump assumes a little-endian host");

void put_u32(std::ofstream& f, std::uint32_t v) { f.write(reinterpret_cast<const char*>(&v), 4); }

std::uint32_t get_u32(std::ifstream& f) {
  std::uint32_t v = 0;
  f.read(reinterpret_cast<char*>(&v), 4);
  if (!f) throw InvalidArgument("truncated block system file");
  return v;
}

}  // namespace

void write_block_system(const std::string& path, const BlockSystem& system) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot open " + path);
  f.write("ARCW", 4);
  put_u32(f, 1);
  put_u32(f, system.arcs());
  put_u32(f, system.N);
  put_u32(f, static_cast<std::uint32_t>(system.pde.kind));
  put_u32(f, static_cast<std::uint32_t>(system.problem));
  put_u32(f, system.pde.components());
  for (const auto& row : system.blocks)
    for (const auto& blk : row)
      for (Eigen::Index r = 0; r < blk.matrix.rows(); ++r)
        for (Eigen::Index c = 0; c < blk.matrix.cols(); ++c) {
          double v[2] = {blk.matrix(r, c).real(), blk.matrix(r, c).imag()};
          f.write(reinterpret_cast<const char*>(v), sizeof v);
        }
}

BlockSystem read_block_system(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot open " + path);
  char magic[4];
  f.read(magic, 4);
  if (!f || std::string(magic, 4) != "ARCW") throw InvalidArgument("not a block system file");
  if (get_u32(f) != 1) throw InvalidArgument("unsupported block system version");
  BlockSystem sys;
  const int m = static_cast<int>(get_u32(f));
  sys.N = static_cast<int>(get_u32(f));
  sys.pde.kind = static_cast<PdeKind>(get_u32(f));
  sys.problem = static_cast<Problem>(get_u32(f));
  const int c = static_cast<int>(get_u32(f));
  if (c != sys.pde.components()) throw InvalidArgument("component count does not match pde tag");
  const int n = sys.block_size();
  sys.blocks.assign(m, std::vector<OperatorBlock>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      OperatorBlock& blk = sys.blocks[i][j];
      blk.i = i;
      blk.j = j;
      blk.components = c;
      blk.domain = sys.problem == Problem::Dirichlet ? Basis::TW : Basis::WU;
      blk.range = sys.problem == Problem::Dirichlet ? Basis::T_plain : Basis::U_plain;
      blk.matrix.resize(n, n);
      for (int r = 0; r < n; ++r)
        for (int cc = 0; cc < n; ++cc) {
          double v[2];
          f.read(reinterpret_cast<char*>(v), sizeof v);
          if (!f) throw InvalidArgument("truncated block system file");
          blk.matrix(r, cc) = cd(v[0], v[1]);
        }
    }
  return sys;
}

}  // namespace arcwave
