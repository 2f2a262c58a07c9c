#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "arcwave/geometry.hpp"
#include "arcwave/kernels.hpp"
#include "arcwave/spectral.hpp"

namespace arcwave {

enum class Problem { Dirichlet, Neumann };
const char* problem_name(Problem p);
Problem problem_from_name(const std::string& name);

// Dense Galerkin block. Elastic blocks are 2x2 blocks of scalar blocks, component-major:
// row/column index = component * (N+1) + n. The range coefficients are the pairings with the
// dual functions That_m/w (range T_plain) or w Uhat_m (range U_plain).
struct OperatorBlock {
  MatrixXcd matrix;
  Basis domain = Basis::TW;
  Basis range = Basis::T_plain;
  int components = 1;
  int i = 0, j = 0;
  int modes() const { return static_cast<int>(matrix.cols()) / components; }
};

struct BlockSystem {
  std::vector<std::vector<OperatorBlock>> blocks;
  Pde pde;
  Problem problem = Problem::Dirichlet;
  int N = 0;

  int arcs() const { return static_cast<int>(blocks.size()); }
  int block_size() const { return (N + 1) * pde.components(); }
  MatrixXcd dense() const;
};

struct AssemblyOptions {
  int quadrature = 0;  // first-kind nodes per direction; 0 selects 2 (N+3) + 16
  std::optional<double> diagnostic_s;
  int quadrature_for(int N) const { return quadrature > 0 ? quadrature : 2 * (N + 3) + 16; }
};

// Condition 4 on (m, alpha, s): s + 5/2 < m + alpha for s > -1/2, 3/2 - s < m + alpha otherwise.
bool condition4_holds(int m, double alpha, double s);
double default_diagnostic_s(Problem p);

// Galerkin engines. `a` holds classical 2D Chebyshev coefficients a_kl of f(t,tau) = sum a_kl T_k(t) T_l(tau).
// The results map TW coefficients to pairings with That_m/w, n x n.
MatrixXcd chebyshev_coefficients_2d(const MatrixXcd& samples_on_first_kind_grid);
MatrixXcd galerkin_smooth(const MatrixXcd& a, int n);
MatrixXcd galerkin_log(const MatrixXcd& a, int n);  // kernel log|t - tau| f
MatrixXcd multiply_by_difference_squared(const MatrixXcd& a);
MatrixXcd galerkin_logsq(const MatrixXcd& a, int n);  // kernel (t - tau)^2 log|t - tau| f

// wU_n in terms of That_k/w (rows 0..N+2) and d/dt(wU_n) in the same family.
Eigen::MatrixXd wu_to_tw(int N);
Eigen::MatrixXd wu_derivative_to_tw(int N);

using KernelFn = std::function<cd(double, double)>;

// R_f, L_f and S_f for scalar kernels; domain TW or WU.
OperatorBlock assemble_smooth(const KernelFn& f, int N, Basis domain = Basis::TW, int quadrature = 0);
OperatorBlock assemble_log(const KernelFn& f, int N, Basis domain = Basis::TW, int quadrature = 0);
OperatorBlock assemble_logsq(const KernelFn& f, int N, Basis domain = Basis::TW, int quadrature = 0);

// Weakly-singular blocks, TW -> T_plain.
OperatorBlock assemble_V_self(const Arc& arc, const KernelSplit& split, int N, const AssemblyOptions& opt = {});
OperatorBlock assemble_V_cross(const Arc& ri, const Arc& rj, const KernelSplit& split, int N,
                               const AssemblyOptions& opt = {});
// Hypersingular block via the Maue representation, WU -> U_plain. Includes the |r_i'(t)| factor:
// it discretizes |r_i'(t)| times the normal derivative (traction) of the double layer.
OperatorBlock assemble_W_block(const std::vector<Arc>& arcs, int i, int j, const KernelSplit& split, int N,
                               const AssemblyOptions& opt = {});

BlockSystem assemble_system(const std::vector<Arc>& arcs, const Pde& pde, Problem problem, int N,
                            const AssemblyOptions& opt = {});

struct SolveDiagnostics {
  double rcond = 0.0;
  double condition_estimate = 0.0;
  double residual = 0.0;
  std::vector<std::string> warnings;
};

struct SolveResult {
  std::vector<SpectralDensity> densities;
  SolveDiagnostics diagnostics;
};

SolveResult solve_system(const BlockSystem& system, const std::vector<SpectralDensity>& rhs);

// Little-endian dump: "ARCW", u32 version, u32 M, u32 N, u32 pde tag, u32 problem, u32 components,
// then the M*M blocks row-major as (re, im) doubles.
void write_block_system(const std::string& path, const BlockSystem& system);
BlockSystem read_block_system(const std::string& path);

}  // namespace arcwave
