#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "arcwave/checks.hpp"
#include "arcwave/io.hpp"
#include "arcwave/parallel.hpp"

namespace fs = std::filesystem;
using namespace arcwave;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kConfig = 2, kGeometry = 3, kSolver = 4, kCertificate = 5 };

struct Common {
  std::string config;
  std::string out = ".";
  int threads = 0;
  std::optional<std::uint64_t> seed;
};

std::string in_out(const Common& c, const std::string& name) { return (fs::path(c.out) / name).string(); }

ExperimentConfig prepare(const Common& c) {
  set_num_threads(c.threads);
  ExperimentConfig cfg = load_config(c.config);
  if (c.seed) cfg.seed = *c.seed;
  std::error_code ec;
  fs::create_directories(c.out, ec);
  if (ec) throw ConfigError("cannot create output directory " + c.out + ": " + ec.message());
  return cfg;
}

int cmd_solve(const Common& c) {
  ExperimentConfig cfg = prepare(c);
  AssemblyOptions opt;
  opt.quadrature = cfg.quadrature;
  ScatteringSolution sol = solve_scattering(cfg.arcs, cfg.pde, cfg.incident, cfg.problem, cfg.N, opt);
  Json j = solution_to_json(sol);
  j["seed"] = cfg.seed;
  write_json_file(in_out(c, cfg.outputs.solution), j);
  if (cfg.outputs.field_grid) write_field_grid_csv(in_out(c, *cfg.outputs.field_grid), sol, cfg.outputs.grid);
  if (cfg.outputs.far_field) write_far_field_csv(in_out(c, *cfg.outputs.far_field), sol, cfg.outputs.far_field_angles);
  for (const auto& w : sol.diagnostics.warnings) std::cerr << "warning: " << w << "\n";
  std::cout << "solved " << problem_name(cfg.problem) << " " << cfg.pde.name() << " N=" << cfg.N
            << ", rho_hat " << sol.diagnostics.rho_hat << ", condition " << sol.diagnostics.condition_estimate << "\n";
  return kOk;
}

int cmd_sweep(const Common& c, const std::vector<int>& indices, std::optional<int> nodes) {
  ExperimentConfig cfg = prepare(c);
  if (!cfg.family) throw ConfigError("sweep needs a geometry family");
  std::vector<int> idx = indices.empty() ? cfg.sweep.indices : indices;
  const int n = nodes ? *nodes : cfg.sweep.nodes;
  if (n < 3) throw ConfigError("--nodes must be at least 3");
  for (int k : idx)
    if (k < 0 || k >= cfg.family->parameter_count())
      throw ConfigError("--index " + std::to_string(k) + " outside the family parameters");
  AdmissibilityReport adm = check_family(*cfg.family);
  Certificate cert = bpe_certificate(*cfg.family, cfg.model(), idx, n, cfg.sweep.epsilon_scan);
  Json j = certificate_to_json(cert);
  j["admissibility"] = admissibility_to_json(adm);
  j["seed"] = cfg.seed;
  write_json_file(in_out(c, cfg.outputs.certificate), j);
  write_sweep_csv(in_out(c, cfg.outputs.sweep), cert.sweeps);
  write_coefficients_csv(in_out(c, cfg.outputs.coefficients), cert.sweeps);
  for (const SweepResult& s : cert.sweeps)
    std::cout << "parameter " << s.index << ": rho_hat " << s.rho_hat << ", residual " << s.residual << "\n";
  for (const auto& m : cert.messages) std::cerr << m << "\n";
  std::cout << "certificate " << (cert.pass ? "pass" : "fail") << "\n";
  return cert.pass ? kOk : kCertificate;
}

int cmd_verify(const std::string& suite, int threads) {
  set_num_threads(threads);
  std::vector<checks::CheckResult> results;
  if (suite == "acceptance") {
    for (int id = 1; id <= checks::kAcceptanceCount; ++id) {
      results.push_back(checks::acceptance(id));
      std::cout << checks::format_result(results.back()) << std::endl;
    }
  } else {
    if (!checks::is_suite(suite)) throw ConfigError("unknown suite: " + suite);
    results = checks::run_suite(suite);
    for (const auto& r : results) std::cout << checks::format_result(r) << "\n";
  }
  int failed = 0;
  for (const auto& r : results) failed += r.pass ? 0 : 1;
  std::cout << results.size() - failed << "/" << results.size() << " checks passed\n";
  return failed == 0 ? kOk : kVerifyFailed;
}

int cmd_info(const std::optional<std::string>& write_fixtures) {
  if (write_fixtures) {
    checks::write_regression_fixtures(*write_fixtures);
    std::cout << "wrote " << *write_fixtures << "\n";
    return kOk;
  }
  std::cout << "arcwave " << ARCWAVE_VERSION << "\n";
  std::cout << "threads: " << num_threads() << "\n";
  std::cout << "kernels:\n";
  std::printf("  laplace    F1(0) = %.16g\n", laplace_split().F1_at_zero().real());
  for (double k : {1.0})
    std::printf("  helmholtz  kappa=%g F1(0) = %.16g\n", k, helmholtz_split({k}).F1_at_zero().real());
  ElasticParams p;
  std::printf("  elastic    alpha=%g beta=%g omega=%g J1(0) = %.16g, kp = %.16g, ks = %.16g\n", p.alpha, p.beta,
              p.omega, elastic_split(p).F1_at_zero().real(), p.kp(), p.ks());
  std::cout << "suites:";
  for (const auto& s : checks::suite_names()) std::cout << " " << s;
  std::cout << " acceptance\n";
  try {
    std::cout << checks::fixture_summary(checks::fixture_path());
  } catch (const std::exception& e) {
    std::cout << "fixtures: unavailable (" << e.what() << ")\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral Galerkin solver for wave scattering by open arcs"};
  app.require_subcommand(1);

  Common common;
  std::vector<int> indices;
  std::optional<int> nodes;
  std::string suite = "all";
  std::optional<std::string> write_fixtures;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config, "Experiment config (JSON)")->required();
    sub->add_option("--out", common.out, "Output directory");
    sub->add_option("--threads", common.threads, "Worker threads (0 = auto)")->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", common.seed, "Override the config seed");
  };

  CLI::App* solve = app.add_subcommand("solve", "Solve one scattering problem");
  add_common(solve);
  CLI::App* sweep = app.add_subcommand("sweep", "Parameter sweeps and holomorphy certificate");
  add_common(sweep);
  sweep->add_option("--index", indices, "Parameter index (repeatable)");
  sweep->add_option("--nodes", nodes, "Chebyshev-Lobatto nodes per parameter");
  CLI::App* verify = app.add_subcommand("verify", "Run oracle check suites");
  verify->add_option("--suite", suite, "spectral|kernels|operators|geometry|holomorphy|regression|acceptance|all");
  verify->add_option("--threads", common.threads, "Worker threads (0 = auto)")->check(CLI::NonNegativeNumber);
  CLI::App* info = app.add_subcommand("info", "Kernel constants and regression fixture metadata");
  info->add_option("--write-fixtures", write_fixtures, "Regenerate the regression fixture file at this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*solve) return cmd_solve(common);
    if (*sweep) return cmd_sweep(common, indices, nodes);
    if (*verify) return cmd_verify(suite, common.threads);
    return cmd_info(write_fixtures);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const GeometryError& e) {
    std::cerr << "geometry error: " << e.what() << "\n";
    return kGeometry;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSolver;
  }
}
