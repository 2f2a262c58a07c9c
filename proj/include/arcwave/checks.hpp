#pragma once

#include <functional>
#include <string>
#include <vector>

namespace arcwave::checks {

struct CheckResult {
  std::string name;
  double error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

// Suites: spectral, kernels, operators, geometry, holomorphy, regression. "all" runs every suite.
std::vector<std::string> suite_names();
bool is_suite(const std::string& name);
std::vector<CheckResult> run_suite(const std::string& suite);

// Regression fixtures live in <fixture_dir()>/regression.json. ARCWAVE_FIXTURE_DIR overrides
// the directory.
std::string fixture_dir();
std::string fixture_path();
// Recomputes every regression case and writes the fixture file with provenance metadata.
void write_regression_fixtures(const std::string& path);
// Human-readable summary of the fixture file: metadata and case names.
std::string fixture_summary(const std::string& path);

constexpr int kAcceptanceCount = 11;
std::string acceptance_title(int id);
CheckResult acceptance(int id);

// One line per check: PASS/FAIL, name, error, tolerance, time, detail.
std::string format_result(const CheckResult& r);

}  // namespace arcwave::checks
