#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace idemgeo {

/// Default master seed for verification runs; overridden by the
/// IDEMGEO_SEED environment variable or an explicit configuration.
inline constexpr std::uint64_t kDefaultSeed = 0x1de9'e05e'edull;

/// Outcome of a single named check. `anchor` states the identity or
/// property under test as a formula, so results are traceable by
/// content. `max_residual` is the worst scaled residual over all
/// trials; the check passes iff it is <= tolerance * tol_scale.
struct CheckResult {
  std::string name;
  std::string anchor;
  double max_residual = 0.0;
  double tolerance = 0.0;
  long trials = 0;
  bool passed = false;
  double seconds = 0.0;    // reported in text output only
  nlohmann::json details;  // deterministic extras (constants, margins)
};

struct SuiteResult {
  std::string name;
  std::vector<CheckResult> checks;
  double seconds = 0.0;

  bool passed() const;
  const CheckResult* find(const std::string& check_name) const;
};

struct VerifyConfig {
  std::vector<std::string> suites;  // empty = all
  int dim = 0;                      // 0 = per-suite default grids
  int rank = 0;                     // used only when dim > 0
  int trials = 0;                   // 0 = per-check defaults
  long samples = 100000;            // Monte Carlo sample count
  std::uint64_t seed = kDefaultSeed;
  double tol_scale = 1.0;
  bool dump_counterexample = false;
  std::string dump_path = "counterexample.json";
};

struct VerifyReport {
  VerifyConfig config;
  std::string rng_name;
  double metric_scale = 0.0;
  double metric_scale_spread = 0.0;
  double bracket_orientation = 0.0;
  double bracket_scale = 0.0;
  std::vector<SuiteResult> suites;

  bool passed() const;
};

/// Names of all registered suites, in canonical order.
const std::vector<std::string>& suite_names();

/// Runs one suite under the given configuration.
/// Throws std::invalid_argument for an unknown suite name.
SuiteResult run_suite(const std::string& name, const VerifyConfig& cfg);

/// Runs the configured suites (all by default) and assembles the report,
/// including the calibrated constants.
VerifyReport run_verification(const VerifyConfig& cfg);

/// JSON rendering. Deliberately omits all timing so that two runs with
/// the same configuration produce byte-identical output.
nlohmann::json report_to_json(const VerifyReport& report);

/// Human-readable rendering, including per-check and per-suite timing.
std::string report_to_text(const VerifyReport& report);

}  // namespace idemgeo
