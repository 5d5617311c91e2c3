// Command-line front end for the verification suites. Exit codes:
// 0 = all requested checks passed, 1 = at least one check failed,
// 2 = configuration or I/O error.
#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "idemgeo/report.hpp"

namespace {

bool parse_seed(const std::string& text, std::uint64_t& out) {
  if (text.empty()) return false;
  errno = 0;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(text.c_str(), &end, 0);
  if (errno != 0 || end == nullptr || *end != '\0') return false;
  out = static_cast<std::uint64_t>(value);
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification harness for the variety of fixed-trace idempotent matrices"};

  idemgeo::VerifyConfig cfg;
  std::vector<std::string> suite_flags;
  std::string format = "text";
  std::string out_path;
  std::string seed_text;
  std::string dump_path = "counterexample.json";
  bool list_suites = false;
  bool dump_counterexample = false;

  app.add_option("--dim", cfg.dim, "matrix dimension d (0 = built-in dimension grid)");
  app.add_option("--rank", cfg.rank, "idempotent rank n, used with --dim (0 = 1)");
  app.add_option("--trials", cfg.trials, "per-check trial count override (0 = defaults)");
  app.add_option("--samples", cfg.samples, "Monte Carlo sample count for Haar checks")
      ->check(CLI::PositiveNumber);
  auto* seed_opt = app.add_option("--seed", seed_text,
                                  "master RNG seed (uint64; overrides IDEMGEO_SEED)");
  app.add_option("--tol-scale", cfg.tol_scale, "multiplier applied to every tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--suite", suite_flags, "suite to run (repeatable; default: all)");
  app.add_option("--format", format, "report format")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--out", out_path, "write the report to this file instead of stdout");
  app.add_flag("--dump-counterexample", dump_counterexample,
               "serialize the first failing sample's operands to --dump-path");
  app.add_option("--dump-path", dump_path, "counterexample output path");
  app.add_flag("--list-suites", list_suites, "print available suite names and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (list_suites) {
    for (const std::string& name : idemgeo::suite_names()) std::printf("%s\n", name.c_str());
    return 0;
  }

  // Seed priority: --seed flag, then IDEMGEO_SEED, then the built-in default.
  if (seed_opt->count() > 0) {
    if (!parse_seed(seed_text, cfg.seed)) {
      std::fprintf(stderr, "error: --seed '%s' is not a valid uint64\n", seed_text.c_str());
      return 2;
    }
  } else if (const char* env = std::getenv("IDEMGEO_SEED")) {
    if (!parse_seed(env, cfg.seed)) {
      std::fprintf(stderr, "error: IDEMGEO_SEED '%s' is not a valid uint64\n", env);
      return 2;
    }
  }

  const std::vector<std::string>& known = idemgeo::suite_names();
  for (const std::string& s : suite_flags) {
    if (std::find(known.begin(), known.end(), s) == known.end()) {
      std::fprintf(stderr, "error: unknown suite '%s' (use --list-suites)\n", s.c_str());
      return 2;
    }
  }
  cfg.suites = suite_flags;
  cfg.dump_counterexample = dump_counterexample;
  cfg.dump_path = dump_path;

  idemgeo::VerifyReport report;
  try {
    report = idemgeo::run_verification(cfg);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }

  const std::string rendered = (format == "json")
                                   ? idemgeo::report_to_json(report).dump(2) + "\n"
                                   : idemgeo::report_to_text(report);
  if (out_path.empty()) {
    std::cout << rendered;
  } else {
    std::ofstream out(out_path);
    out << rendered;
    if (!out) {
      std::fprintf(stderr, "error: cannot write report to '%s'\n", out_path.c_str());
      return 2;
    }
  }
  return report.passed() ? 0 : 1;
}
