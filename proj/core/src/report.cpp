#include "idemgeo/report.hpp"

#include <sstream>
#include <stdexcept>

#include "idemgeo/geometry.hpp"
#include "idemgeo/poisson.hpp"

namespace idemgeo {

bool SuiteResult::passed() const {
  for (const CheckResult& c : checks)
    if (!c.passed) return false;
  return true;
}

const CheckResult* SuiteResult::find(const std::string& check_name) const {
  for (const CheckResult& c : checks)
    if (c.name == check_name) return &c;
  return nullptr;
}

bool VerifyReport::passed() const {
  for (const SuiteResult& s : suites)
    if (!s.passed()) return false;
  return true;
}

VerifyReport run_verification(const VerifyConfig& cfg) {
  VerifyReport report;
  report.config = cfg;
  if (report.config.suites.empty()) report.config.suites = suite_names();

  report.rng_name = "mt19937_64+boxmuller";
  report.metric_scale = metric_scale();
  report.metric_scale_spread = metric_scale_spread();
  report.bracket_orientation = bracket_orientation();
  report.bracket_scale = bracket_scale();

  for (const std::string& name : report.config.suites) {
    report.suites.push_back(run_suite(name, report.config));
  }
  return report;
}

nlohmann::json report_to_json(const VerifyReport& report) {
  nlohmann::json j;
  j["config"] = {{"suites", report.config.suites},
                 {"dim", report.config.dim},
                 {"rank", report.config.rank},
                 {"trials", report.config.trials},
                 {"samples", report.config.samples},
                 {"seed", report.config.seed},
                 {"tol_scale", report.config.tol_scale}};
  j["rng"] = report.rng_name;
  j["calibration"] = {{"metric_scale", report.metric_scale},
                      {"metric_scale_spread", report.metric_scale_spread},
                      {"bracket_orientation", report.bracket_orientation},
                      {"bracket_scale", report.bracket_scale}};
  nlohmann::json suites = nlohmann::json::array();
  for (const SuiteResult& s : report.suites) {
    nlohmann::json checks = nlohmann::json::array();
    for (const CheckResult& c : s.checks) {
      nlohmann::json cj = {{"name", c.name},
                           {"anchor", c.anchor},
                           {"max_residual", c.max_residual},
                           {"tolerance", c.tolerance},
                           {"trials", c.trials},
                           {"passed", c.passed}};
      if (!c.details.is_null()) cj["details"] = c.details;
      checks.push_back(std::move(cj));
    }
    suites.push_back({{"name", s.name}, {"passed", s.passed()}, {"checks", std::move(checks)}});
  }
  j["suites"] = std::move(suites);
  j["passed"] = report.passed();
  return j;
}

std::string report_to_text(const VerifyReport& report) {
  std::ostringstream out;
  out.setf(std::ios::scientific);
  out.precision(3);

  out << "verification report\n";
  out << "  rng: " << report.rng_name << "  seed: " << report.config.seed
      << "  samples: " << report.config.samples
      << "  tol-scale: " << report.config.tol_scale << "\n";
  out << "  calibration: metric_scale=" << report.metric_scale
      << " (spread " << report.metric_scale_spread
      << "), bracket=" << (report.bracket_orientation >= 0 ? "+" : "-")
      << report.bracket_scale << "\n";

  double total = 0.0;
  for (const SuiteResult& s : report.suites) {
    out << "suite " << s.name << (s.passed() ? "  [pass]" : "  [FAIL]") << "\n";
    for (const CheckResult& c : s.checks) {
      out << "  " << (c.passed ? "pass" : "FAIL") << "  " << c.name
          << "  residual " << c.max_residual << " <= " << c.tolerance;
      if (report.config.tol_scale != 1.0) out << " * " << report.config.tol_scale;
      out << "  (" << c.trials << " trials, " << c.seconds << " s)\n";
      out << "        " << c.anchor << "\n";
    }
    total += s.seconds;
  }
  out << (report.passed() ? "ALL SUITES PASSED" : "FAILURES PRESENT") << "  ("
      << total << " s total)\n";
  return out.str();
}

}  // namespace idemgeo
