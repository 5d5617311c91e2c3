// Acceptance gate: runs every verification suite at its default
// configuration and maps the results onto ten pinned criteria, printing
// one PASS/FAIL line per criterion. Exit code 0 only if all ten pass.
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "idemgeo/report.hpp"

namespace {

using idemgeo::CheckResult;
using idemgeo::SuiteResult;

struct Criterion {
  int id = 0;
  std::string description;
  bool passed = false;
  std::string detail;
};

bool require_checks(const SuiteResult& suite, const std::vector<std::string>& names,
                    std::string& detail) {
  bool all = true;
  for (const std::string& name : names) {
    const CheckResult* c = suite.find(name);
    if (!c) {
      all = false;
      detail += " [missing " + name + "]";
    } else if (!c->passed) {
      all = false;
      char buf[160];
      std::snprintf(buf, sizeof(buf), " [%s residual %.3e > tol %.3e]", name.c_str(),
                    c->max_residual, c->tolerance);
      detail += buf;
    }
  }
  return all;
}

}  // namespace

int main() {
  using namespace idemgeo;

  VerifyConfig cfg;  // defaults: full dimension grids, default seed and samples
  std::map<std::string, SuiteResult> suites;
  for (const std::string& name : suite_names()) {
    std::printf("running suite %-18s ...", name.c_str());
    std::fflush(stdout);
    suites[name] = run_suite(name, cfg);
    std::printf(" %s (%.2f s)\n", suites[name].passed() ? "ok" : "FAILED",
                suites[name].seconds);
  }

  std::vector<Criterion> criteria;

  {
    Criterion c{1,
                "defining identities (qAq, [q,[q,A]], tangency of [q,M], [q,AB], "
                "rotation product) at 1e-11 over the dimension grid in under 10 s"};
    c.passed = require_checks(suites["identities"],
                              {"inner-compression", "double-commutator",
                               "commutator-tangency", "product-through-point",
                               "rotation-product"},
                              c.detail);
    if (suites["identities"].seconds >= 10.0) {
      c.passed = false;
      char buf[80];
      std::snprintf(buf, sizeof(buf), " [suite took %.2f s >= 10 s]",
                    suites["identities"].seconds);
      c.detail += buf;
    }
    criteria.push_back(c);
  }
  {
    Criterion c{2,
                "pointwise structures I, J, K and the chart-solved structure square "
                "and commute as required at 1e-10"};
    c.passed = require_checks(suites["complex-structures"],
                              {"J-squared", "K-squared", "K-eigensplit", "IJ-commute",
                               "Jhat-squared", "J-Jhat-commute", "Jbold-squared",
                               "Jbold-anticommutes-I"},
                              c.detail);
    criteria.push_back(c);
  }
  {
    Criterion c{3,
                "the 2-form i Tr(q[A,B]) is closed under the flow engine, "
                "J-invariant, and real plus nondegenerate on the zero section"};
    c.passed = require_checks(suites["symplectic"],
                              {"omega-closed", "omega-J-invariant",
                               "omega-real-on-zero-section",
                               "omega-nondegenerate-zero-section",
                               "omega-unitary-invariant"},
                              c.detail);
    criteria.push_back(c);
  }
  {
    Criterion c{4,
                "a single calibrated metric scale pairs g(JBold A, B) with "
                "Re Omega(A, B) on the rank-1 stratum and g is positive definite"};
    c.passed = require_checks(suites["hyperkahler"],
                              {"metric-calibration", "pairing-g-jbold-omega",
                               "jbold-squared-rank1", "metric-positive",
                               "kahler-form-positivity"},
                              c.detail);
    criteria.push_back(c);
  }
  {
    Criterion c{5,
                "the d = 2 chart lands on the quadric, J becomes the cross "
                "product, and all three involutions fix valid 2-dimensional loci"};
    c.passed = require_checks(suites["d2-model"],
                              {"quadric-membership", "quadric-roundtrip",
                               "cross-product-J", "involution-validity",
                               "involution-antiholomorphic", "involution-fixed-points",
                               "omega-on-fixed-subspaces", "eguchi-hanson-potential",
                               "pole-examples"},
                              c.detail);
    criteria.push_back(c);
  }
  {
    Criterion c{6,
                "the projection pushforward, horizontal lift, and curvature "
                "satisfy their defining and holomorphy relations at 1e-10"};
    c.passed = require_checks(suites["bundle"],
                              {"pushforward-defining-equation",
                               "pushforward-kills-vertical", "pushforward-holomorphy",
                               "horizontal-lift-splits", "curvature-vertical-antisymmetric",
                               "curvature-02-vanishes", "section-derivative-equals-lift",
                               "adjoint-lift-relation"},
                              c.detail);
    criteria.push_back(c);
  }
  {
    Criterion c{7,
                "the pair chart inverts on its image, rejects complementary "
                "pairs, and the tangent ray reaches its closed-form limit"};
    c.passed = require_checks(suites["compactification"],
                              {"roundtrip", "adjoint-swaps-legs", "compactify-holomorphy",
                               "rank1-image-criterion", "complementary-pairs-rejected",
                               "tangent-ray-validity", "tangent-ray-curve",
                               "tangent-ray-limit", "tangent-ray-invariance"},
                              c.detail);
    criteria.push_back(c);
  }
  {
    Criterion c{8,
                "the assembled Poisson bracket reproduces hat[M,N], vanishes on "
                "commuting observables, and matches the star commutator"};
    c.passed = require_checks(suites["poisson"],
                              {"tautological-pairing", "symplectic-engine-vs-exact",
                               "hamiltonian-field", "bracket-reproduces-commutator",
                               "commuting-observables", "star-commutator"},
                              c.detail);
    criteria.push_back(c);
  }
  {
    Criterion c{9,
                "Monte Carlo Haar averages match the closed-form first moment "
                "and projector constants within 3 sigma in under 2 min"};
    c.passed = require_checks(suites["haar"],
                              {"first-moment", "schur-constant-d2", "schur-constant-d3",
                               "section-idempotency", "projector-left-inverse",
                               "error-scaling"},
                              c.detail);
    if (suites["haar"].seconds > 120.0) {
      c.passed = false;
      char buf[80];
      std::snprintf(buf, sizeof(buf), " [suite took %.2f s > 120 s]",
                    suites["haar"].seconds);
      c.detail += buf;
    }
    criteria.push_back(c);
  }
  {
    Criterion c{10, "repeated runs at a fixed seed produce byte-identical JSON reports"};
    VerifyConfig light;
    light.suites = {"identities", "compactification", "poisson"};
    light.trials = 5;
    light.samples = 2000;
    const std::string first = report_to_json(run_verification(light)).dump(2);
    const std::string second = report_to_json(run_verification(light)).dump(2);
    c.passed = (first == second);
    if (!c.passed) c.detail = " [reports differ]";
    criteria.push_back(c);
  }

  int failures = 0;
  std::printf("\n");
  for (const Criterion& c : criteria) {
    if (!c.passed) ++failures;
    std::printf("criterion-%02d %s  %s%s\n", c.id, c.passed ? "PASS" : "FAIL",
                c.description.c_str(), c.detail.c_str());
  }
  std::printf("ACCEPTANCE: %d/%d criteria passed\n",
              static_cast<int>(criteria.size()) - failures,
              static_cast<int>(criteria.size()));
  return failures == 0 ? 0 : 1;
}
