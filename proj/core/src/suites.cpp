#include <chrono>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>

#include "idemgeo/bundle.hpp"
#include "idemgeo/geometry.hpp"
#include "idemgeo/haar.hpp"
#include "idemgeo/poisson.hpp"
#include "idemgeo/report.hpp"
#include "idemgeo/serialize.hpp"
#include "idemgeo/variety.hpp"

namespace idemgeo {

namespace {

struct RunContext {
  const VerifyConfig& cfg;
  bool dumped = false;
};

/// Scoped recorder for one check: collects the max scaled residual over
/// samples, times itself, and appends to the suite on destruction.
/// When a sample fails and counterexample dumping is on, the first
/// failing sample's operands are serialized once per run.
class Check {
 public:
  Check(RunContext& ctx, SuiteResult& out, std::string name, std::string anchor, double tol)
      : ctx_(ctx), out_(out), start_(std::chrono::steady_clock::now()) {
    res_.name = std::move(name);
    res_.anchor = std::move(anchor);
    res_.tolerance = tol;
  }
  Check(const Check&) = delete;
  Check& operator=(const Check&) = delete;

  void sample(double r) { observe(r, nullptr); }

  void sample(double r, const std::function<nlohmann::json()>& operands) {
    observe(r, &operands);
  }

  nlohmann::json& details() { return res_.details; }

  ~Check() {
    res_.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    res_.passed = res_.max_residual <= res_.tolerance * ctx_.cfg.tol_scale;
    out_.checks.push_back(res_);
  }

 private:
  void observe(double r, const std::function<nlohmann::json()>* ops) {
    ++res_.trials;
    if (r > res_.max_residual) res_.max_residual = r;
    if (ops && ctx_.cfg.dump_counterexample && !ctx_.dumped &&
        r > res_.tolerance * ctx_.cfg.tol_scale) {
      nlohmann::json dump = (*ops)();
      dump["check"] = res_.name;
      dump["residual"] = r;
      save_json(dump, ctx_.cfg.dump_path);
      ctx_.dumped = true;
    }
  }

  RunContext& ctx_;
  SuiteResult& out_;
  CheckResult res_;
  std::chrono::steady_clock::time_point start_;
};

using Grid = std::vector<std::pair<int, int>>;

Grid grid_or(const VerifyConfig& cfg, Grid def) {
  if (cfg.dim > 0) return {{cfg.dim, cfg.rank > 0 ? cfg.rank : 1}};
  return def;
}

int trials_or(const VerifyConfig& cfg, int def) { return cfg.trials > 0 ? cfg.trials : def; }

/// Relative shortfall of an observed margin below a required floor;
/// zero when the requirement is met. Used for nondegeneracy and
/// positivity checks, where "residual" means "margin deficit".
double deficit(double observed, double required) {
  return observed >= required ? 0.0 : (required - observed) / required;
}

Matrix icomm(const Matrix& a, const Matrix& b) {
  return Complex(0.0, 1.0) * commutator(a, b);
}

const Complex kI(0.0, 1.0);

// ---------------------------------------------------------------------------

SuiteResult suite_identities(RunContext& ctx) {
  SuiteResult suite{"identities"};
  const VerifyConfig& cfg = ctx.cfg;
  const Grid grid = grid_or(cfg, {{2, 1}, {3, 1}, {4, 2}, {6, 3}});
  const int trials = trials_or(cfg, 100);

  {
    Check chk(ctx, suite, "inner-compression", "qAq = 0 for tangent A", 1e-11);
    Rng rng = Rng::substream(cfg.seed, 0x101);
    for (const auto& [d, n] : grid) {
      for (int t = 0; t < trials; ++t) {
        const ProjectionPoint q = random_point(d, n, 1.0, rng);
        const Matrix a = random_tangent(q, rng).a;
        const double r =
            scaled_residual((q.q * a * q.q).norm(), q.q.squaredNorm() * a.norm());
        chk.sample(r, [&] {
          return nlohmann::json{{"point", point_to_json(q)}, {"tangent", matrix_to_json(a)}};
        });
      }
    }
  }
  {
    Check chk(ctx, suite, "double-commutator", "[q, [q, A]] = A for tangent A", 1e-11);
    Rng rng = Rng::substream(cfg.seed, 0x102);
    for (const auto& [d, n] : grid) {
      for (int t = 0; t < trials; ++t) {
        const ProjectionPoint q = random_point(d, n, 1.0, rng);
        const Matrix a = random_tangent(q, rng).a;
        const Matrix lhs = commutator(q.q, commutator(q.q, a));
        chk.sample(scaled_residual((lhs - a).norm(), q.q.squaredNorm() * a.norm()), [&] {
          return nlohmann::json{{"point", point_to_json(q)}, {"tangent", matrix_to_json(a)}};
        });
      }
    }
  }
  {
    Check chk(ctx, suite, "commutator-tangency", "q[q,M] + [q,M]q = [q,M] for any M", 1e-11);
    Rng rng = Rng::substream(cfg.seed, 0x103);
    for (const auto& [d, n] : grid) {
      for (int t = 0; t < trials; ++t) {
        const ProjectionPoint q = random_point(d, n, 1.0, rng);
        const Matrix m = ginibre(d, rng);
        const Matrix c = commutator(q.q, m);
        const double r = (q.q * c + c * q.q - c).norm();
        chk.sample(scaled_residual(r, q.q.squaredNorm() * m.norm()), [&] {
          return nlohmann::json{{"point", point_to_json(q)}, {"matrix", matrix_to_json(m)}};
        });
      }
    }
  }
  {
    Check chk(ctx, suite, "product-through-point", "[q, AB] = 0 for tangents A, B", 1e-11);
    Rng rng = Rng::substream(cfg.seed, 0x104);
    for (const auto& [d, n] : grid) {
      for (int t = 0; t < trials; ++t) {
        const ProjectionPoint q = random_point(d, n, 1.0, rng);
        const Matrix a = random_tangent(q, rng).a;
        const Matrix b = random_tangent(q, rng).a;
        const double r = commutator(q.q, a * b).norm();
        chk.sample(scaled_residual(r, q.q.norm() * a.norm() * b.norm()), [&] {
          return nlohmann::json{{"point", point_to_json(q)},
                                {"tangent_a", matrix_to_json(a)},
                                {"tangent_b", matrix_to_json(b)}};
        });
      }
    }
  }
  {
    Check chk(ctx, suite, "rotation-product", "(i[A,q])(i[B,q]) = AB for tangents A, B", 1e-11);
    Rng rng = Rng::substream(cfg.seed, 0x105);
    for (const auto& [d, n] : grid) {
      for (int t = 0; t < trials; ++t) {
        const ProjectionPoint q = random_point(d, n, 1.0, rng);
        const Matrix a = random_tangent(q, rng).a;
        const Matrix b = random_tangent(q, rng).a;
        const Matrix lhs = icomm(a, q.q) * icomm(b, q.q);
        const double r = (lhs - a * b).norm();
        chk.sample(scaled_residual(r, q.q.squaredNorm() * a.norm() * b.norm()), [&] {
          return nlohmann::json{{"point", point_to_json(q)},
                                {"tangent_a", matrix_to_json(a)},
                                {"tangent_b", matrix_to_json(b)}};
        });
      }
    }
  }
  {
    Check chk(ctx, suite, "tangent-projector",
              "P(M) = qM + Mq - 2qMq is idempotent onto the tangent space", 1e-11);
    Rng rng = Rng::substream(cfg.seed, 0x106);
    for (const auto& [d, n] : grid) {
      for (int t = 0; t < trials / 2 + 1; ++t) {
        const ProjectionPoint q = random_point(d, n, 1.0, rng);
        const Matrix m = ginibre(d, rng);
        const Matrix pm = tangent_project(q.q, m);
        const double scale = (1.0 + q.q.squaredNorm()) * q.q.squaredNorm() * m.norm();
        const double r1 = (q.q * pm + pm * q.q - pm).norm();
        const double r2 = (tangent_project(q.q, pm) - pm).norm();
        chk.sample(scaled_residual(std::max(r1, r2), scale));
      }
    }
  }
  {
    Check chk(ctx, suite, "odd-traces",
              "Tr(A) = Tr(ABC) = Tr(ABCAB) = 0 for tangents", 1e-11);
    Rng rng = Rng::substream(cfg.seed, 0x107);
    for (const auto& [d, n] : grid) {
      for (int t = 0; t < trials / 2 + 1; ++t) {
        const ProjectionPoint q = random_point(d, n, 1.0, rng);
        const Matrix a = random_tangent(q, rng).a;
        const Matrix b = random_tangent(q, rng).a;
        const Matrix c = random_tangent(q, rng).a;
        const double na = a.norm(), nb = b.norm(), nc = c.norm();
        chk.sample(scaled_residual(std::abs(a.trace()), na));
        chk.sample(scaled_residual(std::abs((a * b * c).trace()), na * nb * nc));
        chk.sample(
            scaled_residual(std::abs((a * b * c * a * b).trace()), na * na * nb * nb * nc));
      }
    }
  }
  {
    Check chk(ctx, suite, "point-diagnostics-accept",
              "validate_point accepts generated points with matching rank", 1e-9);
    Rng rng = Rng::substream(cfg.seed, 0x108);
    for (const auto& [d, n] : grid) {
      for (int t = 0; t < 20; ++t) {
        const ProjectionPoint q = random_point(d, n, 1.0, rng);
        const PointDiagnostics diag = validate_point(q.q, n);
        chk.sample(diag.ok ? diag.idempotency_residual : 1.0);
      }
    }
  }
  {
    Check chk(ctx, suite, "point-diagnostics-reject",
              "validate_point rejects perturbed and wrong-rank inputs", 1e-12);
    Rng rng = Rng::substream(cfg.seed, 0x109);
    for (const auto& [d, n] : grid) {
      for (int t = 0; t < 10; ++t) {
        ProjectionPoint q = random_point(d, n, 1.0, rng);
        Matrix broken = q.q;
        broken(0, 0) += 0.05;
        chk.sample(validate_point(broken, n).ok ? 1.0 : 0.0);
        if (n + 1 < q.dim()) {
          chk.sample(validate_point(q.q, n + 1).ok ? 1.0 : 0.0);
        }
      }
    }
  }
  return suite;
}

// ---------------------------------------------------------------------------

SuiteResult suite_complex_structures(RunContext& ctx) {
  SuiteResult suite{"complex-structures"};
  const VerifyConfig& cfg = ctx.cfg;
  const Grid grid = grid_or(cfg, {{2, 1}, {3, 1}, {3, 2}, {4, 2}});
  const int trials = trials_or(cfg, 50);  // 50 x 4 grid cells = 200 points

  const auto J = [](const ProjectionPoint& q, const Matrix& a) {
    return apply_structure(ComplexStructure::J, q, a);
  };
  const auto K = [](const ProjectionPoint& q, const Matrix& a) {
    return apply_structure(ComplexStructure::K, q, a);
  };

  {
    Check chk(ctx, suite, "J-squared", "J(J(A)) = -A with J(A) = i[A, q]", 1e-10);
    Rng rng = Rng::substream(cfg.seed, 0x201);
    for (const auto& [d, n] : grid) {
      for (int t = 0; t < trials; ++t) {
        const ProjectionPoint q = random_point(d, n, 1.0, rng);
        const Matrix a = random_tangent(q, rng).a;
        chk.sample(scaled_residual((J(q, J(q, a)) + a).norm(), q.q.squaredNorm() * a.norm()));
      }
    }
  }
  {
    Check chk(ctx, suite, "K-squared", "K(K(A)) = +A with K(A) = [q, A]", 1e-10);
    Rng rng = Rng::substream(cfg.seed, 0x202);
    for (const auto& [d, n] : grid) {
      for (int t = 0; t < trials; ++t) {
        const ProjectionPoint q = random_point(d, n, 1.0, rng);
        const Matrix a = random_tangent(q, rng).a;
        chk.sample(scaled_residual((K(q, K(q, a)) - a).norm(), q.q.squaredNorm() * a.norm()));
      }
    }
  }
  {
    Check chk(ctx, suite, "K-eigensplit",
              "K = +1 on qG(1-q) directions and -1 on (1-q)Gq directions", 1e-10);
    Rng rng = Rng::substream(cfg.seed, 0x203);
    for (const auto& [d, n] : grid) {
      for (int t = 0; t < trials; ++t) {
        const ProjectionPoint q = random_point(d, n, 1.0, rng);
        const Matrix id = Matrix::Identity(d, d);
        const Matrix g = ginibre(d, rng);
        const Matrix plus = q.q * g * (id - q.q);
        const Matrix minus = (id - q.q) * g * q.q;
        const double scale = q.q.squaredNorm() * g.norm() * (1.0 + q.q.squaredNorm());
        chk.sample(scaled_residual((K(q, plus) - plus).norm(), scale));
        chk.sample(scaled_residual((K(q, minus) + minus).norm(), scale));
      }
    }
  }
  {
    Check chk(ctx, suite, "IJ-commute", "iJ(A) = J(iA)", 1e-10);
    Rng rng = Rng::substream(cfg.seed, 0x204);
    for (const auto& [d, n] : grid) {
      for (int t = 0; t < trials; ++t) {
        const ProjectionPoint q = random_point(d, n, 1.0, rng);
        const Matrix a = random_tangent(q, rng).a;
        chk.sample(
            scaled_residual((kI * J(q, a) - J(q, kI * a)).norm(), q.q.norm() * a.norm()));
      }
    }
  }
  {
    Check chk(ctx, suite, "J-star-holomorphy", "(J_q A)* = J_{q*} (A*)", 1e-12);
    Rng rng = Rng::substream(cfg.seed, 0x205);
    for (const auto& [d, n] : grid) {
      for (int t = 0; t < trials; ++t) {
        const ProjectionPoint q = random_point(d, n, 1.0, rng);
        const ProjectionPoint qs{q.q.adjoint(), q.rank};
        const Matrix a = random_tangent(q, rng).a;
        const Matrix lhs = Matrix(J(q, a).adjoint());
        chk.sample(scaled_residual((lhs - J(qs, a.adjoint())).norm(), q.q.norm() * a.norm()));
      }
    }
  }
  {
    Check chk1(ctx, suite, "Jhat-squared", "JHat(JHat(A)) = -A through the pair chart", 1e-10);
    Check chk2(ctx, suite, "J-Jhat-commute", "JHat(J(A)) = J(JHat(A))", 1e-10);
    Rng rng = Rng::substream(cfg.seed, 0x206);
    for (const auto& [d, n] : grid) {
      for (int t = 0; t < trials; ++t) {
        const ProjectionPoint q = random_point(d, n, 1.0, rng);
        const Matrix a = random_tangent(q, rng).a;
        const Matrix ja = jhat(q, a);
        chk1.sample(scaled_residual((jhat(q, ja) + a).norm(), a.norm()));
        chk2.sample(scaled_residual((jhat(q, J(q, a)) - J(q, ja)).norm(),
                                    q.q.norm() * a.norm()));
      }
    }
  }
  {
    Check chk(ctx, suite, "Jhat-zero-section",
              "on the zero section JHat = J horizontally and i vertically", 1e-10);
    Rng rng = Rng::substream(cfg.seed, 0x207);
    for (const auto& [d, n] : grid) {
      for (int t = 0; t < 10; ++t) {
        const HermitianPoint p = random_hermitian_point(d, n, rng);
        const ProjectionPoint pt = p.as_point();
        const Matrix h = random_hermitian_tangent(p, rng);
        const Matrix f = random_fiber(p, rng).f;
        chk.sample(scaled_residual((jhat(pt, h) - J(pt, h)).norm(), h.norm()));
        chk.sample(scaled_residual((jhat(pt, f) - kI * f).norm(), f.norm()));
      }
    }
  }

  // JBold lives on the rank-1 stratum: 100 points each at d = 2, 3.
  const Grid rank1 = (cfg.dim > 0) ? Grid{{cfg.dim, 1}} : Grid{{2, 1}, {3, 1}};
  const int r1trials = trials_or(cfg, 100);
  const auto JB = [](const ProjectionPoint& q, const Matrix& a) {
    return apply_structure(ComplexStructure::JBold, q, a);
  };
  {
    Check chk(ctx, suite, "Jbold-squared",
              "JBold(JBold(A)) = -A, JBold(A) = (i/|q|)[q,A*] - (i/2|q|^3)Tr(A*q)[q,q*]",
              1e-10);
    Rng rng = Rng::substream(cfg.seed, 0x208);
    for (const auto& [d, n] : rank1) {
      for (int t = 0; t < r1trials; ++t) {
        const ProjectionPoint q = random_point(d, n, 1.0, rng);
        const Matrix a = random_tangent(q, rng).a;
        chk.sample(scaled_residual((JB(q, JB(q, a)) + a).norm(), a.norm()));
      }
    }
  }
  {
    Check chk(ctx, suite, "Jbold-anticommutes-I", "JBold(iA) = -i JBold(A)", 1e-10);
    Rng rng = Rng::substream(cfg.seed, 0x209);
    for (const auto& [d, n] : rank1) {
      for (int t = 0; t < r1trials; ++t) {
        const ProjectionPoint q = random_point(d, n, 1.0, rng);
        const Matrix a = random_tangent(q, rng).a;
        chk.sample(scaled_residual((JB(q, kI * a) + kI * JB(q, a)).norm(), a.norm()));
      }
    }
  }
  {
    Check chk(ctx, suite, "Jbold-star-holomorphy", "(JBold_q A)* = JBold_{q*} (A*)", 1e-10);
    Rng rng = Rng::substream(cfg.seed, 0x20a);
    for (const auto& [d, n] : rank1) {
      for (int t = 0; t < r1trials / 2 + 1; ++t) {
        const ProjectionPoint q = random_point(d, n, 1.0, rng);
        const ProjectionPoint qs{q.q.adjoint(), q.rank};
        const Matrix a = random_tangent(q, rng).a;
        const Matrix lhs = Matrix(JB(q, a).adjoint());
        chk.sample(scaled_residual((lhs - JB(qs, a.adjoint())).norm(), a.norm()));
      }
    }
  }
  return suite;
}

// ---------------------------------------------------------------------------

SuiteResult suite_symplectic(RunContext& ctx) {
  SuiteResult suite{"symplectic"};
  const VerifyConfig& cfg = ctx.cfg;
  const Grid grid = grid_or(cfg, {{2, 1}, {3, 1}, {4, 2}});

  const DifferentialForm omega_form{
      2, [](const ProjectionPoint& p, const std::vector<Matrix>& args) {
        return omega(p, args[0], args[1]);
      }};

  {
    // 50 triples spread over the grid.
    Check chk(ctx, suite, "omega-closed", "d Omega = 0, Omega(A,B) = i Tr(q[A,B])", 1e-6);
    Rng rng = Rng::substream(cfg.seed, 0x301);
    const int triples = trials_or(cfg, 17);
    for (const auto& [d, n] : grid) {
      for (int t = 0; t < triples; ++t) {
        const ProjectionPoint q = random_point(d, n, 1.0, rng);
        const Matrix a = random_tangent(q, rng).a;
        const Matrix b = random_tangent(q, rng).a;
        const Matrix c = random_tangent(q, rng).a;
        const Complex dw = exterior_derivative(omega_form, q, {a, b, c});
        chk.sample(scaled_residual(std::abs(dw), a.norm() * b.norm() * c.norm()));
      }
    }
  }
  {
    Check chk(ctx, suite, "omega-J-invariant", "Omega(JA, JB) = Omega(A, B)", 1e-12);
    Rng rng = Rng::substream(cfg.seed, 0x302);
    for (const auto& [d, n] : grid) {
      for (int t = 0; t < trials_or(cfg, 40); ++t) {
        const ProjectionPoint q = random_point(d, n, 1.0, rng);
        const Matrix a = random_tangent(q, rng).a;
        const Matrix b = random_tangent(q, rng).a;
        const Matrix ja = icomm(a, q.q);
        const Matrix jb = icomm(b, q.q);
        const double r = std::abs(omega(q, ja, jb) - omega(q, a, b));
        chk.sample(scaled_residual(r, q.q.norm() * a.norm() * b.norm() *
                                          (1.0 + q.q.squaredNorm())));
      }
    }
  }
  {
    Check chk(ctx, suite, "omega-real-on-zero-section",
              "Im Omega = 0 on Hermitian tangents at Hermitian points", 1e-12);
    Rng rng = Rng::substream(cfg.seed, 0x303);
    for (const auto& [d, n] : grid) {
      for (int t = 0; t < trials_or(cfg, 40); ++t) {
        const HermitianPoint p = random_hermitian_point(d, n, rng);
        const Matrix a = random_hermitian_tangent(p, rng);
        const Matrix b = random_hermitian_tangent(p, rng);
        const double r = std::abs(omega(p.as_point(), a, b).imag());
        chk.sample(scaled_residual(r, a.norm() * b.norm()));
      }
    }
  }
  {
    Check chk(ctx, suite, "omega-nondegenerate-zero-section",
              "the pairing matrix of Omega on Hermitian tangents has full rank", 1e-12);
    Rng rng = Rng::substream(cfg.seed, 0x304);
    double min_sv = std::numeric_limits<double>::infinity();
    for (const auto& [d, n] : grid) {
      for (int t = 0; t < 5; ++t) {
        const HermitianPoint p = random_hermitian_point(d, n, rng);
        const std::vector<Matrix> basis = hermitian_tangent_basis(p);
        const int m = static_cast<int>(basis.size());
        RealMatrix w(m, m);
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j)
            w(i, j) = omega(p.as_point(), basis[i], basis[j]).real();
        Eigen::JacobiSVD<RealMatrix> svd(w);
        const double sv = svd.singularValues()(m - 1);
        min_sv = std::min(min_sv, sv);
        chk.sample(deficit(sv, 1e-6));
      }
    }
    chk.details()["min_singular_value"] = min_sv;
  }
  {
    Check chk(ctx, suite, "omega-unitary-invariant",
              "Omega(UqU*; UAU*, UBU*) = Omega(q; A, B)", 1e-12);
    Rng rng = Rng::substream(cfg.seed, 0x305);
    for (const auto& [d, n] : grid) {
      for (int t = 0; t < 20; ++t) {
        const ProjectionPoint q = random_point(d, n, 1.0, rng);
        const Matrix a = random_tangent(q, rng).a;
        const Matrix b = random_tangent(q, rng).a;
        const Matrix u = haar_unitary(d, rng);
        const ProjectionPoint uq{u * q.q * u.adjoint(), q.rank};
        const Complex lhs = omega(uq, u * a * u.adjoint(), u * b * u.adjoint());
        chk.sample(scaled_residual(std::abs(lhs - omega(q, a, b)),
                                   q.q.norm() * a.norm() * b.norm()));
      }
    }
  }
  {
    Check chk(ctx, suite, "nilpotency-dd",
              "d(d theta) = 0 for the tautological 1-form (nested engine)", 1e-4);
    Rng rng = Rng::substream(cfg.seed, 0x306);
    const DifferentialForm theta{
        1, [](const ProjectionPoint& p, const std::vector<Matrix>& args) {
          return Complex(taut_form(p, args[0]).real(), 0.0);
        }};
    const DifferentialForm dtheta{
        2, [&theta](const ProjectionPoint& p, const std::vector<Matrix>& args) {
          return exterior_derivative(theta, p, {args[0], args[1]}, FdOptions{1e-4});
        }};
    for (const auto& [d, n] : Grid{{2, 1}, {3, 1}}) {
      for (int t = 0; t < 3; ++t) {
        const ProjectionPoint q = random_point(d, n, 1.0, rng);
        const Matrix a = random_tangent(q, rng).a;
        const Matrix b = random_tangent(q, rng).a;
        const Matrix c = random_tangent(q, rng).a;
        // Outer step is larger so inner engine noise stays subdominant.
        const Complex ddt = exterior_derivative(dtheta, q, {a, b, c}, FdOptions{1e-3});
        chk.sample(scaled_residual(std::abs(ddt), a.norm() * b.norm() * c.norm()));
      }
    }
  }
  return suite;
}

// ---------------------------------------------------------------------------

SuiteResult suite_hyperkahler(RunContext& ctx) {
  SuiteResult suite{"hyperkahler"};
  const VerifyConfig& cfg = ctx.cfg;
  const Grid rank1 = (cfg.dim > 0) ? Grid{{cfg.dim, 1}} : Grid{{2, 1}, {3, 1}};
  const int trials = trials_or(cfg, 50);  // 50 x 2 = 100 rank-1 points

  const auto JB = [](const ProjectionPoint& q, const Matrix& a) {
    return apply_structure(ComplexStructure::JBold, q, a);
  };

  {
    Check chk(ctx, suite, "metric-calibration",
              "a single scale c satisfies g_c(JBold A, B) = Re Omega(A, B)", 1e-8);
    chk.sample(metric_scale_spread());
    chk.details()["metric_scale"] = metric_scale();
    chk.details()["spread"] = metric_scale_spread();
  }
  {
    Check chk1(ctx, suite, "pairing-g-jbold-omega",
               "g(JBold A, B) = Re Omega(A, B) at the calibrated scale", 1e-10);
    Check chk2(ctx, suite, "jbold-squared-rank1", "JBold^2 = -1 at the same points", 1e-10);
    Check chk3(ctx, suite, "doubled-scale-off-by-two",
               "the doubled metric normalization overshoots the pairing by exactly 2",
               1e-10);
    Rng rng = Rng::substream(cfg.seed, 0x401);
    for (const auto& [d, n] : rank1) {
      for (int t = 0; t < trials; ++t) {
        const ProjectionPoint q = random_point(d, n, 1.0, rng);
        const Matrix a = random_tangent(q, rng).a;
        const Matrix b = random_tangent(q, rng).a;
        const Matrix jba = JB(q, a);
        const double scale = a.norm() * b.norm();
        chk1.sample(
            scaled_residual(std::abs(metric_g(q, jba, b) - omega(q, a, b).real()), scale));
        chk2.sample(scaled_residual((JB(q, jba) + a).norm(), a.norm()));
        chk3.sample(scaled_residual(
            std::abs(metric_family(q, jba, b, 2.0) - 2.0 * omega(q, a, b).real()), scale));
      }
    }
  }
  {
    Check chk(ctx, suite, "metric-positive",
              "the Gram matrix of g on the tangent space is positive definite", 1e-12);
    Rng rng = Rng::substream(cfg.seed, 0x402);
    double min_eig = std::numeric_limits<double>::infinity();
    for (const auto& [d, n] : rank1) {
      for (int t = 0; t < 10; ++t) {
        const ProjectionPoint q = random_point(d, n, 1.0, rng);
        const std::vector<Matrix> basis = real_tangent_basis(q);
        const int m = static_cast<int>(basis.size());
        RealMatrix gram(m, m);
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j) gram(i, j) = metric_g(q, basis[i], basis[j]);
        Eigen::SelfAdjointEigenSolver<RealMatrix> eig(0.5 * (gram + gram.transpose()));
        const double lo = eig.eigenvalues()(0);
        min_eig = std::min(min_eig, lo);
        chk.sample(deficit(lo, 1e-8));
      }
    }
    chk.details()["min_eigenvalue"] = min_eig;
  }
  {
    Check chk(ctx, suite, "fundamental-form-closed",
              "d[g(I., .)] = 0 evaluated with the flow engine", 1e-6);
    Rng rng = Rng::substream(cfg.seed, 0x403);
    const DifferentialForm fundamental{
        2, [](const ProjectionPoint& p, const std::vector<Matrix>& args) {
          return Complex(metric_g(p, kI * args[0], args[1]), 0.0);
        }};
    for (const auto& [d, n] : rank1) {
      for (int t = 0; t < 5; ++t) {
        const ProjectionPoint q = random_point(d, n, 1.0, rng);
        const Matrix a = random_tangent(q, rng).a;
        const Matrix b = random_tangent(q, rng).a;
        const Matrix c = random_tangent(q, rng).a;
        const Complex dw = exterior_derivative(fundamental, q, {a, b, c});
        chk.sample(scaled_residual(std::abs(dw), a.norm() * b.norm() * c.norm()));
      }
    }
  }
  {
    Check chk(ctx, suite, "kahler-form-positivity",
              "dd^c tau(iA, A) = 2 g_1(A, A) > 0", 1e-12);
    Rng rng = Rng::substream(cfg.seed, 0x404);
    double min_val = std::numeric_limits<double>::infinity();
    for (const auto& [d, n] : rank1) {
      for (int t = 0; t < trials; ++t) {
        const ProjectionPoint q = random_point(d, n, 1.0, rng);
        const Matrix a = random_tangent(q, rng).a;
        const double lhs = kahler_2form(q, kI * a, a);
        const double rhs = 2.0 * metric_family(q, a, a, 1.0);
        const double normalized = lhs / (1e-30 + a.squaredNorm());
        min_val = std::min(min_val, normalized);
        chk.sample(scaled_residual(std::abs(lhs - rhs), a.squaredNorm()));
        chk.sample(deficit(normalized, 1e-8));
      }
    }
    chk.details()["min_normalized_value"] = min_val;
  }
  {
    Check chk(ctx, suite, "kahler-form-via-engine",
              "d[dtau circ I] from the flow engine reproduces -2 Im h_1", 1e-5);
    Rng rng = Rng::substream(cfg.seed, 0x405);
    const auto tau_fn = [](const ProjectionPoint& p) { return Complex(tau(p), 0.0); };
    const DifferentialForm dctau{
        1, [&tau_fn](const ProjectionPoint& p, const std::vector<Matrix>& args) {
          return flow_derivative(tau_fn, p, kI * args[0], FdOptions{1e-4});
        }};
    for (const auto& [d, n] : rank1) {
      for (int t = 0; t < 4; ++t) {
        const ProjectionPoint q = random_point(d, n, 1.0, rng);
        const Matrix a = random_tangent(q, rng).a;
        const Matrix b = random_tangent(q, rng).a;
        const Complex engine = exterior_derivative(dctau, q, {a, b}, FdOptions{1e-3});
        const double closed = kahler_2form(q, a, b);
        chk.sample(
            scaled_residual(std::abs(engine - Complex(closed, 0.0)), a.norm() * b.norm()));
      }
    }
  }
  return suite;
}

// ---------------------------------------------------------------------------

SuiteResult suite_d2_model(RunContext& ctx) {
  SuiteResult suite{"d2-model"};
  const VerifyConfig& cfg = ctx.cfg;
  const int trials = trials_or(cfg, 50);

  {
    Check chk(ctx, suite, "quadric-membership",
              "xy - z + z^2 = 0 and X^2 + Y^2 + Z^2 = 1 for the chart entries", 1e-12);
    Rng rng = Rng::substream(cfg.seed, 0x501);
    for (int t = 0; t < trials; ++t) {
      const ProjectionPoint q = random_point(2, 1, 1.0, rng);
      const QuadricCoords c = quadric_coords(q);
      const EmbeddedCoords v = embed_quadric(c);
      const double scale = 1.0 + q.q.squaredNorm();
      chk.sample(std::abs(c.x * c.y - c.z + c.z * c.z) / scale);
      chk.sample(std::abs(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] - 1.0) / scale);
    }
  }
  {
    Check chk(ctx, suite, "quadric-roundtrip",
              "chart and embedding invert each other exactly", 1e-12);
    Rng rng = Rng::substream(cfg.seed, 0x502);
    for (int t = 0; t < trials; ++t) {
      const ProjectionPoint q = random_point(2, 1, 1.0, rng);
      const QuadricCoords c = quadric_coords(q);
      const ProjectionPoint back = quadric_point(c);
      chk.sample(scaled_residual((back.q - q.q).norm(), q.q.norm()));
      const QuadricCoords c2 = quadric_from_embedding(embed_quadric(c));
      chk.sample(std::abs(c2.x - c.x) + std::abs(c2.y - c.y) + std::abs(c2.z - c.z));
    }
  }
  {
    Check chk(ctx, suite, "cross-product-J",
              "embedding intertwines J with the cross product v x u", 1e-11);
    Rng rng = Rng::substream(cfg.seed, 0x503);
    for (int t = 0; t < trials; ++t) {
      const ProjectionPoint q = random_point(2, 1, 1.0, rng);
      const Matrix a = random_tangent(q, rng).a;
      const EmbeddedCoords v = embed_quadric(quadric_coords(q));
      const EmbeddedCoords u = embed_tangent(a);
      const EmbeddedCoords cross = cross_product_j(v, u);
      const EmbeddedCoords ju = embed_tangent(icomm(a, q.q));
      double r = 0.0;
      for (int k = 0; k < 3; ++k) r += std::abs(cross[k] - ju[k]);
      chk.sample(scaled_residual(r, q.q.norm() * a.norm()));
      // (u x v) x v = -u on quadric tangents (v.v = 1, v.u = 0).
      const EmbeddedCoords cc = cross_product_j(v, cross);
      double r2 = 0.0;
      for (int k = 0; k < 3; ++k) r2 += std::abs(cc[k] + u[k]);
      chk.sample(scaled_residual(r2, q.q.squaredNorm() * a.norm()));
    }
  }
  const std::vector<std::pair<Involution, std::string>> involutions = {
      {Involution::Sphere, "sphere"},
      {Involution::Disk, "disk"},
      {Involution::Cylinder, "cylinder"}};
  {
    Check chk(ctx, suite, "involution-validity",
              "each involution maps into the variety and squares to the identity", 1e-12);
    Rng rng = Rng::substream(cfg.seed, 0x504);
    for (const auto& [inv, name] : involutions) {
      for (int t = 0; t < 20; ++t) {
        const ProjectionPoint q = random_point(2, 1, 1.0, rng);
        const ProjectionPoint s = apply_involution(inv, q);
        const double scale = 1.0 + q.q.squaredNorm();
        chk.sample((s.q * s.q - s.q).norm() / scale);
        chk.sample(std::abs(s.q.trace() - 1.0) / scale);
        chk.sample((apply_involution(inv, s).q - q.q).norm() / scale);
        // The differential carries tangents at q to tangents at sigma(q).
        const Matrix a = random_tangent(q, rng).a;
        const Matrix da = involution_differential(inv, a);
        chk.sample(scaled_residual((s.q * da + da * s.q - da).norm(),
                                   s.q.norm() * da.norm()));
      }
    }
  }
  {
    Check chk(ctx, suite, "involution-antiholomorphic", "dsigma(iA) = -i dsigma(A)", 1e-14);
    Rng rng = Rng::substream(cfg.seed, 0x505);
    for (const auto& [inv, name] : involutions) {
      for (int t = 0; t < 20; ++t) {
        const ProjectionPoint q = random_point(2, 1, 1.0, rng);
        const Matrix a = random_tangent(q, rng).a;
        const Matrix lhs = involution_differential(inv, kI * a);
        const Matrix rhs = -kI * involution_differential(inv, a);
        chk.sample(scaled_residual((lhs - rhs).norm(), a.norm()));
      }
    }
  }
  {
    Check chk(ctx, suite, "involution-fixed-points",
              "fixed-point samplers produce valid points with sigma(q) = q", 1e-12);
    Rng rng = Rng::substream(cfg.seed, 0x506);
    for (const auto& [inv, name] : involutions) {
      for (int t = 0; t < 20; ++t) {
        const ProjectionPoint q = random_fixed_point(inv, rng);
        const double scale = 1.0 + q.q.squaredNorm();
        chk.sample((q.q * q.q - q.q).norm() / scale);
        chk.sample((apply_involution(inv, q).q - q.q).norm() / scale);
      }
    }
  }
  {
    Check chk(ctx, suite, "omega-on-fixed-subspaces",
              "Omega restricted to each fixed tangent plane is nondegenerate", 1e-12);
    Rng rng = Rng::substream(cfg.seed, 0x507);
    for (const auto& [inv, name] : involutions) {
      double min_pairing = std::numeric_limits<double>::infinity();
      for (int t = 0; t < 20; ++t) {
        const ProjectionPoint q = random_fixed_point(inv, rng);
        // Project the tangent basis onto the fixed plane of dsigma.
        std::vector<Matrix> fixed;
        for (const Matrix& b : real_tangent_basis(q)) {
          Matrix v = 0.5 * (b + involution_differential(inv, b));
          for (int pass = 0; pass < 2; ++pass) {
            for (const Matrix& c : fixed) v -= hs_inner(c, v).real() * c;
          }
          if (v.norm() > 1e-8) fixed.push_back(v / v.norm());
        }
        chk.sample(fixed.size() == 2 ? 0.0 : 1.0);
        if (fixed.size() == 2) {
          const double pairing = std::abs(omega(q, fixed[0], fixed[1]));
          min_pairing = std::min(min_pairing, pairing);
          chk.sample(deficit(pairing, 1e-6));
        }
      }
      chk.details()[name + "_min_pairing"] = min_pairing;
    }
  }
  {
    Check chk(ctx, suite, "eguchi-hanson-potential",
              "tau = sqrt((|X|^2 + |Y|^2 + |Z|^2 + 1)/2) on the model", 1e-12);
    Rng rng = Rng::substream(cfg.seed, 0x508);
    for (int t = 0; t < trials; ++t) {
      const ProjectionPoint q = random_point(2, 1, 2.0, rng);
      const double lhs = tau(q);
      const double rhs = eguchi_hanson_potential(embed_quadric(quadric_coords(q)));
      chk.sample(scaled_residual(std::abs(lhs - rhs), lhs));
    }
  }
  {
    Check chk(ctx, suite, "pole-examples",
              "diag(1,0) and diag(0,1) embed to the poles (0,0,-1) and (0,0,+1)", 1e-15);
    Matrix north = Matrix::Zero(2, 2);
    north(0, 0) = 1.0;
    const EmbeddedCoords vn = embed_quadric(quadric_coords({north, 1}));
    chk.sample(std::abs(vn[0]) + std::abs(vn[1]) + std::abs(vn[2] + 1.0));
    Matrix south = Matrix::Zero(2, 2);
    south(1, 1) = 1.0;
    const EmbeddedCoords vs = embed_quadric(quadric_coords({south, 1}));
    chk.sample(std::abs(vs[0]) + std::abs(vs[1]) + std::abs(vs[2] - 1.0));
  }
  return suite;
}

// ---------------------------------------------------------------------------

SuiteResult suite_bundle(RunContext& ctx) {
  SuiteResult suite{"bundle"};
  const VerifyConfig& cfg = ctx.cfg;
  const Grid grid = grid_or(cfg, {{2, 1}, {3, 1}, {4, 2}});
  const int trials = trials_or(cfg, 50);

  {
    Check chk1(ctx, suite, "pushforward-defining-equation",
               "X = dpi(A) solves qX + A pi(q) = X and is Hermitian", 1e-10);
    Check chk2(ctx, suite, "pushforward-kills-vertical", "dpi = 0 on fiber directions",
               1e-10);
    Rng rng = Rng::substream(cfg.seed, 0x601);
    for (const auto& [d, n] : grid) {
      for (int t = 0; t < trials; ++t) {
        const ProjectionPoint q = random_point(d, n, 1.0, rng);
        const Matrix p = base_projection(q).p;
        const Matrix a = random_tangent(q, rng).a;
        const Matrix x = pushforward(q, a);
        const double scale = (1.0 + q.q.squaredNorm()) * a.norm();
        chk1.sample(scaled_residual((q.q * x + a * p - x).norm(), scale));
        chk1.sample(scaled_residual((x - x.adjoint()).norm(), scale));
        const Matrix id = Matrix::Identity(d, d);
        const Matrix vert = p * ginibre(d, rng) * (id - p);
        chk2.sample(scaled_residual(pushforward(q, vert).norm(),
                                    (1.0 + q.q.squaredNorm()) * vert.norm()));
      }
    }
  }
  {
    Check chk(ctx, suite, "pushforward-holomorphy",
              "dpi(iA) = J dpi(A) and dpi(J A) = J dpi(A)", 1e-10);
    Rng rng = Rng::substream(cfg.seed, 0x602);
    for (const auto& [d, n] : grid) {
      for (int t = 0; t < trials; ++t) {
        const ProjectionPoint q = random_point(d, n, 1.0, rng);
        const Matrix p = base_projection(q).p;
        const Matrix a = random_tangent(q, rng).a;
        const Matrix x = pushforward(q, a);
        const Matrix jx = icomm(x, p);
        const double scale = (1.0 + q.q.squaredNorm()) * a.norm();
        chk.sample(scaled_residual((pushforward(q, kI * a) - jx).norm(), scale));
        chk.sample(scaled_residual((pushforward(q, icomm(a, q.q)) - jx).norm(),
                                   scale * (1.0 + q.q.norm())));
      }
    }
  }
  {
    Check chk1(ctx, suite, "horizontal-lift-splits", "dpi(H(A)) = A for base tangents A",
               1e-10);
    Check chk2(ctx, suite, "lift-identity-zero-section", "H = identity on the zero section",
               1e-13);
    Rng rng = Rng::substream(cfg.seed, 0x603);
    for (const auto& [d, n] : grid) {
      for (int t = 0; t < trials; ++t) {
        const ProjectionPoint q = random_point(d, n, 1.0, rng);
        const HermitianPoint p = base_projection(q);
        const Matrix ah = random_hermitian_tangent(p, rng);
        const Matrix lift = horizontal_lift(q, p, ah);
        const double scale = (1.0 + q.q.squaredNorm()) * ah.norm();
        chk1.sample(scaled_residual((pushforward(q, lift) - ah).norm(), scale));
        chk1.sample(scaled_residual((q.q * lift + lift * q.q - lift).norm(), scale));
        chk2.sample(scaled_residual(
            (horizontal_lift(p.as_point(), p, ah) - ah).norm(), ah.norm()));
      }
    }
  }
  {
    Check chk1(ctx, suite, "curvature-vertical-antisymmetric",
               "F(A,B)C = [C,[A,B]] is vertical and antisymmetric in (A,B)", 1e-11);
    Check chk2(ctx, suite, "curvature-02-vanishes",
               "[(1+iJ)A, (1+iJ)B] = 0, so the (0,2) curvature part vanishes", 1e-11);
    Rng rng = Rng::substream(cfg.seed, 0x604);
    for (const auto& [d, n] : grid) {
      for (int t = 0; t < trials; ++t) {
        const HermitianPoint p = random_hermitian_point(d, n, rng);
        const Matrix a = random_hermitian_tangent(p, rng);
        const Matrix b = random_hermitian_tangent(p, rng);
        const Matrix c = random_fiber(p, rng).f;
        const Matrix f = curvature_f(p, a, b, c);
        const double scale = a.norm() * b.norm() * c.norm();
        chk1.sample(scaled_residual((p.p * f - f).norm() + (f * p.p).norm(), scale));
        chk1.sample(scaled_residual((f + curvature_f(p, b, a, c)).norm(), scale));
        const Matrix a01 = a + kI * icomm(a, p.p);
        const Matrix b01 = b + kI * icomm(b, p.p);
        const Matrix w = commutator(a01, b01);
        chk2.sample(scaled_residual(w.norm(), a.norm() * b.norm()));
        chk2.sample(scaled_residual(commutator(c, w).norm(), scale));
      }
    }
  }
  {
    Check chk(ctx, suite, "section-derivative-equals-lift",
              "B + [B, C] equals the horizontal lift of B at p + C", 1e-11);
    Rng rng = Rng::substream(cfg.seed, 0x605);
    for (const auto& [d, n] : grid) {
      for (int t = 0; t < trials; ++t) {
        const HermitianPoint p = random_hermitian_point(d, n, rng);
        const Matrix c = random_fiber(p, rng).f;
        const Matrix b = random_hermitian_tangent(p, rng);
        const ProjectionPoint displaced{p.p + c, n};
        const Matrix lhs = nabla_section(p, c, b);
        const Matrix rhs = horizontal_lift(displaced, p, b);
        chk.sample(scaled_residual((lhs - rhs).norm(), b.norm() * (1.0 + c.norm())));
      }
    }
  }
  {
    Check chk(ctx, suite, "adjoint-lift-relation",
              "dpi_{q*}((H J A)*) = i[A, pi(q*)] for base tangents A", 1e-10);
    Rng rng = Rng::substream(cfg.seed, 0x606);
    for (const auto& [d, n] : grid) {
      for (int t = 0; t < trials; ++t) {
        const ProjectionPoint q = random_point(d, n, 1.0, rng);
        const HermitianPoint p = base_projection(q);
        const Matrix ah = random_hermitian_tangent(p, rng);
        const Matrix hja = horizontal_lift(q, p, icomm(ah, p.p));
        const ProjectionPoint qs{q.q.adjoint(), q.rank};
        const Matrix lhs = pushforward(qs, hja.adjoint());
        const Matrix rhs = kI * commutator(ah, base_projection(qs).p);
        chk.sample(scaled_residual((lhs - rhs).norm(),
                                   (1.0 + q.q.squaredNorm()) * ah.norm()));
      }
    }
  }
  {
    Check chk(ctx, suite, "section-kernel-identity",
              "S(q, q) = id on the fiber; S(q, p) lands in the fiber at p", 1e-12);
    Rng rng = Rng::substream(cfg.seed, 0x607);
    for (const auto& [d, n] : grid) {
      for (int t = 0; t < trials; ++t) {
        const ProjectionPoint q = random_point(d, n, 1.0, rng);
        const Matrix id = Matrix::Identity(d, d);
        const Matrix fib = q.q * ginibre(d, rng) * (id - q.q);
        chk.sample(
            scaled_residual((section_kernel(q, q, fib) - fib).norm(),
                            (1.0 + q.q.squaredNorm()) * fib.norm()));
        const ProjectionPoint p = random_point(d, n, 1.0, rng);
        const Matrix mapped = section_kernel(q, p, fib);
        const double scale = (1.0 + p.q.squaredNorm()) * fib.norm();
        chk.sample(scaled_residual((p.q * mapped - mapped).norm(), scale));
        chk.sample(scaled_residual((mapped * p.q).norm(), scale));
      }
    }
  }
  {
    Check chk(ctx, suite, "vertical-projector-rank",
              "psi is an idempotent of rank n(d-n) on traceless matrices", 1e-10);
    Rng rng = Rng::substream(cfg.seed, 0x608);
    for (const auto& [d, n] : grid) {
      for (int t = 0; t < 5; ++t) {
        const ProjectionPoint q = random_point(d, n, 1.0, rng);
        const Matrix op = psi_operator_traceless(q);
        const double scale = 1.0 + op.squaredNorm();
        chk.sample(scaled_residual((op * op - op).norm(), scale));
        chk.sample(std::abs(op.trace() - Complex(n * (d - n), 0.0)) / scale);
      }
    }
  }
  {
    Check chk(ctx, suite, "metric-iso-pairing",
              "2 Re Tr((pA) B) = Tr(AB) for Hermitian tangents at Hermitian p", 1e-12);
    Rng rng = Rng::substream(cfg.seed, 0x609);
    for (const auto& [d, n] : grid) {
      for (int t = 0; t < trials; ++t) {
        const HermitianPoint p = random_hermitian_point(d, n, rng);
        const Matrix a = random_hermitian_tangent(p, rng);
        const Matrix b = random_hermitian_tangent(p, rng);
        const Matrix pa = metric_iso(p, a);
        const double scale = a.norm() * b.norm();
        chk.sample(scaled_residual(
            std::abs(2.0 * (pa * b).trace().real() - (a * b).trace().real()), scale));
        chk.sample(scaled_residual((p.p * pa - pa).norm() + (pa * p.p).norm(),
                                   a.norm() * (1.0 + p.p.norm())));
      }
    }
  }
  return suite;
}

// ---------------------------------------------------------------------------

SuiteResult suite_compactification(RunContext& ctx) {
  SuiteResult suite{"compactification"};
  const VerifyConfig& cfg = ctx.cfg;
  const Grid grid = grid_or(cfg, {{2, 1}, {3, 1}, {3, 2}, {4, 2}});
  const int trials = trials_or(cfg, 50);  // 50 x 4 = 200 roundtrips

  {
    Check chk(ctx, suite, "roundtrip", "decompactify(compactify(q)) = q", 1e-10);
    Rng rng = Rng::substream(cfg.seed, 0x701);
    double max_cond = 0.0;
    for (const auto& [d, n] : grid) {
      for (int t = 0; t < trials; ++t) {
        const ProjectionPoint q = random_point(d, n, 1.0, rng);
        const ChartResult res = try_decompactify(compactify(q));
        if (!res.ok) {
          chk.sample(1.0);
          continue;
        }
        max_cond = std::max(max_cond, res.condition);
        chk.sample(scaled_residual((res.point.q - q.q).norm(), q.q.norm()));
      }
    }
    chk.details()["max_chart_condition"] = max_cond;
  }
  {
    Check chk(ctx, suite, "adjoint-swaps-legs", "compactify(q*) swaps the pair", 1e-13);
    Rng rng = Rng::substream(cfg.seed, 0x702);
    for (const auto& [d, n] : grid) {
      for (int t = 0; t < 10; ++t) {
        const ProjectionPoint q = random_point(d, n, 1.0, rng);
        const PairPoint fwd = compactify(q);
        const PairPoint swp = compactify({q.q.adjoint(), q.rank});
        chk.sample(scaled_residual(
            (fwd.first.p - swp.second.p).norm() + (fwd.second.p - swp.first.p).norm(),
            q.q.norm()));
      }
    }
  }
  {
    Check chk(ctx, suite, "compactify-holomorphy",
              "dcomp intertwines J with (J, J) and i with (J, -J)", 1e-10);
    Rng rng = Rng::substream(cfg.seed, 0x703);
    for (const auto& [d, n] : grid) {
      for (int t = 0; t < trials / 2 + 1; ++t) {
        const ProjectionPoint q = random_point(d, n, 1.0, rng);
        const PairPoint pair = compactify(q);
        const Matrix a = random_tangent(q, rng).a;
        const auto [a1, a2] = compactify_differential(q, a);
        const double scale = (1.0 + q.q.squaredNorm()) * a.norm();

        const auto [j1, j2] = compactify_differential(q, icomm(a, q.q));
        chk.sample(scaled_residual((j1 - icomm(a1, pair.first.p)).norm() +
                                       (j2 - icomm(a2, pair.second.p)).norm(),
                                   scale * (1.0 + q.q.norm())));
        const auto [i1, i2] = compactify_differential(q, kI * a);
        chk.sample(scaled_residual((i1 - icomm(a1, pair.first.p)).norm() +
                                       (i2 + icomm(a2, pair.second.p)).norm(),
                                   scale));
      }
    }
  }
  {
    Check chk(ctx, suite, "pair-structure-squares",
              "the pair-chart structure squares to -1 on arbitrary pair tangents", 1e-10);
    Rng rng = Rng::substream(cfg.seed, 0x704);
    for (const auto& [d, n] : grid) {
      for (int t = 0; t < 10; ++t) {
        const PairPoint pair{random_hermitian_point(d, n, rng),
                             random_hermitian_point(d, n, rng)};
        const Matrix a1 = random_hermitian_tangent(pair.first, rng);
        const Matrix a2 = random_hermitian_tangent(pair.second, rng);
        const auto [b1, b2] = pair_structure(pair, a1, a2);
        const auto [c1, c2] = pair_structure(pair, b1, b2);
        chk.sample(scaled_residual((c1 + a1).norm() + (c2 + a2).norm(),
                                   a1.norm() + a2.norm()));
      }
    }
  }
  {
    Check chk(ctx, suite, "rank1-image-criterion",
              "rank-1 pairs with Tr(p2 p1) != 0 decompactify back to themselves", 1e-8);
    Rng rng = Rng::substream(cfg.seed, 0x705);
    for (const int d : {2, 3}) {
      for (int t = 0; t < 500; ++t) {
        const PairPoint pair{random_hermitian_point(d, 1, rng),
                             random_hermitian_point(d, 1, rng)};
        if (!rank1_image_test(pair)) {
          chk.sample(1.0);  // Haar pairs are almost surely non-orthogonal
          continue;
        }
        const ChartResult res = try_decompactify(pair);
        if (!res.ok) {
          chk.sample(1.0);
          continue;
        }
        const PairPoint back = compactify(res.point);
        const double r =
            (back.first.p - pair.first.p).norm() + (back.second.p - pair.second.p).norm();
        chk.sample(scaled_residual(r, res.condition));
      }
    }
  }
  {
    Check chk(ctx, suite, "complementary-pairs-rejected",
              "(p, 1-p) fails the image test and the chart rejects it", 1e-12);
    Rng rng = Rng::substream(cfg.seed, 0x706);
    for (int t = 0; t < 20; ++t) {
      const HermitianPoint p = random_hermitian_point(2, 1, rng);
      const HermitianPoint comp{Matrix(Matrix::Identity(2, 2) - p.p), 1};
      const PairPoint pair{p, comp};
      chk.sample(rank1_image_test(pair) ? 1.0 : 0.0);
      chk.sample(try_decompactify(pair).ok ? 1.0 : 0.0);
    }
  }
  {
    Check chk1(ctx, suite, "tangent-ray-validity",
               "f(p, tA) is an exact rank-1 Hermitian idempotent at every t", 1e-12);
    Check chk2(ctx, suite, "tangent-ray-curve", "f(p, 0) = p and df/dt(0) = A", 1e-6);
    Rng rng = Rng::substream(cfg.seed, 0x707);
    for (const int d : {2, 3}) {
      for (int t = 0; t < 20; ++t) {
        const HermitianPoint p = random_hermitian_point(d, 1, rng);
        const Matrix a = random_hermitian_tangent(p, rng);
        for (const double tt : {0.3, 2.0, 1000.0}) {
          const HermitianPoint f = tangent_compactify(p, a, tt);
          const double validity = (f.p * f.p - f.p).norm() +
                                  std::abs(f.p.trace() - 1.0) +
                                  (f.p - f.p.adjoint()).norm();
          chk1.sample(scaled_residual(validity, f.p.squaredNorm()));
        }
        chk2.sample((tangent_compactify(p, a, 0.0).p - p.p).norm());
        const double h = 1e-5;
        const Matrix deriv =
            (tangent_compactify(p, a, h).p - tangent_compactify(p, a, -h).p) / (2.0 * h);
        chk2.sample(scaled_residual((deriv - a).norm(), a.norm()));
      }
    }
  }
  {
    Check chk(ctx, suite, "tangent-ray-limit",
              "f(p, tA) reaches A p A / Tr(p A^2) at |t| = 1e6", 1e-8);
    Rng rng = Rng::substream(cfg.seed, 0x708);
    double worst_approach = 0.0;
    for (const int d : {2, 3}) {
      for (int t = 0; t < 20; ++t) {
        const HermitianPoint p = random_hermitian_point(d, 1, rng);
        const Matrix a = random_hermitian_tangent(p, rng);
        const HermitianPoint lim = tangent_compactify_limit(p, a);
        const HermitianPoint at = tangent_compactify(p, a, 1e6);
        chk.sample(scaled_residual((at.p - lim.p).norm(), lim.p.norm()));
        // Below the switch the direct formula approaches at rate ~1/t.
        const HermitianPoint near = tangent_compactify(p, a, 1e5);
        worst_approach = std::max(worst_approach, (near.p - lim.p).norm());
        chk.sample(scaled_residual((lim.p * p.p).norm(), 1.0));
      }
    }
    chk.details()["direct_formula_distance_at_1e5"] = worst_approach;
  }
  {
    Check chk(ctx, suite, "tangent-ray-invariance",
              "the limit is invariant under A |-> (x + yJ)A", 1e-10);
    Rng rng = Rng::substream(cfg.seed, 0x709);
    for (const int d : {2, 3}) {
      for (int t = 0; t < 20; ++t) {
        const HermitianPoint p = random_hermitian_point(d, 1, rng);
        const Matrix a = random_hermitian_tangent(p, rng);
        double x = 0.0, y = 0.0;
        do {
          x = rng.gaussian();
          y = rng.gaussian();
        } while (std::abs(x) + std::abs(y) < 0.1);
        const Matrix mixed = x * a + y * icomm(a, p.p);
        const HermitianPoint lim = tangent_compactify_limit(p, a);
        const HermitianPoint lim2 = tangent_compactify_limit(p, mixed);
        chk.sample(scaled_residual((lim2.p - lim.p).norm(), lim.p.norm()));
        const double validity = (lim.p * lim.p - lim.p).norm() +
                                std::abs(lim.p.trace() - 1.0) +
                                (lim.p - lim.p.adjoint()).norm();
        chk.sample(scaled_residual(validity, 1.0));
      }
    }
  }
  return suite;
}

// ---------------------------------------------------------------------------

SuiteResult suite_poisson(RunContext& ctx) {
  SuiteResult suite{"poisson"};
  const VerifyConfig& cfg = ctx.cfg;
  const Grid grid = grid_or(cfg, {{2, 1}, {3, 1}, {4, 2}});

  {
    Check chk(ctx, suite, "tautological-pairing",
              "Tr(q dpi(A)) = -Tr(A pi(q)) for tangents A", 1e-11);
    Rng rng = Rng::substream(cfg.seed, 0x801);
    for (const auto& [d, n] : grid) {
      for (int t = 0; t < trials_or(cfg, 20); ++t) {
        const ProjectionPoint q = random_point(d, n, 1.0, rng);
        const Matrix a = random_tangent(q, rng).a;
        const Complex lhs = (q.q * pushforward(q, a)).trace();
        const Complex rhs = -(a * base_projection(q).p).trace();
        chk.sample(scaled_residual(std::abs(lhs - rhs),
                                   (1.0 + q.q.squaredNorm()) * a.norm()));
      }
    }
  }
  {
    Check chk1(ctx, suite, "euler-field", "[pi(q), q] = q - pi(q)", 1e-13);
    Check chk2(ctx, suite, "hat-vanishes-zero-section", "hat M = 0 at Hermitian points",
               1e-13);
    Rng rng = Rng::substream(cfg.seed, 0x802);
    for (const auto& [d, n] : grid) {
      for (int t = 0; t < 20; ++t) {
        const ProjectionPoint q = random_point(d, n, 1.0, rng);
        const Matrix p = base_projection(q).p;
        chk1.sample(scaled_residual((commutator(p, q.q) - (q.q - p)).norm(),
                                    q.q.squaredNorm()));
        const HermitianPoint hp = random_hermitian_point(d, n, rng);
        const Matrix m = ginibre(d, rng);
        chk2.sample(scaled_residual(std::abs(hat_observable(m, hp.as_point())), m.norm()));
      }
    }
  }
  {
    Check chk(ctx, suite, "symplectic-engine-vs-exact",
              "the flow engine reproduces the exact d(Re theta)", 1e-8);
    Rng rng = Rng::substream(cfg.seed, 0x803);
    for (const auto& [d, n] : Grid{{2, 1}, {3, 1}}) {
      for (int t = 0; t < 10; ++t) {
        const ProjectionPoint q = random_point(d, n, 1.0, rng);
        const Matrix a = random_tangent(q, rng).a;
        const Matrix b = random_tangent(q, rng).a;
        const double engine = canonical_symplectic(q, a, b);
        const double exact = canonical_symplectic_exact(q, a, b);
        chk.sample(scaled_residual(std::abs(engine - exact), a.norm() * b.norm()));
      }
    }
  }
  {
    Check chk(ctx, suite, "symplectic-nondegenerate",
              "the pairing matrix of d(Re theta) on the tangent space has full rank", 1e-12);
    Rng rng = Rng::substream(cfg.seed, 0x804);
    double min_sv = std::numeric_limits<double>::infinity();
    for (const auto& [d, n] : Grid{{2, 1}, {3, 1}}) {
      for (int t = 0; t < 2; ++t) {
        const ProjectionPoint q = random_point(d, n, 1.0, rng);
        const std::vector<Matrix> basis = real_tangent_basis(q);
        const int m = static_cast<int>(basis.size());
        RealMatrix w = RealMatrix::Zero(m, m);
        for (int i = 0; i < m; ++i) {
          for (int j = i + 1; j < m; ++j) {
            w(i, j) = canonical_symplectic_exact(q, basis[i], basis[j]);
            w(j, i) = -w(i, j);
          }
        }
        Eigen::JacobiSVD<RealMatrix> svd(w);
        const double sv = svd.singularValues()(m - 1);
        min_sv = std::min(min_sv, sv);
        chk.sample(deficit(sv, 1e-6));
      }
    }
    chk.details()["min_singular_value"] = min_sv;
  }
  {
    Check chk(ctx, suite, "hamiltonian-field",
              "omega_c([q, M], .) = d(Re hat M) for skew-Hermitian M", 1e-11);
    Rng rng = Rng::substream(cfg.seed, 0x805);
    for (const auto& [d, n] : Grid{{2, 1}, {3, 1}}) {
      for (int t = 0; t < 5; ++t) {
        const ProjectionPoint q = random_point(d, n, 1.0, rng);
        const Matrix g = ginibre(d, rng);
        const Matrix m = 0.5 * (g - g.adjoint());
        const Matrix xm = vector_field(m, q);
        for (const Matrix& b : real_tangent_basis(q)) {
          const double lhs = canonical_symplectic_exact(q, xm, b);
          const double rhs = hat_differential(m, q, b).real();
          chk.sample(scaled_residual(std::abs(lhs - rhs),
                                     (1.0 + q.q.squaredNorm()) * m.norm()));
        }
      }
    }
  }
  {
    Check chk(ctx, suite, "field-morphism", "[X_M, X_N] = X_{[M,N]}", 1e-12);
    Rng rng = Rng::substream(cfg.seed, 0x806);
    for (const auto& [d, n] : grid) {
      for (int t = 0; t < 20; ++t) {
        const ProjectionPoint q = random_point(d, n, 1.0, rng);
        const Matrix m = ginibre(d, rng);
        const Matrix nn = ginibre(d, rng);
        // Lie bracket of the linear fields q |-> [q, M]:
        // [X_M, X_N](q) = [[q, M], N] - [[q, N], M].
        const Matrix lie =
            commutator(commutator(q.q, m), nn) - commutator(commutator(q.q, nn), m);
        const Matrix direct = vector_field(commutator(m, nn), q);
        chk.sample(scaled_residual((lie - direct).norm(),
                                   q.q.norm() * m.norm() * nn.norm()));
      }
    }
  }
  {
    Check chk(ctx, suite, "bracket-reproduces-commutator",
              "{hat M, hat N} = hat [M, N] via the assembled bracket", 1e-5);
    Rng rng = Rng::substream(cfg.seed, 0x807);
    for (const auto& [d, n] : Grid{{2, 1}, {3, 1}}) {
      for (int t = 0; t < 10; ++t) {
        const ProjectionPoint q = random_point(d, n, 1.0, rng);
        const Matrix m = ginibre(d, rng);
        const Matrix nn = ginibre(d, rng);
        const Complex br = poisson_bracket(m, nn, q);
        const Complex expected = hat_observable(commutator(m, nn), q);
        chk.sample(scaled_residual(std::abs(br - expected), m.norm() * nn.norm()),
                   [&] {
                     return nlohmann::json{{"point", point_to_json(q)},
                                           {"observable_m", matrix_to_json(m)},
                                           {"observable_n", matrix_to_json(nn)}};
                   });
      }
    }
    chk.details()["orientation"] = bracket_orientation();
    chk.details()["scale"] = bracket_scale();
  }
  {
    Check chk(ctx, suite, "commuting-observables",
              "{hat M, hat N} = 0 when [M, N] = 0", 1e-6);
    Rng rng = Rng::substream(cfg.seed, 0x808);
    for (const auto& [d, n] : Grid{{2, 1}, {3, 1}}) {
      for (int t = 0; t < 5; ++t) {
        const ProjectionPoint q = random_point(d, n, 1.0, rng);
        const Matrix m = ginibre(d, rng);
        const Matrix nn = m * m;  // commutes with m
        const Complex br = poisson_bracket(m, nn, q);
        chk.sample(scaled_residual(std::abs(br), m.norm() * nn.norm()));
      }
    }
  }
  {
    Check chk(ctx, suite, "star-commutator",
              "hat(MN) - hat(NM) = hat[M,N] and matches the Poisson bracket", 1e-5);
    Rng rng = Rng::substream(cfg.seed, 0x809);
    double exact_max = 0.0;
    for (const auto& [d, n] : Grid{{2, 1}, {3, 1}}) {
      for (int t = 0; t < 5; ++t) {
        const ProjectionPoint q = random_point(d, n, 1.0, rng);
        const Matrix m = ginibre(d, rng);
        const Matrix nn = ginibre(d, rng);
        const Complex star_comm = star_product(m, nn, q) - star_product(nn, m, q);
        const Complex exact = hat_observable(commutator(m, nn), q);
        const double scale = m.norm() * nn.norm();
        const double exact_resid = scaled_residual(std::abs(star_comm - exact), scale);
        exact_max = std::max(exact_max, exact_resid);
        chk.sample(exact_resid);
        chk.sample(
            scaled_residual(std::abs(star_comm - poisson_bracket(m, nn, q)), scale));
      }
    }
    chk.details()["algebraic_identity_max_residual"] = exact_max;
  }
  {
    Check chk(ctx, suite, "hat-kernel-dimension",
              "the kernel of M |-> hat M has dimension 1 at d = 2, n = 1", 0.9);
    Rng rng = Rng::substream(cfg.seed, 0x80a);
    const int dim = hat_kernel_dimension(2, 1, 60, rng);
    chk.sample(std::abs(static_cast<double>(dim - 1)));
    chk.details()["kernel_dimension"] = dim;
  }
  return suite;
}

// ---------------------------------------------------------------------------

SuiteResult suite_haar(RunContext& ctx) {
  SuiteResult suite{"haar"};
  const VerifyConfig& cfg = ctx.cfg;
  const long samples = cfg.samples;

  // Sigma-style checks record deviation/(3 sigma); tolerance 1.
  {
    Check chk(ctx, suite, "first-moment", "E[q] = (n/d) I over Haar points", 1.0);
    for (const auto& [d, n] : Grid{{2, 1}, {3, 2}}) {
      const McMatrixEstimate est = integrate_matrix(
          [](const HermitianPoint& p) { return p.p; }, d, n,
          samples, cfg.seed + 0x901);
      const Matrix expect =
          (static_cast<double>(n) / d) * Matrix::Identity(d, d);
      chk.sample((est.mean - expect).norm() / (3.0 * est.stderr_hs));
      chk.details()[std::string("stderr_d") + std::to_string(d)] = est.stderr_hs;
    }
  }
  {
    Check chk(ctx, suite, "schur-constant-d2",
              "E[psi_q] = lambda id on traceless, lambda = 1/3 at d = 2", 1.0);
    const McScalarEstimate est = schur_lambda(2, 1, samples, cfg.seed + 0x902);
    chk.sample(std::abs(est.mean - Complex(schur_lambda_exact(2, 1), 0.0)) /
               (3.0 * est.stderr_abs));
    chk.details()["estimate"] = est.mean.real();
    chk.details()["stderr"] = est.stderr_abs;
  }
  {
    Check chk(ctx, suite, "schur-constant-d3",
              "E[psi_q] = lambda id on traceless, lambda = 1/4 at d = 3", 1.0);
    const McScalarEstimate est = schur_lambda(3, 1, samples, cfg.seed + 0x903);
    chk.sample(std::abs(est.mean - Complex(schur_lambda_exact(3, 1), 0.0)) /
               (3.0 * est.stderr_abs));
    chk.details()["estimate"] = est.mean.real();
    chk.details()["stderr"] = est.stderr_abs;
  }
  {
    Check chk(ctx, suite, "section-idempotency",
              "E_q'[S(q',p) S(q,q')] = lambda S(q,p) over 10 point pairs", 1.0);
    Rng rng = Rng::substream(cfg.seed, 0x904);
    for (int t = 0; t < 10; ++t) {
      const ProjectionPoint q = random_point(2, 1, 1.0, rng);
      const ProjectionPoint p = random_point(2, 1, 1.0, rng);
      const Matrix id = Matrix::Identity(2, 2);
      const Matrix fib = q.q * ginibre(2, rng) * (id - q.q);
      const IdempotencyCheck res = section_idempotency(
          q, p, fib, samples, cfg.seed + 0x905 + t, schur_lambda_exact(2, 1));
      chk.sample(res.residual / (3.0 * res.stderr_hs));
    }
  }
  {
    Check chk(ctx, suite, "projector-left-inverse",
              "M is recovered from E[psi_q(M)]/lambda with lambda estimated independently",
              1.0);
    Rng rng = Rng::substream(cfg.seed, 0x906);
    for (const int d : {2, 3}) {
      Matrix m = ginibre(d, rng);
      m -= (m.trace() / static_cast<double>(d)) * Matrix::Identity(d, d);
      const LeftInverseCheck res = psi_left_inverse(m, d, samples, cfg.seed + 0x907 + d);
      chk.sample(res.residual / (3.0 * res.stderr_hs));
      chk.details()[std::string("lambda_d") + std::to_string(d)] = res.lambda_used;
    }
  }
  {
    Check chk(ctx, suite, "error-scaling",
              "the standard error halves when samples quadruple", 1e-9);
    const long n1 = std::max<long>(1000, samples / 4);
    const McScalarEstimate e1 = schur_lambda(2, 1, n1, cfg.seed + 0x908);
    const McScalarEstimate e4 = schur_lambda(2, 1, 4 * n1, cfg.seed + 0x908);
    const double ratio = e1.stderr_abs / e4.stderr_abs;
    chk.sample(std::max({0.0, 1.5 - ratio, ratio - 2.7}));
    chk.details()["ratio"] = ratio;
  }
  {
    Check chk(ctx, suite, "unitarity",
              "sampled unitaries satisfy U*U = I and streams reproduce bitwise", 1e-12);
    for (const int d : {2, 3, 4}) {
      Rng rng = Rng::substream(cfg.seed, 0x909 + d);
      for (int t = 0; t < 10; ++t) {
        const Matrix u = haar_unitary(d, rng);
        chk.sample((u.adjoint() * u - Matrix::Identity(d, d)).norm());
      }
      Rng r1 = Rng::substream(cfg.seed, 0x9100 + d);
      Rng r2 = Rng::substream(cfg.seed, 0x9100 + d);
      chk.sample((haar_unitary(d, r1) - haar_unitary(d, r2)).norm());
    }
  }
  return suite;
}

}  // namespace

// ---------------------------------------------------------------------------

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "identities",       "complex-structures", "symplectic",
      "hyperkahler",      "d2-model",           "bundle",
      "compactification", "poisson",            "haar"};
  return names;
}

SuiteResult run_suite(const std::string& name, const VerifyConfig& cfg) {
  RunContext ctx{cfg};
  const auto start = std::chrono::steady_clock::now();
  SuiteResult result;
  if (name == "identities") {
    result = suite_identities(ctx);
  } else if (name == "complex-structures") {
    result = suite_complex_structures(ctx);
  } else if (name == "symplectic") {
    result = suite_symplectic(ctx);
  } else if (name == "hyperkahler") {
    result = suite_hyperkahler(ctx);
  } else if (name == "d2-model") {
    result = suite_d2_model(ctx);
  } else if (name == "bundle") {
    result = suite_bundle(ctx);
  } else if (name == "compactification") {
    result = suite_compactification(ctx);
  } else if (name == "poisson") {
    result = suite_poisson(ctx);
  } else if (name == "haar") {
    result = suite_haar(ctx);
  } else {
    throw std::invalid_argument("run_suite: unknown suite '" + name + "'");
  }
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace idemgeo
