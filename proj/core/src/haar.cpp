#include "idemgeo/haar.hpp"

#include <cmath>
#include <stdexcept>

#include "idemgeo/bundle.hpp"
#include "idemgeo/rng.hpp"

namespace idemgeo {

namespace {

// Kahan-compensated accumulator for matrices (entrywise compensation).
struct MatrixAccumulator {
  Matrix sum, comp;

  explicit MatrixAccumulator(int d)
      : sum(Matrix::Zero(d, d)), comp(Matrix::Zero(d, d)) {}

  void add(const Matrix& x) {
    const Matrix y = x - comp;
    const Matrix t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

struct ScalarAccumulator {
  double sum = 0.0, comp = 0.0;

  void add(double x) {
    const double y = x - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

void require_samples(long samples, const char* who) {
  if (samples < 2) throw std::invalid_argument(std::string(who) + ": need at least 2 samples");
}

}  // namespace

McMatrixEstimate integrate_matrix(const std::function<Matrix(const HermitianPoint&)>& f,
                                  int dim, int rank, long samples, std::uint64_t seed) {
  require_samples(samples, "integrate_matrix");
  Rng rng = Rng::substream(seed, 0);
  MatrixAccumulator acc(dim);
  ScalarAccumulator sq;
  int rows = 0;
  for (long i = 0; i < samples; ++i) {
    const Matrix v = f(random_hermitian_point(dim, rank, rng));
    if (rows == 0) rows = static_cast<int>(v.rows());
    acc.add(v);
    sq.add(v.squaredNorm());
  }
  McMatrixEstimate e;
  e.mean = acc.sum / static_cast<double>(samples);
  const double n = static_cast<double>(samples);
  const double var = std::max(0.0, sq.sum - n * e.mean.squaredNorm());
  e.stderr_hs = std::sqrt(var / (n * (n - 1.0)));
  e.samples = samples;
  e.seed = seed;
  return e;
}

McScalarEstimate integrate_scalar(const std::function<Complex(const HermitianPoint&)>& f,
                                  int dim, int rank, long samples, std::uint64_t seed) {
  require_samples(samples, "integrate_scalar");
  Rng rng = Rng::substream(seed, 0);
  ScalarAccumulator re, im, sq;
  for (long i = 0; i < samples; ++i) {
    const Complex v = f(random_hermitian_point(dim, rank, rng));
    re.add(v.real());
    im.add(v.imag());
    sq.add(std::norm(v));
  }
  McScalarEstimate e;
  const double n = static_cast<double>(samples);
  e.mean = Complex(re.sum, im.sum) / n;
  const double var = std::max(0.0, sq.sum - n * std::norm(e.mean));
  e.stderr_abs = std::sqrt(var / (n * (n - 1.0)));
  e.samples = samples;
  e.seed = seed;
  return e;
}

double schur_lambda_exact(int dim, int rank) {
  if (rank != 1) {
    throw std::invalid_argument(
        "schur_lambda_exact: closed form pinned only for rank 1 (lambda = 1/(d+1))");
  }
  return 1.0 / (dim + 1.0);
}

McScalarEstimate schur_lambda(int dim, int rank, long samples, std::uint64_t seed) {
  // Fixed traceless reference direction, drawn from its own substream so
  // the estimate depends only on (dim, rank, samples, seed).
  Rng ref_rng = Rng::substream(seed, 0xa11ce);
  Matrix m = ginibre(dim, ref_rng);
  m -= (m.trace() / static_cast<double>(dim)) * Matrix::Identity(dim, dim);
  const double m2 = m.squaredNorm();
  return integrate_scalar(
      [&m, m2](const HermitianPoint& q) {
        const Matrix proj = q.p * m - q.p * m * q.p;
        return hs_inner(m, proj) / m2;
      },
      dim, rank, samples, seed);
}

IdempotencyCheck section_idempotency(const ProjectionPoint& q, const ProjectionPoint& p,
                                     const Matrix& fiber, long samples, std::uint64_t seed,
                                     double lambda) {
  if (q.dim() != p.dim()) {
    throw std::invalid_argument("section_idempotency: dimension mismatch");
  }
  const int d = q.dim();
  const McMatrixEstimate est = integrate_matrix(
      [&](const HermitianPoint& mid) {
        const ProjectionPoint midpt = mid.as_point();
        return section_kernel(midpt, p, section_kernel(q, midpt, fiber));
      },
      d, q.rank, samples, seed);

  IdempotencyCheck chk;
  chk.mc_mean = est.mean;
  chk.expected = lambda * section_kernel(q, p, fiber);
  chk.stderr_hs = est.stderr_hs;
  chk.residual = (est.mean - chk.expected).norm();
  chk.lambda = lambda;
  return chk;
}

LeftInverseCheck psi_left_inverse(const Matrix& m_traceless, int dim, long samples,
                                  std::uint64_t seed) {
  if (std::abs(m_traceless.trace()) > 1e-12 * (1.0 + m_traceless.norm())) {
    throw std::invalid_argument("psi_left_inverse: input must be traceless");
  }
  // lambda from an independent substream, not the closed form: the check
  // then exercises both the recovery and the constant.
  std::uint64_t chain = seed;
  const McScalarEstimate lam = schur_lambda(dim, 1, samples, splitmix64(chain));
  const McMatrixEstimate est = integrate_matrix(
      [&](const HermitianPoint& q) {
        return Matrix(q.p * m_traceless - q.p * m_traceless * q.p);
      },
      dim, 1, samples, seed);

  LeftInverseCheck chk;
  chk.lambda_used = lam.mean.real();
  chk.recovered = est.mean / chk.lambda_used;
  chk.original = m_traceless;
  chk.stderr_hs = est.stderr_hs / std::abs(chk.lambda_used);
  chk.residual = (chk.recovered - m_traceless).norm();
  return chk;
}

}  // namespace idemgeo
