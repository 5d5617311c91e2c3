#pragma once

#include <cstdint>
#include <functional>

#include "idemgeo/linalg.hpp"
#include "idemgeo/variety.hpp"

namespace idemgeo {

/// Monte Carlo estimate of a matrix-valued Haar integral. The standard
/// error is aggregated in the Hilbert-Schmidt norm:
///   se = sqrt((sum |f_i|^2 - N |mean|^2) / (N (N - 1))).
struct McMatrixEstimate {
  Matrix mean;
  double stderr_hs = 0.0;
  long samples = 0;
  std::uint64_t seed = 0;
};

struct McScalarEstimate {
  Complex mean;
  double stderr_abs = 0.0;
  long samples = 0;
  std::uint64_t seed = 0;
};

/// Average of f over Haar-random rank-n Hermitian points (Kahan
/// compensated accumulation; deterministic in the seed).
McMatrixEstimate integrate_matrix(const std::function<Matrix(const HermitianPoint&)>& f,
                                  int dim, int rank, long samples, std::uint64_t seed);

McScalarEstimate integrate_scalar(const std::function<Complex(const HermitianPoint&)>& f,
                                  int dim, int rank, long samples, std::uint64_t seed);

/// Exact Schur constant of the averaged vertical projector on traceless
/// matrices: E_q[qM - qMq] = lambda M with lambda = 1/(d+1) for rank 1.
/// Follows from the second moment E[qMq] = (M + Tr(M) I)/(d(d+1)).
/// Pinned in closed form only for rank 1; throws otherwise.
double schur_lambda_exact(int dim, int rank);

/// Monte Carlo estimate of the Schur constant: averages the projection
/// of psi_q(M) onto a fixed traceless reference M per sample.
McScalarEstimate schur_lambda(int dim, int rank, long samples, std::uint64_t seed);

/// Haar-averaged composition of section kernels:
///   E_q' [ S(q', p) S(q, q') fiber ] = lambda S(q, p) fiber.
struct IdempotencyCheck {
  Matrix mc_mean;       // Monte Carlo average of the composition
  Matrix expected;      // lambda * S(q, p) fiber
  double stderr_hs = 0.0;
  double residual = 0.0;  // |mc_mean - expected|
  double lambda = 0.0;
};

IdempotencyCheck section_idempotency(const ProjectionPoint& q, const ProjectionPoint& p,
                                     const Matrix& fiber, long samples, std::uint64_t seed,
                                     double lambda);

/// Recovery of a traceless matrix from Haar averages of its vertical
/// projections: E_q[psi_q(M)] = lambda M, so mean/lambda returns M.
/// lambda is estimated on an independent substream of the same master
/// seed rather than taken from the closed form.
struct LeftInverseCheck {
  Matrix recovered;
  Matrix original;
  double stderr_hs = 0.0;   // standard error of recovered
  double residual = 0.0;    // |recovered - original|
  double lambda_used = 0.0;
};

LeftInverseCheck psi_left_inverse(const Matrix& m_traceless, int dim, long samples,
                                  std::uint64_t seed);

}  // namespace idemgeo
