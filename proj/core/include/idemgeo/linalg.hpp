#pragma once

#include <complex>
#include <initializer_list>

#include <Eigen/Dense>

namespace idemgeo {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Hilbert-Schmidt inner product Tr(A* B), antilinear in the first slot.
Complex hs_inner(const Matrix& a, const Matrix& b);

/// Hilbert-Schmidt norm sqrt(Tr(A* A)).
double hs_norm(const Matrix& a);

/// Commutator [A, B] = AB - BA.
Matrix commutator(const Matrix& a, const Matrix& b);

/// Anticommutator {A, B} = AB + BA.
Matrix anticommutator(const Matrix& a, const Matrix& b);

/// Residual r divided by (1 + s) where s is a norm-derived scale.
/// Keeps comparisons meaningful for both small and large operands.
double scaled_residual(double r, double scale);

/// Product of Hilbert-Schmidt norms, for scaling multilinear residuals.
double norm_product(std::initializer_list<const Matrix*> ms);

/// Conjugation flow p |-> exp(-tN) p exp(tN).
///
/// Uses the scaling-and-squaring Pade matrix exponential. The flow
/// preserves idempotency, rank and trace for every N and t, which makes
/// it the workhorse for generating curves inside the variety.
Matrix conj_flow(const Matrix& p, const Matrix& n, double t);

/// Frobenius condition number estimate via SVD (largest/smallest singular value).
double condition_number(const Matrix& a);

}  // namespace idemgeo
