#pragma once

#include "idemgeo/geometry.hpp"
#include "idemgeo/linalg.hpp"
#include "idemgeo/variety.hpp"

namespace idemgeo {

/// Tautological 1-form at q: theta(A) = -Tr(pi(q) A), complex-valued.
/// Pairs the base projection with the tangent direction; the canonical
/// symplectic structure is d of its real part.
Complex taut_form(const ProjectionPoint& pt, const Matrix& a);

/// Canonical symplectic form omega_c = d(Re theta), evaluated with the
/// intrinsic finite-difference exterior derivative.
double canonical_symplectic(const ProjectionPoint& pt, const Matrix& a, const Matrix& b,
                            const FdOptions& opt = {});

/// Closed form of omega_c, obtained by differentiating theta exactly
/// along the canonical flows (dpi is the pushforward):
///   omega_c(A, B) = Re[ -Tr(dpi(A) B) - Tr(pi(q) [A, [q,B]])
///                       +Tr(dpi(B) A) + Tr(pi(q) [B, [q,A]]) ].
/// Used to cross-check the engine at machine precision.
double canonical_symplectic_exact(const ProjectionPoint& pt, const Matrix& a, const Matrix& b);

/// Linear observable M |-> hat M, with hat M(q) = Tr((q - pi(q)) M)
/// (equivalently Tr([pi(q), q] M)). Vanishes identically on the zero
/// section; complex-linear in M.
Complex hat_observable(const Matrix& m, const ProjectionPoint& pt);

/// Exact differential of hat M at q: d(hat M)(V) = Tr(V M) - Tr(dpi(V) M).
Complex hat_differential(const Matrix& m, const ProjectionPoint& pt, const Matrix& v);

/// The linear vector field X_M(q) = [q, M]. Tangent to the variety for
/// every M; for skew-Hermitian M it is the Hamiltonian field of
/// Re hat M under omega_c. The assignment M |-> X_M is a Lie-algebra
/// morphism: [X_M, X_N] = X_{[M,N]} by the Jacobi identity.
Matrix vector_field(const Matrix& m, const ProjectionPoint& pt);

/// Poisson bracket of hat observables, assembled per the verification
/// pipeline: real tangent basis, pairing matrix of omega_c by finite
/// differences, finite-difference gradients, linear solve, then the
/// complex-bilinear combination of the four real brackets scaled by the
/// calibrated normalization. Reproduces hat[M, N].
Complex poisson_bracket(const Matrix& m, const Matrix& n, const ProjectionPoint& pt,
                        const FdOptions& opt = {});

/// Calibrated bracket normalization: {f, g} = orientation * scale *
/// (grad f . W^{-1} grad g). The raw real assembly reproduces
/// 2 hat[M, N] (the complex-trace vs real-pairing duality), so the
/// calibration search covers orientation {+1, -1} x scale {1, 1/2, 2};
/// it lands on (+1, 1/2) and is recorded in reports.
double bracket_orientation();
double bracket_scale();

/// Star product of hat observables: hat M * hat N := hat(MN). Its
/// commutator reduces to hat[M, N] linearly, hence matches the Poisson
/// bracket.
Complex star_product(const Matrix& m, const Matrix& n, const ProjectionPoint& pt);

/// Numerical kernel dimension of M |-> hat M as a functional family:
/// rank-deficiency of the sampling matrix over random points. Equals 1
/// (the scalar matrices) at d = 2, n = 1.
int hat_kernel_dimension(int dim, int rank, int samples, Rng& rng);

}  // namespace idemgeo
