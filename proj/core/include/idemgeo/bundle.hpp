#pragma once

#include <utility>

#include "idemgeo/linalg.hpp"
#include "idemgeo/variety.hpp"

namespace idemgeo {

/// Horizontal lift of a base tangent vector through the leaf projection:
///   H(A) = [q, [pi(q), A]].
/// Satisfies pushforward(H(A)) = A and reduces to the identity on the
/// zero section.
Matrix horizontal_lift(const ProjectionPoint& pt, const Matrix& base_tangent);
Matrix horizontal_lift(const ProjectionPoint& pt, const HermitianPoint& base,
                       const Matrix& base_tangent);

/// Curvature of the horizontal distribution, acting on a vertical vector:
///   F(A, B) C = [C, [A, B]]
/// for Hermitian tangents A, B at the base and C vertical. The value is
/// vertical again, antisymmetric in (A, B), and its (0,2) part vanishes
/// identically because [(1 + iJ)A, (1 + iJ)B] = 0.
Matrix curvature_f(const HermitianPoint& base, const Matrix& a, const Matrix& b,
                   const Matrix& vertical);

/// Covariant derivative of the affine section p |-> p + C along a base
/// tangent B: equals B + [B, C], which is exactly the horizontal lift of
/// B at the displaced point p + C.
Matrix nabla_section(const HermitianPoint& base, const Matrix& vertical, const Matrix& b);

/// A pair of Hermitian points: a point of the double-Grassmannian chart.
struct PairPoint {
  HermitianPoint first, second;
};

/// Compactification q |-> (pi(q), pi(q*)). Injective away from the
/// degenerate locus; the adjoint swaps the two legs.
PairPoint compactify(const ProjectionPoint& pt);

/// Differential of the compactification: A |-> (dpi_q(A), dpi_{q*}(A*)).
/// Intertwines J with (J, J) and I with (J, -J).
std::pair<Matrix, Matrix> compactify_differential(const ProjectionPoint& pt, const Matrix& a);

struct ChartResult {
  ProjectionPoint point;
  double condition = 0.0;
  bool ok = false;
};

/// Inverse of the compactification where defined: the idempotent with
/// range = range(p1) and kernel = ker(p2), assembled as
/// [V1 | 0] [V1 | W]^{-1} with V1 a frame of range(p1) and W a frame of
/// ker(p2). Fails (ok = false) when the chart matrix condition number
/// exceeds max_condition; that includes complementary pairs like
/// (p, 1-p) where the chart matrix is exactly singular.
ChartResult try_decompactify(const PairPoint& pair, double max_condition = 1e8);

/// Throwing variant: std::domain_error on a rejected chart.
ProjectionPoint decompactify(const PairPoint& pair, double max_condition = 1e8);

/// Rank-1 membership test for the image of the compactification: a pair
/// of rank-1 Hermitian points is hit iff p2 p1 != 0, i.e. Tr(p2 p1) > tol.
bool rank1_image_test(const PairPoint& pair, double tol = 1e-12);

/// Compactification of a tangent ray at a rank-1 Hermitian point:
///   f(p, tA) = (p + tA + t^2 A p A) / (1 + t^2 Tr(p A^2)),
/// an exactly idempotent Hermitian rank-1 curve with f(0) = p and
/// f'(0) = A. For |t| >= 1e6 the limit A p A / Tr(p A^2) is returned
/// instead: the curve approaches it only at rate 1/(t Tr(pA^2)), so the
/// direct formula cannot reach the limit to high precision at finite t.
HermitianPoint tangent_compactify(const HermitianPoint& pt, const Matrix& a, double t);

/// The limit point A p A / Tr(p A^2) of the tangent ray; invariant under
/// A |-> (x + yJ)A and orthogonal to p.
HermitianPoint tangent_compactify_limit(const HermitianPoint& pt, const Matrix& a);

/// Section kernel between fibers: a vertical vector A at `from` maps to
///   A S(from, to) = to.q A - to.q A to.q,
/// vertical at `to`. S(q, q) is the identity on the fiber at q.
Matrix section_kernel(const ProjectionPoint& from, const ProjectionPoint& to,
                      const Matrix& fiber);

/// Vertical projection psi(M) = qM - qMq. As an operator on traceless
/// matrices it is idempotent with rank n(d - n) (the fiber dimension).
Matrix psi(const ProjectionPoint& pt, const Matrix& m);

/// Matrix of psi acting on the standard traceless basis, a complex
/// (d^2 - 1) x (d^2 - 1) matrix; used to inspect rank and idempotency of
/// the operator itself.
Matrix psi_operator_traceless(const ProjectionPoint& pt);

/// The compatible complex structure pulled back through the
/// compactification: solves the chart system
///   dcomp(JHat A) = pair_structure(dcomp(A))
/// for JHat A. Squares to -1 and commutes with J everywhere; does not
/// commute with I (the horizontal subspace is not I-invariant).
Matrix jhat(const ProjectionPoint& pt, const Matrix& a);

/// The pair-chart complex structure on tangents of the double
/// Grassmannian at (p1, p2):
///   (A1, A2) |-> (J1 A1, -J2 A2 + J2 A1 - J2 J2 J1 A1),
/// with Jx(A) = i[A, px]. Squares to -1 on arbitrary pair tangents.
std::pair<Matrix, Matrix> pair_structure(const PairPoint& pair, const Matrix& a1,
                                         const Matrix& a2);

}  // namespace idemgeo
