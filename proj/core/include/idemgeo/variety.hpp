#pragma once

#include <string>
#include <utility>

#include "idemgeo/linalg.hpp"
#include "idemgeo/rng.hpp"

namespace idemgeo {

/// A point of the variety {q : q^2 = q, Tr q = n}: a rank-n idempotent,
/// not necessarily Hermitian. The variety is identified with the total
/// space of the cotangent bundle of the Grassmannian of n-planes.
struct ProjectionPoint {
  Matrix q;
  int rank = 0;

  int dim() const { return static_cast<int>(q.rows()); }
};

/// A Hermitian point (q = q*): a point of the zero section, i.e. an
/// orthogonal projection. The Grassmannian sits inside the variety as
/// exactly these points.
struct HermitianPoint {
  Matrix p;
  int rank = 0;

  int dim() const { return static_cast<int>(p.rows()); }
  ProjectionPoint as_point() const { return {p, rank}; }
};

/// Tangent vector at a point: a matrix A with qA + Aq = A. Carries its
/// base point so that operations can reject mismatched pairs.
struct TangentVector {
  ProjectionPoint base;
  Matrix a;
};

/// Vertical (fiber) vector at a Hermitian point: pF = F, Fp = 0. These
/// are the cotangent directions along the affine fiber through p.
struct FiberVector {
  HermitianPoint base;
  Matrix f;
};

struct PointDiagnostics {
  double idempotency_residual = 0.0;  // |q^2 - q| / (1 + |q|^2)
  double trace_residual = 0.0;        // |Tr q - rank|
  int rank_estimate = 0;              // singular-value count
  bool ok = false;
  std::string message;
};

/// Validates membership in the variety to tolerance tol.
PointDiagnostics validate_point(const Matrix& q, int expected_rank, double tol = 1e-9);

/// Projection of an arbitrary matrix onto the tangent space at q:
///   P(M) = qM + Mq - 2qMq.
/// Satisfies P(P(M)) = P(M) and fixes every tangent vector.
Matrix tangent_project(const Matrix& q, const Matrix& m);

/// Whether qA + Aq = A holds to tolerance.
bool is_tangent_at(const Matrix& q, const Matrix& a, double tol = 1e-9);

/// Haar-uniform Hermitian point: U diag(1^n, 0) U* with U Haar unitary.
HermitianPoint random_hermitian_point(int dim, int rank, Rng& rng);

/// Random point of the variety: Haar base point displaced along the
/// fiber by p G (1-p) with G Ginibre, scaled by fiber_scale. There is
/// no invariant probability measure on the non-compact total space;
/// this is the natural unitarily-invariant family.
ProjectionPoint random_point(int dim, int rank, double fiber_scale, Rng& rng);

/// Random tangent vector: Ginibre matrix projected to the tangent space.
TangentVector random_tangent(const ProjectionPoint& pt, Rng& rng);

/// Random Hermitian tangent at a Hermitian point (projection of a
/// gaussian Hermitian matrix; the projection preserves Hermiticity
/// because p is Hermitian).
Matrix random_hermitian_tangent(const HermitianPoint& pt, Rng& rng);

/// Random fiber vector p G (1-p) at a Hermitian point.
FiberVector random_fiber(const HermitianPoint& pt, Rng& rng);

/// Leaf projection pi: the orthogonal projection onto range(q),
/// computed from the SVD of q. pi(q) is the unique Hermitian point on
/// the leaf of q, and pi restricted to the zero section is the identity.
HermitianPoint base_projection(const ProjectionPoint& pt);

/// Differential of the leaf projection. With M = [q, A] split into
/// skew-Hermitian part K and Hermitian part H, the range of q flows by
/// exp(-tM), and projecting the subspace motion gives
///   dpi(A) = [pi(q), K] - (H pi(q) + pi(q) H - 2 pi(q) H pi(q)).
/// Kills fiber directions and intertwines both i(.) and i[., q] with
/// the complex structure of the Grassmannian.
Matrix pushforward(const ProjectionPoint& pt, const Matrix& a);

/// Whether two points lie on the same leaf (equal ranges): qq' = q'
/// and q'q = q.
bool same_leaf(const ProjectionPoint& x, const ProjectionPoint& y, double tol = 1e-9);

/// Decomposition q = p + f with p = pi(q) and f vertical at p.
std::pair<HermitianPoint, FiberVector> fiber_decompose(const ProjectionPoint& pt);

/// Inverse of fiber_decompose; p + f is exactly idempotent whenever
/// f is vertical at p. Throws std::invalid_argument otherwise.
ProjectionPoint fiber_compose(const HermitianPoint& p, const FiberVector& f);

/// Scales the fiber offset: q |-> pi(q) + r (q - pi(q)).
ProjectionPoint fiber_scale(const ProjectionPoint& pt, double r);

/// Adds fiber offsets of two points on the same leaf. Throws
/// std::invalid_argument if the leaves differ.
ProjectionPoint fiber_add(const ProjectionPoint& x, const ProjectionPoint& y, double tol = 1e-9);

/// Metric isomorphism at a Hermitian point: tangent A |-> pA, landing
/// in the vertical space. Satisfies 2 Re Tr((pA)B) = Tr(AB) for
/// Hermitian tangents A, B (the factor 2 is exact, not conventional).
Matrix metric_iso(const HermitianPoint& pt, const Matrix& a);

}  // namespace idemgeo
