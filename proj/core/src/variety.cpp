#include "idemgeo/variety.hpp"

#include <cmath>
#include <stdexcept>

namespace idemgeo {

namespace {

void require_square(const Matrix& m, const char* who) {
  if (m.rows() != m.cols()) throw std::invalid_argument(std::string(who) + ": matrix must be square");
}

void require_same_dim(const Matrix& a, const Matrix& b, const char* who) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument(std::string(who) + ": dimension mismatch");
  }
}

}  // namespace

PointDiagnostics validate_point(const Matrix& q, int expected_rank, double tol) {
  PointDiagnostics d;
  if (q.rows() != q.cols()) {
    d.message = "matrix is not square";
    return d;
  }
  const int dim = static_cast<int>(q.rows());
  if (expected_rank <= 0 || expected_rank >= dim) {
    d.message = "rank must satisfy 0 < rank < dim";
    return d;
  }
  const double nq = q.norm();
  d.idempotency_residual = scaled_residual((q * q - q).norm(), nq * nq);
  d.trace_residual = std::abs(q.trace() - Complex(expected_rank, 0.0));

  Eigen::JacobiSVD<Matrix> svd(q);
  const auto& s = svd.singularValues();
  // An exact rank-n idempotent has n singular values >= 1 and d-n zeros,
  // so a fixed relative cut is unambiguous.
  const double cut = 1e-6 * (1.0 + s(0));
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > cut) ++r;
  d.rank_estimate = r;

  if (d.idempotency_residual > tol) {
    d.message = "idempotency residual above tolerance";
  } else if (d.trace_residual > tol * (1.0 + std::abs(static_cast<double>(expected_rank)))) {
    d.message = "trace does not match rank";
  } else if (d.rank_estimate != expected_rank) {
    d.message = "numerical rank does not match";
  } else {
    d.ok = true;
    d.message = "ok";
  }
  return d;
}

Matrix tangent_project(const Matrix& q, const Matrix& m) {
  require_square(q, "tangent_project");
  require_same_dim(q, m, "tangent_project");
  return q * m + m * q - 2.0 * (q * m * q);
}

bool is_tangent_at(const Matrix& q, const Matrix& a, double tol) {
  const double r = (q * a + a * q - a).norm();
  return scaled_residual(r, q.norm() * a.norm()) <= tol;
}

HermitianPoint random_hermitian_point(int dim, int rank, Rng& rng) {
  if (rank <= 0 || rank >= dim) {
    throw std::invalid_argument("random_hermitian_point: need 0 < rank < dim");
  }
  const Matrix u = haar_unitary(dim, rng);
  const Matrix block = u.leftCols(rank);
  return {block * block.adjoint(), rank};
}

ProjectionPoint random_point(int dim, int rank, double fiber_scale, Rng& rng) {
  const HermitianPoint base = random_hermitian_point(dim, rank, rng);
  const Matrix g = ginibre(dim, rng);
  const Matrix id = Matrix::Identity(dim, dim);
  const Matrix f = fiber_scale * (base.p * g * (id - base.p));
  return {base.p + f, rank};
}

TangentVector random_tangent(const ProjectionPoint& pt, Rng& rng) {
  return {pt, tangent_project(pt.q, ginibre(pt.dim(), rng))};
}

Matrix random_hermitian_tangent(const HermitianPoint& pt, Rng& rng) {
  return tangent_project(pt.p, gaussian_hermitian(pt.dim(), rng));
}

FiberVector random_fiber(const HermitianPoint& pt, Rng& rng) {
  const Matrix id = Matrix::Identity(pt.dim(), pt.dim());
  return {pt, pt.p * ginibre(pt.dim(), rng) * (id - pt.p)};
}

HermitianPoint base_projection(const ProjectionPoint& pt) {
  Eigen::JacobiSVD<Matrix> svd(pt.q, Eigen::ComputeThinU);
  const Matrix u = svd.matrixU().leftCols(pt.rank);
  return {u * u.adjoint(), pt.rank};
}

Matrix pushforward(const ProjectionPoint& pt, const Matrix& a) {
  require_same_dim(pt.q, a, "pushforward");
  const Matrix p = base_projection(pt).p;
  const Matrix m = commutator(pt.q, a);
  const Matrix k = 0.5 * (m - m.adjoint());
  const Matrix h = 0.5 * (m + m.adjoint());
  return commutator(p, k) - (h * p + p * h - 2.0 * (p * h * p));
}

bool same_leaf(const ProjectionPoint& x, const ProjectionPoint& y, double tol) {
  if (x.dim() != y.dim() || x.rank != y.rank) return false;
  const double r1 = scaled_residual((x.q * y.q - y.q).norm(), x.q.norm() * y.q.norm());
  const double r2 = scaled_residual((y.q * x.q - x.q).norm(), x.q.norm() * y.q.norm());
  return r1 <= tol && r2 <= tol;
}

std::pair<HermitianPoint, FiberVector> fiber_decompose(const ProjectionPoint& pt) {
  HermitianPoint p = base_projection(pt);
  // q - pi(q) is exactly vertical: p(q - p) = q - p and (q - p)p = 0
  // because p fixes range(q) pointwise and qp = p.
  Matrix f = pt.q - p.p;
  return {p, FiberVector{p, std::move(f)}};
}

ProjectionPoint fiber_compose(const HermitianPoint& p, const FiberVector& f) {
  require_same_dim(p.p, f.f, "fiber_compose");
  const double nf = f.f.norm();
  const double r1 = scaled_residual((p.p * f.f - f.f).norm(), p.p.norm() * nf);
  const double r2 = scaled_residual((f.f * p.p).norm(), p.p.norm() * nf);
  if (r1 > 1e-9 || r2 > 1e-9) {
    throw std::invalid_argument("fiber_compose: offset is not vertical at the base point");
  }
  return {p.p + f.f, p.rank};
}

ProjectionPoint fiber_scale(const ProjectionPoint& pt, double r) {
  const Matrix p = base_projection(pt).p;
  return {p + r * (pt.q - p), pt.rank};
}

ProjectionPoint fiber_add(const ProjectionPoint& x, const ProjectionPoint& y, double tol) {
  if (!same_leaf(x, y, tol)) {
    throw std::invalid_argument("fiber_add: points lie on different leaves");
  }
  const Matrix p = base_projection(x).p;
  return {p + (x.q - p) + (y.q - p), x.rank};
}

Matrix metric_iso(const HermitianPoint& pt, const Matrix& a) {
  require_same_dim(pt.p, a, "metric_iso");
  return pt.p * a;
}

}  // namespace idemgeo
