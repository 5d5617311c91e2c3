#include "idemgeo/bundle.hpp"

#include <cmath>
#include <stdexcept>

#include "idemgeo/geometry.hpp"

namespace idemgeo {

namespace {

Matrix jrot(const Matrix& base, const Matrix& a) {
  return Complex(0.0, 1.0) * commutator(a, base);
}

void require_vertical(const Matrix& q, const Matrix& f, const char* who) {
  const double scale = q.norm() * f.norm();
  if (scaled_residual((q * f - f).norm(), scale) > 1e-9 ||
      scaled_residual((f * q).norm(), scale) > 1e-9) {
    throw std::invalid_argument(std::string(who) + ": vector is not vertical at the point");
  }
}

}  // namespace

Matrix horizontal_lift(const ProjectionPoint& pt, const Matrix& base_tangent) {
  return horizontal_lift(pt, base_projection(pt), base_tangent);
}

Matrix horizontal_lift(const ProjectionPoint& pt, const HermitianPoint& base,
                       const Matrix& base_tangent) {
  return commutator(pt.q, commutator(base.p, base_tangent));
}

Matrix curvature_f(const HermitianPoint& base, const Matrix& a, const Matrix& b,
                   const Matrix& vertical) {
  require_vertical(base.p, vertical, "curvature_f");
  return commutator(vertical, commutator(a, b));
}

Matrix nabla_section(const HermitianPoint& base, const Matrix& vertical, const Matrix& b) {
  require_vertical(base.p, vertical, "nabla_section");
  return b + commutator(b, vertical);
}

PairPoint compactify(const ProjectionPoint& pt) {
  return {base_projection(pt), base_projection({pt.q.adjoint(), pt.rank})};
}

std::pair<Matrix, Matrix> compactify_differential(const ProjectionPoint& pt, const Matrix& a) {
  const ProjectionPoint star{pt.q.adjoint(), pt.rank};
  return {pushforward(pt, a), pushforward(star, a.adjoint())};
}

ChartResult try_decompactify(const PairPoint& pair, double max_condition) {
  const int d = pair.first.dim();
  const int n = pair.first.rank;
  if (pair.second.dim() != d || pair.second.rank != n) {
    throw std::invalid_argument("decompactify: pair legs disagree in dim or rank");
  }
  Eigen::JacobiSVD<Matrix> svd1(pair.first.p, Eigen::ComputeThinU);
  const Matrix v1 = svd1.matrixU().leftCols(n);
  const Matrix comp = Matrix::Identity(d, d) - pair.second.p;
  Eigen::JacobiSVD<Matrix> svd2(comp, Eigen::ComputeThinU);
  const Matrix w = svd2.matrixU().leftCols(d - n);

  Matrix chart(d, d);
  chart.leftCols(n) = v1;
  chart.rightCols(d - n) = w;

  ChartResult res;
  res.condition = condition_number(chart);
  if (!std::isfinite(res.condition) || res.condition > max_condition) {
    res.ok = false;
    return res;
  }
  Matrix ranged = Matrix::Zero(d, d);
  ranged.leftCols(n) = v1;
  res.point = {ranged * chart.inverse(), n};
  res.ok = true;
  return res;
}

ProjectionPoint decompactify(const PairPoint& pair, double max_condition) {
  ChartResult res = try_decompactify(pair, max_condition);
  if (!res.ok) {
    throw std::domain_error("decompactify: chart condition exceeds limit (pair near or at the degenerate locus)");
  }
  return std::move(res.point);
}

bool rank1_image_test(const PairPoint& pair, double tol) {
  if (pair.first.rank != 1 || pair.second.rank != 1) {
    throw std::invalid_argument("rank1_image_test: both legs must have rank 1");
  }
  return std::abs((pair.second.p * pair.first.p).trace()) > tol;
}

HermitianPoint tangent_compactify(const HermitianPoint& pt, const Matrix& a, double t) {
  if (pt.rank != 1) {
    throw std::invalid_argument("tangent_compactify: requires a rank-1 point");
  }
  // Past the switch the direct quotient is farther from the limit than
  // the limit's own accuracy, so return the limit exactly.
  if (std::abs(t) >= 1e6) return tangent_compactify_limit(pt, a);
  const Matrix b = t * a;
  const Complex denom = 1.0 + (pt.p * b * b).trace();
  Matrix num = pt.p + b + b * pt.p * b;
  return {num / denom, 1};
}

HermitianPoint tangent_compactify_limit(const HermitianPoint& pt, const Matrix& a) {
  if (pt.rank != 1) {
    throw std::invalid_argument("tangent_compactify_limit: requires a rank-1 point");
  }
  const Complex denom = (pt.p * a * a).trace();
  if (std::abs(denom) < 1e-14) {
    throw std::domain_error("tangent_compactify_limit: degenerate direction, Tr(p A^2) = 0");
  }
  return {(a * pt.p * a) / denom, 1};
}

Matrix section_kernel(const ProjectionPoint& from, const ProjectionPoint& to,
                      const Matrix& fiber) {
  require_vertical(from.q, fiber, "section_kernel");
  return to.q * fiber - to.q * fiber * to.q;
}

Matrix psi(const ProjectionPoint& pt, const Matrix& m) {
  return pt.q * m - pt.q * m * pt.q;
}

Matrix psi_operator_traceless(const ProjectionPoint& pt) {
  const int d = pt.dim();
  // Traceless basis: off-diagonal units, then diagonal differences.
  std::vector<Matrix> basis;
  basis.reserve(d * d - 1);
  for (int k = 0; k < d; ++k) {
    for (int l = 0; l < d; ++l) {
      if (k == l) continue;
      Matrix e = Matrix::Zero(d, d);
      e(k, l) = 1.0;
      basis.push_back(e);
    }
  }
  for (int k = 0; k + 1 < d; ++k) {
    Matrix e = Matrix::Zero(d, d);
    e(k, k) = 1.0;
    e(k + 1, k + 1) = -1.0;
    basis.push_back(e / std::sqrt(2.0));
  }
  const int m = static_cast<int>(basis.size());
  // Dual pairing via HS inner against the dual basis: the chosen basis
  // is not orthonormal (diagonal part), so solve the Gram system.
  Matrix gram(m, m), applied(m, m);
  for (int i = 0; i < m; ++i) {
    const Matrix pb = psi(pt, basis[i]);
    for (int j = 0; j < m; ++j) {
      gram(j, i) = hs_inner(basis[j], basis[i]);
      applied(j, i) = hs_inner(basis[j], pb);
    }
  }
  return gram.partialPivLu().solve(applied);
}

std::pair<Matrix, Matrix> pair_structure(const PairPoint& pair, const Matrix& a1,
                                         const Matrix& a2) {
  const Matrix& p1 = pair.first.p;
  const Matrix& p2 = pair.second.p;
  const Matrix b1 = jrot(p1, a1);
  const Matrix b2 = -jrot(p2, a2) + jrot(p2, a1) - jrot(p2, jrot(p2, b1));
  return {b1, b2};
}

Matrix jhat(const ProjectionPoint& pt, const Matrix& a) {
  const PairPoint pair = compactify(pt);
  const std::vector<Matrix> src = real_tangent_basis(pt);
  const std::vector<Matrix> t1 = hermitian_tangent_basis(pair.first);
  const std::vector<Matrix> t2 = hermitian_tangent_basis(pair.second);
  const int m = static_cast<int>(src.size());
  if (static_cast<int>(t1.size() + t2.size()) != m) {
    throw std::runtime_error("jhat: chart dimensions disagree (degenerate point?)");
  }

  const auto coords = [&](const Matrix& x1, const Matrix& x2) {
    RealVector v(m);
    int r = 0;
    for (const Matrix& c : t1) v(r++) = hs_inner(c, x1).real();
    for (const Matrix& c : t2) v(r++) = hs_inner(c, x2).real();
    return v;
  };

  RealMatrix chart(m, m);
  for (int j = 0; j < m; ++j) {
    const auto [x1, x2] = compactify_differential(pt, src[j]);
    chart.col(j) = coords(x1, x2);
  }

  const auto [a1, a2] = compactify_differential(pt, a);
  const auto [b1, b2] = pair_structure(pair, a1, a2);
  const RealVector x = chart.colPivHouseholderQr().solve(coords(b1, b2));

  Matrix out = Matrix::Zero(pt.dim(), pt.dim());
  for (int j = 0; j < m; ++j) out += x(j) * src[j];
  return out;
}

}  // namespace idemgeo
