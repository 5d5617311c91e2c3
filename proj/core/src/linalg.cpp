#include "idemgeo/linalg.hpp"

#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace idemgeo {

Complex hs_inner(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("hs_inner: shape mismatch");
  }
  return (a.adjoint() * b).trace();
}

double hs_norm(const Matrix& a) { return a.norm(); }

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

Matrix anticommutator(const Matrix& a, const Matrix& b) { return a * b + b * a; }

double scaled_residual(double r, double scale) { return r / (1.0 + scale); }

double norm_product(std::initializer_list<const Matrix*> ms) {
  double p = 1.0;
  for (const Matrix* m : ms) p *= m->norm();
  return p;
}

Matrix conj_flow(const Matrix& p, const Matrix& n, double t) {
  if (p.rows() != p.cols() || n.rows() != n.cols() || p.rows() != n.rows()) {
    throw std::invalid_argument("conj_flow: matrices must be square and same size");
  }
  const Matrix e = (t * n).exp();
  const Matrix einv = (-t * n).exp();
  return einv * p * e;
}

double condition_number(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd(a);
  const auto& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

}  // namespace idemgeo
