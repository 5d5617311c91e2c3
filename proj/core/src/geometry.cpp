#include "idemgeo/geometry.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

#include "idemgeo/bundle.hpp"

namespace idemgeo {

namespace {

Matrix j_rotation(const Matrix& q, const Matrix& a) {
  return Complex(0.0, 1.0) * commutator(a, q);
}

Matrix jbold_apply(const ProjectionPoint& pt, const Matrix& a) {
  const Matrix qs = pt.q.adjoint();
  const double nq = pt.q.norm();
  const Complex i(0.0, 1.0);
  // Conjugate-linear: A enters only through A*.
  return (i / nq) * commutator(pt.q, a.adjoint()) -
         (i / (2.0 * nq * nq * nq)) * (a.adjoint() * pt.q).trace() * commutator(pt.q, qs);
}

struct Calibration {
  double scale = 0.0;
  double spread = 0.0;
};

// Calibration of the metric scale against the pairing
// g(JBold A, B) = Re Omega(A, B) on fixed-seed rank-1 samples.
Calibration calibrate_metric() {
  Rng rng(0x1de3'9e0c'a11bull);
  double sum = 0.0, sumsq = 0.0;
  int count = 0;
  for (int k = 0; k < 64; ++k) {
    const int d = 2 + (k % 2);
    const ProjectionPoint q = random_point(d, 1, 1.0, rng);
    const Matrix a = random_tangent(q, rng).a;
    const Matrix b = random_tangent(q, rng).a;
    const double denom = metric_family(q, jbold_apply(q, a), b, 1.0);
    if (std::abs(denom) < 1e-8) continue;
    const double r = omega(q, a, b).real() / denom;
    sum += r;
    sumsq += r * r;
    ++count;
  }
  Calibration c;
  c.scale = sum / count;
  c.spread = std::sqrt(std::max(0.0, sumsq / count - c.scale * c.scale));
  return c;
}

const Calibration& metric_calibration() {
  static const Calibration c = calibrate_metric();
  return c;
}

}  // namespace

Matrix apply_structure(ComplexStructure s, const ProjectionPoint& pt, const Matrix& a) {
  switch (s) {
    case ComplexStructure::I:
      return Complex(0.0, 1.0) * a;
    case ComplexStructure::J:
      return j_rotation(pt.q, a);
    case ComplexStructure::K:
      return commutator(pt.q, a);
    case ComplexStructure::JHat:
      return jhat(pt, a);
    case ComplexStructure::JBold:
      return jbold_apply(pt, a);
  }
  throw std::invalid_argument("apply_structure: unknown structure");
}

Complex omega(const ProjectionPoint& pt, const Matrix& a, const Matrix& b) {
  return Complex(0.0, 1.0) * (pt.q * commutator(a, b)).trace();
}

double tau(const ProjectionPoint& pt) { return pt.q.norm(); }

Complex hermitian_form(const ProjectionPoint& pt, const Matrix& a, const Matrix& b,
                       double scale) {
  const double nq = pt.q.norm();
  const Complex t1 = hs_inner(a, b) / nq;
  const Complex t2 = hs_inner(a, pt.q) * hs_inner(pt.q, b) / (2.0 * nq * nq * nq);
  return scale * (t1 - t2);
}

double metric_family(const ProjectionPoint& pt, const Matrix& a, const Matrix& b,
                     double scale) {
  return hermitian_form(pt, a, b, scale).real();
}

double metric_g(const ProjectionPoint& pt, const Matrix& a, const Matrix& b) {
  return metric_family(pt, a, b, metric_scale());
}

double metric_scale() { return metric_calibration().scale; }

double metric_scale_spread() { return metric_calibration().spread; }

double kahler_2form(const ProjectionPoint& pt, const Matrix& a, const Matrix& b) {
  return -2.0 * hermitian_form(pt, a, b, 1.0).imag();
}

Complex flow_derivative(const std::function<Complex(const ProjectionPoint&)>& f,
                        const ProjectionPoint& pt, const Matrix& tangent,
                        const FdOptions& opt) {
  const Matrix m = commutator(pt.q, tangent);
  const double h = opt.step / (1.0 + m.norm());
  const auto at = [&](double t) {
    return f(ProjectionPoint{conj_flow(pt.q, m, t), pt.rank});
  };
  const Complex d1 = (at(h) - at(-h)) / (2.0 * h);
  const Complex d2 = (at(h / 2.0) - at(-h / 2.0)) / h;
  return (4.0 * d2 - d1) / 3.0;
}

Complex exterior_derivative(const DifferentialForm& form, const ProjectionPoint& pt,
                            const std::vector<Matrix>& tangents, const FdOptions& opt) {
  if (static_cast<int>(tangents.size()) != form.degree + 1) {
    throw std::invalid_argument("exterior_derivative: need degree+1 tangent vectors");
  }
  std::vector<Matrix> flows;
  flows.reserve(tangents.size());
  for (const Matrix& t : tangents) flows.push_back(commutator(pt.q, t));

  Complex total(0.0, 0.0);
  double sign = 1.0;
  for (std::size_t i = 0; i < tangents.size(); ++i) {
    const auto at = [&](double t) {
      const ProjectionPoint moved{conj_flow(pt.q, flows[i], t), pt.rank};
      std::vector<Matrix> args;
      args.reserve(tangents.size() - 1);
      for (std::size_t j = 0; j < tangents.size(); ++j) {
        if (j == i) continue;
        args.push_back(commutator(moved.q, flows[j]));
      }
      return form.eval(moved, args);
    };
    const double h = opt.step / (1.0 + flows[i].norm());
    const Complex d1 = (at(h) - at(-h)) / (2.0 * h);
    const Complex d2 = (at(h / 2.0) - at(-h / 2.0)) / h;
    total += sign * (4.0 * d2 - d1) / 3.0;
    sign = -sign;
  }
  return total;
}

std::vector<Matrix> real_tangent_basis(const ProjectionPoint& pt) {
  const int d = pt.dim();
  std::vector<Matrix> basis;
  basis.reserve(4 * pt.rank * (d - pt.rank));
  for (int k = 0; k < d; ++k) {
    for (int l = 0; l < d; ++l) {
      for (const Complex z : {Complex(1.0, 0.0), Complex(0.0, 1.0)}) {
        Matrix e = Matrix::Zero(d, d);
        e(k, l) = z;
        Matrix v = tangent_project(pt.q, e);
        // Modified Gram-Schmidt over R, run twice for orthogonality.
        for (int pass = 0; pass < 2; ++pass) {
          for (const Matrix& c : basis) v -= hs_inner(c, v).real() * c;
        }
        const double nv = v.norm();
        if (nv > 1e-8) basis.push_back(v / nv);
      }
    }
  }
  return basis;
}

std::vector<Matrix> hermitian_tangent_basis(const HermitianPoint& pt) {
  const int d = pt.dim();
  std::vector<Matrix> gens;
  for (int k = 0; k < d; ++k) {
    for (int l = k; l < d; ++l) {
      Matrix e = Matrix::Zero(d, d);
      if (k == l) {
        e(k, k) = 1.0;
        gens.push_back(e);
      } else {
        e(k, l) = 1.0;
        e(l, k) = 1.0;
        gens.push_back(e);
        Matrix f = Matrix::Zero(d, d);
        f(k, l) = Complex(0.0, 1.0);
        f(l, k) = Complex(0.0, -1.0);
        gens.push_back(f);
      }
    }
  }
  std::vector<Matrix> basis;
  basis.reserve(2 * pt.rank * (d - pt.rank));
  for (const Matrix& g : gens) {
    Matrix v = tangent_project(pt.p, g);
    for (int pass = 0; pass < 2; ++pass) {
      for (const Matrix& c : basis) v -= hs_inner(c, v).real() * c;
    }
    const double nv = v.norm();
    if (nv > 1e-8) basis.push_back(v / nv);
  }
  return basis;
}

// ---------------------------------------------------------------------------
// d = 2 model.

namespace {

void require_dim2(const ProjectionPoint& pt, const char* who) {
  if (pt.dim() != 2 || pt.rank != 1) {
    throw std::invalid_argument(std::string(who) + ": requires dim 2, rank 1");
  }
}

}  // namespace

QuadricCoords quadric_coords(const ProjectionPoint& pt) {
  require_dim2(pt, "quadric_coords");
  return {pt.q(1, 0), pt.q(0, 1), pt.q(0, 0)};
}

ProjectionPoint quadric_point(const QuadricCoords& c) {
  if (std::abs(c.x * c.y - c.z + c.z * c.z) > 1e-9) {
    throw std::invalid_argument("quadric_point: xy - z + z^2 = 0 violated");
  }
  Matrix q(2, 2);
  q(0, 0) = c.z;
  q(0, 1) = c.y;
  q(1, 0) = c.x;
  q(1, 1) = 1.0 - c.z;
  return {q, 1};
}

EmbeddedCoords embed_quadric(const QuadricCoords& c) {
  const Complex i(0.0, 1.0);
  return {i * (c.x - c.y), c.x + c.y, 1.0 - 2.0 * c.z};
}

QuadricCoords quadric_from_embedding(const EmbeddedCoords& v) {
  const Complex i(0.0, 1.0);
  return {(v[1] - i * v[0]) / 2.0, (v[1] + i * v[0]) / 2.0, (1.0 - v[2]) / 2.0};
}

EmbeddedCoords embed_tangent(const Matrix& a) {
  if (a.rows() != 2 || a.cols() != 2) {
    throw std::invalid_argument("embed_tangent: requires a 2x2 matrix");
  }
  const Complex i(0.0, 1.0);
  return {i * (a(1, 0) - a(0, 1)), a(1, 0) + a(0, 1), -2.0 * a(0, 0)};
}

EmbeddedCoords cross_product_j(const EmbeddedCoords& base, const EmbeddedCoords& tangent) {
  // Oriented as tangent x base; the opposite order flips the sign of J.
  return {tangent[1] * base[2] - tangent[2] * base[1],
          tangent[2] * base[0] - tangent[0] * base[2],
          tangent[0] * base[1] - tangent[1] * base[0]};
}

ProjectionPoint apply_involution(Involution s, const ProjectionPoint& pt) {
  require_dim2(pt, "apply_involution");
  switch (s) {
    case Involution::Sphere:
      return {pt.q.adjoint(), pt.rank};
    case Involution::Disk: {
      Matrix n = Matrix::Zero(2, 2);
      n(0, 0) = 1.0;
      n(1, 1) = -1.0;
      return {n * pt.q.adjoint() * n, pt.rank};
    }
    case Involution::Cylinder:
      return {pt.q.conjugate(), pt.rank};
  }
  throw std::invalid_argument("apply_involution: unknown involution");
}

Matrix involution_differential(Involution s, const Matrix& a) {
  switch (s) {
    case Involution::Sphere:
      return a.adjoint();
    case Involution::Disk: {
      Matrix n = Matrix::Zero(2, 2);
      n(0, 0) = 1.0;
      n(1, 1) = -1.0;
      return n * a.adjoint() * n;
    }
    case Involution::Cylinder:
      return a.conjugate();
  }
  throw std::invalid_argument("involution_differential: unknown involution");
}

ProjectionPoint random_fixed_point(Involution s, Rng& rng) {
  switch (s) {
    case Involution::Sphere:
      // Fixed set = Hermitian points (the unit sphere of the model).
      return random_hermitian_point(2, 1, rng).as_point();
    case Involution::Disk: {
      // Fixed set: x = -conj(y), z real solving z^2 - z - |y|^2 = 0.
      const Complex y = rng.cgaussian();
      const double root = std::sqrt(1.0 + 4.0 * std::norm(y));
      const double z = (rng.uniform() < 0.5) ? (1.0 + root) / 2.0 : (1.0 - root) / 2.0;
      return quadric_point({-std::conj(y), y, z});
    }
    case Involution::Cylinder: {
      // Fixed set: real entries with xy = z - z^2.
      double x = 0.0;
      do {
        x = rng.gaussian();
      } while (std::abs(x) < 1e-3);
      const double z = rng.gaussian();
      return quadric_point({x, (z - z * z) / x, z});
    }
  }
  throw std::invalid_argument("random_fixed_point: unknown involution");
}

double eguchi_hanson_potential(const EmbeddedCoords& v) {
  const double s = std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]);
  return std::sqrt((s + 1.0) / 2.0);
}

}  // namespace idemgeo
