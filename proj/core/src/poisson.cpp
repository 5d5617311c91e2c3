#include "idemgeo/poisson.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace idemgeo {

namespace {

struct BracketCalibration {
  double orientation = 1.0;
  double scale = 1.0;
};

// Real-bracket machinery shared by poisson_bracket and the calibration.
struct BracketWorkspace {
  std::vector<Matrix> basis;
  Eigen::ColPivHouseholderQR<RealMatrix> pairing;  // factorization of W

  explicit BracketWorkspace(const ProjectionPoint& pt, const FdOptions& opt) {
    basis = real_tangent_basis(pt);
    const int m = static_cast<int>(basis.size());
    RealMatrix w = RealMatrix::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) {
        w(i, j) = canonical_symplectic(pt, basis[i], basis[j], opt);
        w(j, i) = -w(i, j);
      }
    }
    pairing.compute(w);
  }

  RealVector gradient(const std::function<double(const ProjectionPoint&)>& f,
                      const ProjectionPoint& pt, const FdOptions& opt) const {
    RealVector g(static_cast<int>(basis.size()));
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const auto lifted = [&](const ProjectionPoint& p) { return Complex(f(p), 0.0); };
      g(static_cast<int>(j)) = flow_derivative(lifted, pt, basis[j], opt).real();
    }
    return g;
  }

  double raw_bracket(const RealVector& df, const RealVector& dg) const {
    return df.dot(pairing.solve(dg));
  }
};

Complex assemble(const BracketWorkspace& ws, const Matrix& m, const Matrix& n,
                 const ProjectionPoint& pt, const FdOptions& opt) {
  const auto re_m = [&](const ProjectionPoint& p) { return hat_observable(m, p).real(); };
  const auto im_m = [&](const ProjectionPoint& p) { return hat_observable(m, p).imag(); };
  const auto re_n = [&](const ProjectionPoint& p) { return hat_observable(n, p).real(); };
  const auto im_n = [&](const ProjectionPoint& p) { return hat_observable(n, p).imag(); };
  const RealVector d_rm = ws.gradient(re_m, pt, opt);
  const RealVector d_im = ws.gradient(im_m, pt, opt);
  const RealVector d_rn = ws.gradient(re_n, pt, opt);
  const RealVector d_in = ws.gradient(im_n, pt, opt);
  // hat is complex-linear, so Im hat M = Re hat(-iM) and the bracket
  // extends complex-bilinearly from the four real pieces.
  const double rr = ws.raw_bracket(d_rm, d_rn);
  const double ii = ws.raw_bracket(d_im, d_in);
  const double ri = ws.raw_bracket(d_rm, d_in);
  const double ir = ws.raw_bracket(d_im, d_rn);
  return {rr - ii, ri + ir};
}

BracketCalibration calibrate_bracket() {
  Rng rng(0x9a15'50b0'cafeull);
  const FdOptions opt{};
  const ProjectionPoint pt = random_point(2, 1, 1.0, rng);
  const Matrix m = ginibre(2, rng);
  const Matrix n = ginibre(2, rng);
  const BracketWorkspace ws(pt, opt);
  const Complex raw = assemble(ws, m, n, pt, opt);
  const Complex expected = hat_observable(commutator(m, n), pt);

  BracketCalibration best;
  double best_err = std::numeric_limits<double>::infinity();
  for (const double orient : {1.0, -1.0}) {
    for (const double scale : {1.0, 0.5, 2.0}) {
      const double err = std::abs(orient * scale * raw - expected);
      if (err < best_err) {
        best_err = err;
        best = {orient, scale};
      }
    }
  }
  return best;
}

const BracketCalibration& bracket_calibration() {
  static const BracketCalibration c = calibrate_bracket();
  return c;
}

}  // namespace

Complex taut_form(const ProjectionPoint& pt, const Matrix& a) {
  return -(base_projection(pt).p * a).trace();
}

double canonical_symplectic(const ProjectionPoint& pt, const Matrix& a, const Matrix& b,
                            const FdOptions& opt) {
  DifferentialForm theta{1, [](const ProjectionPoint& p, const std::vector<Matrix>& args) {
                           return Complex(taut_form(p, args[0]).real(), 0.0);
                         }};
  return exterior_derivative(theta, pt, {a, b}, opt).real();
}

double canonical_symplectic_exact(const ProjectionPoint& pt, const Matrix& a, const Matrix& b) {
  const Matrix p = base_projection(pt).p;
  const Matrix na = commutator(pt.q, a);
  const Matrix nb = commutator(pt.q, b);
  const Complex term_a =
      -(pushforward(pt, a) * b).trace() - (p * commutator(a, nb)).trace();
  const Complex term_b =
      -(pushforward(pt, b) * a).trace() - (p * commutator(b, na)).trace();
  return (term_a - term_b).real();
}

Complex hat_observable(const Matrix& m, const ProjectionPoint& pt) {
  return ((pt.q - base_projection(pt).p) * m).trace();
}

Complex hat_differential(const Matrix& m, const ProjectionPoint& pt, const Matrix& v) {
  return (v * m).trace() - (pushforward(pt, v) * m).trace();
}

Matrix vector_field(const Matrix& m, const ProjectionPoint& pt) {
  return commutator(pt.q, m);
}

Complex poisson_bracket(const Matrix& m, const Matrix& n, const ProjectionPoint& pt,
                        const FdOptions& opt) {
  const BracketWorkspace ws(pt, opt);
  const BracketCalibration& cal = bracket_calibration();
  return cal.orientation * cal.scale * assemble(ws, m, n, pt, opt);
}

double bracket_orientation() { return bracket_calibration().orientation; }

double bracket_scale() { return bracket_calibration().scale; }

Complex star_product(const Matrix& m, const Matrix& n, const ProjectionPoint& pt) {
  return hat_observable(m * n, pt);
}

int hat_kernel_dimension(int dim, int rank, int samples, Rng& rng) {
  if (samples < dim * dim) {
    throw std::invalid_argument("hat_kernel_dimension: need at least dim^2 samples");
  }
  // Row i is vec((q_i - pi(q_i))^T): hat M(q_i) = row_i . vec(M).
  Matrix rows(samples, dim * dim);
  for (int i = 0; i < samples; ++i) {
    const ProjectionPoint q = random_point(dim, rank, 1.0, rng);
    const Matrix diff = (q.q - base_projection(q).p).transpose();
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) rows(i, r * dim + c) = diff(r, c);
  }
  Eigen::JacobiSVD<Matrix> svd(rows);
  const auto& s = svd.singularValues();
  int rank_est = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > 1e-10 * (1.0 + s(0))) ++rank_est;
  return dim * dim - rank_est;
}

}  // namespace idemgeo
