#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "idemgeo/haar.hpp"
#include "idemgeo/rng.hpp"
#include "idemgeo/variety.hpp"

using namespace idemgeo;

TEST_CASE("schur_lambda_exact is 1/(d+1) for rank 1 and guarded otherwise") {
  CHECK(schur_lambda_exact(2, 1) == doctest::Approx(1.0 / 3.0));
  CHECK(schur_lambda_exact(3, 1) == doctest::Approx(0.25));
  CHECK_THROWS_AS(schur_lambda_exact(4, 2), std::invalid_argument);
}

TEST_CASE("integrate_matrix is deterministic in the seed") {
  const auto f = [](const HermitianPoint& p) { return Matrix(p.p); };
  const McMatrixEstimate a = integrate_matrix(f, 2, 1, 500, 99);
  const McMatrixEstimate b = integrate_matrix(f, 2, 1, 500, 99);
  CHECK((a.mean - b.mean).norm() == 0.0);
  const McMatrixEstimate c = integrate_matrix(f, 2, 1, 500, 100);
  CHECK((a.mean - c.mean).norm() > 0.0);
}

TEST_CASE("integrating a constant returns it with zero error") {
  const Matrix k = 3.0 * Matrix::Identity(2, 2);
  const auto f = [&k](const HermitianPoint&) { return k; };
  const McMatrixEstimate est = integrate_matrix(f, 2, 1, 200, 7);
  CHECK((est.mean - k).norm() < 1e-13);
  CHECK(est.stderr_hs < 1e-13);
}

TEST_CASE("the first moment approaches (n/d) I") {
  const auto f = [](const HermitianPoint& p) { return Matrix(p.p); };
  const McMatrixEstimate est = integrate_matrix(f, 2, 1, 20000, 12345);
  const Matrix expected = 0.5 * Matrix::Identity(2, 2);
  CHECK((est.mean - expected).norm() < 5.0 * est.stderr_hs);
}

TEST_CASE("schur_lambda estimates the exact constant within 5 sigma") {
  const McScalarEstimate est = schur_lambda(2, 1, 20000, 4242);
  CHECK(std::abs(est.mean - Complex(1.0 / 3.0, 0.0)) < 5.0 * est.stderr_abs);
  CHECK(est.stderr_abs > 0.0);
}

TEST_CASE("psi_left_inverse recovers a traceless matrix") {
  Rng rng(71);
  Matrix m = ginibre(2, rng);
  m -= (m.trace() / 2.0) * Matrix::Identity(2, 2);
  const LeftInverseCheck res = psi_left_inverse(m, 2, 20000, 777);
  CHECK(res.residual < 6.0 * res.stderr_hs);
  CHECK(res.lambda_used == doctest::Approx(1.0 / 3.0).epsilon(0.1));
}

TEST_CASE("psi_left_inverse rejects matrices with trace") {
  CHECK_THROWS_AS(psi_left_inverse(Matrix::Identity(2, 2), 2, 100, 1),
                  std::invalid_argument);
}

TEST_CASE("section_idempotency echoes lambda and converges") {
  Rng rng(72);
  const ProjectionPoint q = random_point(2, 1, 1.0, rng);
  const ProjectionPoint p = random_point(2, 1, 1.0, rng);
  const Matrix fib = q.q * ginibre(2, rng) * (Matrix::Identity(2, 2) - q.q);
  const IdempotencyCheck res = section_idempotency(q, p, fib, 20000, 99, 1.0 / 3.0);
  CHECK(res.lambda == doctest::Approx(1.0 / 3.0));
  CHECK(res.residual < 6.0 * res.stderr_hs);
}
