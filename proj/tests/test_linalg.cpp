#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "idemgeo/linalg.hpp"
#include "idemgeo/rng.hpp"

using namespace idemgeo;

TEST_CASE("hs_inner matches the trace pairing") {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 1.0;
  Matrix b = Matrix::Zero(2, 2);
  b(0, 1) = Complex(0.0, 2.0);
  CHECK(hs_inner(a, b) == Complex(0.0, 0.0));
  CHECK(hs_inner(b, b) == Complex(4.0, 0.0));
  CHECK(hs_norm(b) == doctest::Approx(2.0));
  // Conjugate symmetry.
  Rng rng(7);
  const Matrix g1 = ginibre(3, rng);
  const Matrix g2 = ginibre(3, rng);
  CHECK(std::abs(hs_inner(g1, g2) - std::conj(hs_inner(g2, g1))) < 1e-14);
}

TEST_CASE("hs_inner rejects mismatched shapes") {
  CHECK_THROWS_AS(hs_inner(Matrix::Zero(2, 2), Matrix::Zero(3, 3)), std::invalid_argument);
}

TEST_CASE("commutator and anticommutator") {
  Rng rng(11);
  const Matrix a = ginibre(3, rng);
  const Matrix b = ginibre(3, rng);
  CHECK((commutator(a, b) + commutator(b, a)).norm() < 1e-14);
  CHECK((commutator(a, b) + anticommutator(a, b) - 2.0 * a * b).norm() < 1e-13);
}

TEST_CASE("scaled_residual normalizes by 1 + scale") {
  CHECK(scaled_residual(2.0, 1.0) == doctest::Approx(1.0));
  CHECK(scaled_residual(0.0, 123.0) == 0.0);
  CHECK(norm_product({}) == doctest::Approx(1.0));
}

TEST_CASE("conj_flow is the identity at t = 0 and has derivative [q, N]") {
  Rng rng(13);
  const Matrix q = ginibre(3, rng);
  const Matrix n = ginibre(3, rng);
  CHECK((conj_flow(q, n, 0.0) - q).norm() < 1e-15);
  const double h = 1e-6;
  const Matrix fd = (conj_flow(q, n, h) - conj_flow(q, n, -h)) / (2.0 * h);
  CHECK((fd - commutator(q, n)).norm() < 1e-8);
}

TEST_CASE("condition_number") {
  CHECK(condition_number(Matrix::Identity(3, 3)) == doctest::Approx(1.0));
  Matrix singular = Matrix::Zero(2, 2);
  singular(0, 0) = 1.0;
  CHECK(std::isinf(condition_number(singular)));
}

TEST_CASE("rng streams are deterministic and substreams differ") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.uniform() == b.uniform());
  Rng s0 = Rng::substream(42, 0);
  Rng s1 = Rng::substream(42, 1);
  bool differ = false;
  for (int i = 0; i < 8; ++i) differ = differ || (s0.uniform() != s1.uniform());
  CHECK(differ);
}

TEST_CASE("gaussian moments are sane") {
  Rng rng(1234);
  double sum = 0.0, sumsq = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double g = rng.gaussian();
    sum += g;
    sumsq += g * g;
  }
  CHECK(std::abs(sum / n) < 0.05);
  CHECK(std::abs(sumsq / n - 1.0) < 0.05);
}

TEST_CASE("ginibre is reproducible and haar_unitary is unitary") {
  Rng a(5), b(5);
  CHECK((ginibre(4, a) - ginibre(4, b)).norm() == 0.0);
  Rng rng(6);
  const Matrix u = haar_unitary(4, rng);
  CHECK((u.adjoint() * u - Matrix::Identity(4, 4)).norm() < 1e-13);
}
