#include <cmath>

#include "doctest.h"
#include "idemgeo/poisson.hpp"
#include "idemgeo/rng.hpp"
#include "idemgeo/variety.hpp"

using namespace idemgeo;

TEST_CASE("taut_form pairs tangents against the base projection") {
  Rng rng(61);
  const ProjectionPoint q = random_point(3, 1, 1.0, rng);
  const Matrix a = random_tangent(q, rng).a;
  const Complex expected = -(base_projection(q).p * a).trace();
  CHECK(std::abs(taut_form(q, a) - expected) < 1e-13);
}

TEST_CASE("hat observables vanish on the zero section") {
  Rng rng(62);
  const HermitianPoint p = random_hermitian_point(3, 2, rng);
  const Matrix m = ginibre(3, rng);
  CHECK(std::abs(hat_observable(m, p.as_point())) < 1e-13);
}

TEST_CASE("vector_field is the commutator flow generator") {
  Rng rng(63);
  const ProjectionPoint q = random_point(2, 1, 1.0, rng);
  const Matrix m = ginibre(2, rng);
  CHECK((vector_field(m, q) - (q.q * m - m * q.q)).norm() == 0.0);
}

TEST_CASE("bracket calibration pins orientation +1 and scale 1/2") {
  CHECK(bracket_orientation() == doctest::Approx(1.0));
  CHECK(bracket_scale() == doctest::Approx(0.5));
}

TEST_CASE("poisson_bracket is antisymmetric") {
  Rng rng(64);
  const ProjectionPoint q = random_point(2, 1, 1.0, rng);
  const Matrix m = ginibre(2, rng);
  const Matrix n = ginibre(2, rng);
  const Complex mn = poisson_bracket(m, n, q);
  const Complex nm = poisson_bracket(n, m, q);
  CHECK(std::abs(mn + nm) < 1e-7 * (1.0 + m.norm() * n.norm()));
}

TEST_CASE("star_product realizes hat of the matrix product") {
  Rng rng(65);
  const ProjectionPoint q = random_point(2, 1, 1.0, rng);
  const Matrix m = ginibre(2, rng);
  const Matrix n = ginibre(2, rng);
  CHECK(std::abs(star_product(m, n, q) - hat_observable(m * n, q)) < 1e-14);
}

TEST_CASE("the hat map has a one-dimensional kernel at d = 2") {
  Rng rng(66);
  CHECK(hat_kernel_dimension(2, 1, 60, rng) == 1);
}

TEST_CASE("exact and engine symplectic forms agree") {
  Rng rng(67);
  const ProjectionPoint q = random_point(2, 1, 1.0, rng);
  const Matrix a = random_tangent(q, rng).a;
  const Matrix b = random_tangent(q, rng).a;
  const double engine = canonical_symplectic(q, a, b);
  const double exact = canonical_symplectic_exact(q, a, b);
  CHECK(std::abs(engine - exact) < 1e-8 * (1.0 + a.norm() * b.norm()));
}
