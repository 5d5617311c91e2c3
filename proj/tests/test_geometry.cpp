#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "idemgeo/geometry.hpp"
#include "idemgeo/rng.hpp"
#include "idemgeo/variety.hpp"

using namespace idemgeo;

TEST_CASE("pointwise complex structures square correctly") {
  Rng rng(41);
  const ProjectionPoint q = random_point(3, 1, 1.0, rng);
  const Matrix a = random_tangent(q, rng).a;
  const Matrix jja = apply_structure(ComplexStructure::J, q,
                                     apply_structure(ComplexStructure::J, q, a));
  CHECK((jja + a).norm() < 1e-12 * (1.0 + a.norm()));
  const Matrix kka = apply_structure(ComplexStructure::K, q,
                                     apply_structure(ComplexStructure::K, q, a));
  CHECK((kka - a).norm() < 1e-12 * (1.0 + a.norm()));
  CHECK((apply_structure(ComplexStructure::I, q, a) - Complex(0, 1) * a).norm() == 0.0);
}

TEST_CASE("omega is antisymmetric and scales bilinearly") {
  Rng rng(42);
  const ProjectionPoint q = random_point(3, 1, 1.0, rng);
  const Matrix a = random_tangent(q, rng).a;
  const Matrix b = random_tangent(q, rng).a;
  CHECK(std::abs(omega(q, a, b) + omega(q, b, a)) < 1e-13);
  CHECK(std::abs(omega(q, 2.0 * a, b) - 2.0 * omega(q, a, b)) < 1e-13);
}

TEST_CASE("hermitian_form has conjugate symmetry and tau is positive") {
  Rng rng(43);
  const ProjectionPoint q = random_point(2, 1, 1.0, rng);
  const Matrix a = random_tangent(q, rng).a;
  const Matrix b = random_tangent(q, rng).a;
  const Complex hab = hermitian_form(q, a, b, 1.0);
  const Complex hba = hermitian_form(q, b, a, 1.0);
  CHECK(std::abs(hab - std::conj(hba)) < 1e-13);
  CHECK(tau(q) > 0.0);
}

TEST_CASE("metric calibration pins the unit scale") {
  CHECK(std::abs(metric_scale() - 1.0) < 1e-10);
  CHECK(metric_scale_spread() < 1e-10);
}

TEST_CASE("real_tangent_basis is orthonormal with the expected count") {
  Rng rng(44);
  const ProjectionPoint q = random_point(2, 1, 1.0, rng);
  const std::vector<Matrix> basis = real_tangent_basis(q);
  CHECK(basis.size() == 4);  // real dimension 2 * 2 * n(d-n)
  for (size_t i = 0; i < basis.size(); ++i) {
    for (size_t j = 0; j < basis.size(); ++j) {
      const double expected = (i == j) ? 1.0 : 0.0;
      CHECK(std::abs(hs_inner(basis[i], basis[j]).real() - expected) < 1e-10);
    }
  }
  const HermitianPoint p = random_hermitian_point(3, 1, rng);
  CHECK(hermitian_tangent_basis(p).size() == 4);  // real dimension 2 n(d-n)
}

TEST_CASE("quadric chart and embedding invert each other") {
  Rng rng(45);
  const ProjectionPoint q = random_point(2, 1, 1.0, rng);
  const QuadricCoords c = quadric_coords(q);
  CHECK(std::abs(c.x * c.y - c.z + c.z * c.z) < 1e-12);
  CHECK((quadric_point(c).q - q.q).norm() < 1e-12);
  const QuadricCoords c2 = quadric_from_embedding(embed_quadric(c));
  CHECK(std::abs(c2.x - c.x) + std::abs(c2.y - c.y) + std::abs(c2.z - c.z) < 1e-12);
}

TEST_CASE("quadric_point validates membership") {
  QuadricCoords off{Complex(1.0, 0.0), Complex(1.0, 0.0), Complex(0.0, 0.0)};
  CHECK_THROWS_AS(quadric_point(off), std::invalid_argument);
}

TEST_CASE("quadric_coords requires d = 2") {
  Rng rng(46);
  const ProjectionPoint q = random_point(3, 1, 1.0, rng);
  CHECK_THROWS_AS(quadric_coords(q), std::invalid_argument);
}

TEST_CASE("involutions square to the identity and are antiholomorphic") {
  Rng rng(47);
  for (const Involution inv :
       {Involution::Sphere, Involution::Disk, Involution::Cylinder}) {
    const ProjectionPoint q = random_point(2, 1, 1.0, rng);
    const ProjectionPoint s = apply_involution(inv, q);
    CHECK((apply_involution(inv, s).q - q.q).norm() < 1e-13);
    const Matrix a = random_tangent(q, rng).a;
    const Matrix lhs = involution_differential(inv, Complex(0, 1) * a);
    const Matrix rhs = -Complex(0, 1) * involution_differential(inv, a);
    CHECK((lhs - rhs).norm() < 1e-14);
  }
}

TEST_CASE("fixed-point samplers land on the fixed locus") {
  Rng rng(48);
  for (const Involution inv :
       {Involution::Sphere, Involution::Disk, Involution::Cylinder}) {
    const ProjectionPoint q = random_fixed_point(inv, rng);
    CHECK(validate_point(q.q, 1).idempotency_residual < 1e-10);
    CHECK((apply_involution(inv, q).q - q.q).norm() < 1e-10);
  }
}

TEST_CASE("eguchi_hanson_potential matches tau at the north pole") {
  Matrix north = Matrix::Zero(2, 2);
  north(0, 0) = 1.0;
  const ProjectionPoint q{north, 1};
  const EmbeddedCoords v = embed_quadric(quadric_coords(q));
  CHECK(eguchi_hanson_potential(v) == doctest::Approx(tau(q)));
}
