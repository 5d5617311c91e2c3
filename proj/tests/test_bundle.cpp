#include <stdexcept>

#include "doctest.h"
#include "idemgeo/bundle.hpp"
#include "idemgeo/geometry.hpp"
#include "idemgeo/rng.hpp"
#include "idemgeo/variety.hpp"

using namespace idemgeo;

TEST_CASE("horizontal_lift is tangent and splits the pushforward") {
  Rng rng(51);
  const ProjectionPoint q = random_point(3, 1, 1.0, rng);
  const HermitianPoint p = base_projection(q);
  const Matrix ah = random_hermitian_tangent(p, rng);
  const Matrix lift = horizontal_lift(q, p, ah);
  CHECK(is_tangent_at(q.q, lift, 1e-11));
  CHECK((pushforward(q, lift) - ah).norm() < 1e-11 * (1.0 + ah.norm()));
}

TEST_CASE("curvature_f rejects a non-vertical argument") {
  Rng rng(52);
  const HermitianPoint p = random_hermitian_point(3, 1, rng);
  const Matrix a = random_hermitian_tangent(p, rng);
  const Matrix b = random_hermitian_tangent(p, rng);
  CHECK_THROWS_AS(curvature_f(p, a, b, ginibre(3, rng)), std::invalid_argument);
  const Matrix c = random_fiber(p, rng).f;
  const Matrix f = curvature_f(p, a, b, c);
  CHECK((p.p * f - f).norm() < 1e-11 * (1.0 + f.norm()));
}

TEST_CASE("compactify fixes the zero section diagonally") {
  Rng rng(53);
  const HermitianPoint p = random_hermitian_point(3, 2, rng);
  const PairPoint pair = compactify(p.as_point());
  CHECK((pair.first.p - p.p).norm() < 1e-12);
  CHECK((pair.second.p - p.p).norm() < 1e-12);
}

TEST_CASE("decompactify inverts compactify and rejects complementary pairs") {
  Rng rng(54);
  const ProjectionPoint q = random_point(3, 2, 1.0, rng);
  const ChartResult res = try_decompactify(compactify(q));
  REQUIRE(res.ok);
  CHECK((res.point.q - q.q).norm() < 1e-10 * (1.0 + q.q.norm()));

  const HermitianPoint p = random_hermitian_point(2, 1, rng);
  const PairPoint complementary{p, {Matrix(Matrix::Identity(2, 2) - p.p), 1}};
  CHECK_FALSE(try_decompactify(complementary).ok);
  CHECK_THROWS_AS(decompactify(complementary), std::domain_error);
}

TEST_CASE("rank1_image_test accepts generic pairs and needs rank 1") {
  Rng rng(55);
  const PairPoint generic{random_hermitian_point(3, 1, rng),
                          random_hermitian_point(3, 1, rng)};
  CHECK(rank1_image_test(generic));
  const PairPoint wrong_rank{random_hermitian_point(4, 2, rng),
                             random_hermitian_point(4, 2, rng)};
  CHECK_THROWS_AS(rank1_image_test(wrong_rank), std::invalid_argument);
}

TEST_CASE("tangent_compactify starts at p and reaches its limit") {
  Rng rng(56);
  const HermitianPoint p = random_hermitian_point(2, 1, rng);
  const Matrix a = random_hermitian_tangent(p, rng);
  CHECK((tangent_compactify(p, a, 0.0).p - p.p).norm() == 0.0);
  const HermitianPoint lim = tangent_compactify_limit(p, a);
  CHECK((tangent_compactify(p, a, 1e7).p - lim.p).norm() < 1e-9);
  CHECK((lim.p * p.p).norm() < 1e-13);
  CHECK(validate_point(lim.p, 1).ok);
}

TEST_CASE("section_kernel is the identity at equal points and maps fibers") {
  Rng rng(57);
  const ProjectionPoint q = random_point(3, 1, 1.0, rng);
  const Matrix fib = q.q * ginibre(3, rng) * (Matrix::Identity(3, 3) - q.q);
  CHECK((section_kernel(q, q, fib) - fib).norm() < 1e-11 * (1.0 + fib.norm()));
  CHECK_THROWS_AS(section_kernel(q, q, ginibre(3, rng)), std::invalid_argument);
}

TEST_CASE("psi_operator_traceless is an idempotent matrix of the right size") {
  Rng rng(58);
  const ProjectionPoint q = random_point(3, 1, 1.0, rng);
  const Matrix op = psi_operator_traceless(q);
  CHECK(op.rows() == 8);  // traceless subspace of 3 x 3 matrices
  CHECK((op * op - op).norm() < 1e-10 * (1.0 + op.norm()));
}

TEST_CASE("jhat reduces to J on horizontal directions of the zero section") {
  Rng rng(59);
  const HermitianPoint p = random_hermitian_point(2, 1, rng);
  const ProjectionPoint pt = p.as_point();
  const Matrix ah = random_hermitian_tangent(p, rng);
  const Matrix expected = apply_structure(ComplexStructure::J, pt, ah);
  CHECK((jhat(pt, ah) - expected).norm() < 1e-10 * (1.0 + ah.norm()));
  const Matrix f = random_fiber(p, rng).f;
  CHECK((jhat(pt, f) - Complex(0, 1) * f).norm() < 1e-10 * (1.0 + f.norm()));
}
