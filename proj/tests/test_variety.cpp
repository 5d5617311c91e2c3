#include <stdexcept>

#include "doctest.h"
#include "idemgeo/rng.hpp"
#include "idemgeo/variety.hpp"

using namespace idemgeo;

TEST_CASE("random points satisfy the variety equations") {
  Rng rng(31);
  for (const auto& [d, n] : {std::pair{2, 1}, {4, 2}, {5, 3}}) {
    const ProjectionPoint q = random_point(d, n, 1.0, rng);
    const PointDiagnostics diag = validate_point(q.q, n);
    CHECK(diag.ok);
    CHECK(diag.idempotency_residual < 1e-12);
    CHECK(diag.rank_estimate == n);
  }
}

TEST_CASE("random hermitian points sit on the zero section") {
  Rng rng(32);
  const HermitianPoint p = random_hermitian_point(3, 2, rng);
  CHECK((p.p - p.p.adjoint()).norm() < 1e-14);
  CHECK(validate_point(p.p, 2).ok);
}

TEST_CASE("tangent projection produces tangents and is idempotent") {
  Rng rng(33);
  const ProjectionPoint q = random_point(3, 1, 1.0, rng);
  const Matrix m = ginibre(3, rng);
  const Matrix t = tangent_project(q.q, m);
  CHECK(is_tangent_at(q.q, t, 1e-12));
  CHECK((tangent_project(q.q, t) - t).norm() < 1e-12 * (1.0 + m.norm()));
  CHECK(is_tangent_at(q.q, random_tangent(q, rng).a, 1e-12));
}

TEST_CASE("base_projection is the identity on hermitian points") {
  Rng rng(34);
  const HermitianPoint p = random_hermitian_point(4, 2, rng);
  CHECK((base_projection(p.as_point()).p - p.p).norm() < 1e-13);
}

TEST_CASE("fiber decomposition splits q into base plus vertical part") {
  Rng rng(35);
  const ProjectionPoint q = random_point(3, 1, 1.0, rng);
  const auto [base, f] = fiber_decompose(q);
  CHECK((base.p + f.f - q.q).norm() < 1e-13);
  // Verticality: p f = f and f p = 0.
  CHECK((base.p * f.f - f.f).norm() < 1e-12);
  CHECK((f.f * base.p).norm() < 1e-12);
  const ProjectionPoint back = fiber_compose(base, f);
  CHECK((back.q - q.q).norm() < 1e-13);
}

TEST_CASE("fiber_compose rejects non-vertical offsets") {
  Rng rng(36);
  const HermitianPoint p = random_hermitian_point(3, 1, rng);
  FiberVector bad{p, ginibre(3, rng)};
  CHECK_THROWS_AS(fiber_compose(p, bad), std::invalid_argument);
}

TEST_CASE("same_leaf identifies points over the same base") {
  Rng rng(37);
  const ProjectionPoint q = random_point(3, 1, 1.0, rng);
  const ProjectionPoint scaled = fiber_scale(q, 2.5);
  CHECK(same_leaf(q, scaled));
  const ProjectionPoint other = random_point(3, 1, 1.0, rng);
  CHECK_FALSE(same_leaf(q, other));
}

TEST_CASE("pushforward solves its defining equation and kills fibers") {
  Rng rng(38);
  const ProjectionPoint q = random_point(4, 2, 1.0, rng);
  const Matrix p = base_projection(q).p;
  const Matrix a = random_tangent(q, rng).a;
  const Matrix x = pushforward(q, a);
  CHECK((q.q * x + a * p - x).norm() < 1e-11 * (1.0 + a.norm()));
  CHECK((x - x.adjoint()).norm() < 1e-11);
  const Matrix vert = p * ginibre(4, rng) * (Matrix::Identity(4, 4) - p);
  CHECK(pushforward(q, vert).norm() < 1e-11 * (1.0 + vert.norm()));
}

TEST_CASE("metric_iso compresses hermitian tangents by the base point") {
  Rng rng(39);
  const HermitianPoint p = random_hermitian_point(3, 1, rng);
  const Matrix a = random_hermitian_tangent(p, rng);
  CHECK((metric_iso(p, a) - p.p * a).norm() == 0.0);
}
