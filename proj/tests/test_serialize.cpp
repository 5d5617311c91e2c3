#include <cstdio>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "idemgeo/rng.hpp"
#include "idemgeo/serialize.hpp"
#include "idemgeo/variety.hpp"

using namespace idemgeo;

TEST_CASE("matrix json roundtrip preserves every entry") {
  Rng rng(21);
  const Matrix m = ginibre(3, rng);
  const Matrix back = matrix_from_json(matrix_to_json(m));
  CHECK((m - back).norm() == 0.0);
}

TEST_CASE("matrix_from_json validates its input") {
  nlohmann::json bad = {{"dim", 2}, {"entries", {{{1.0, 0.0}}}}};
  CHECK_THROWS_AS(matrix_from_json(bad), std::runtime_error);
  CHECK_THROWS_AS(matrix_from_json(nlohmann::json::array()), std::runtime_error);
  nlohmann::json bad_pair = matrix_to_json(Matrix::Identity(2, 2));
  bad_pair["entries"][0][0] = {1.0};  // not a [re, im] pair
  CHECK_THROWS_AS(matrix_from_json(bad_pair), std::runtime_error);
}

TEST_CASE("point and tangent json carry kind tags") {
  Rng rng(22);
  const ProjectionPoint q = random_point(2, 1, 1.0, rng);
  const nlohmann::json jp = point_to_json(q);
  CHECK(jp.at("kind") == "projection_point");
  CHECK(jp.at("rank") == 1);
  const TangentVector v = random_tangent(q, rng);
  const nlohmann::json jv = tangent_to_json(v);
  CHECK(jv.at("kind") == "tangent_vector");
  CHECK((matrix_from_json(jv.at("matrix")) - v.a).norm() == 0.0);
}

TEST_CASE("save_json and load_json roundtrip through a file") {
  const std::string path = "serialize_roundtrip_test.json";
  Rng rng(23);
  const Matrix m = ginibre(2, rng);
  save_json(matrix_to_json(m), path);
  const Matrix back = matrix_from_json(load_json(path));
  CHECK((m - back).norm() == 0.0);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_json(path), std::runtime_error);
}
