#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "idemgeo/linalg.hpp"

namespace idemgeo {

struct ProjectionPoint;
struct TangentVector;

/// JSON encoding of a square complex matrix:
///   {"dim": d, "entries": [[[re, im], ...], ...]}
/// entries is row-major, each entry a [re, im] pair.
nlohmann::json matrix_to_json(const Matrix& m);

/// Inverse of matrix_to_json. Throws std::runtime_error on malformed
/// input (wrong shape, non-numeric entries, missing keys).
Matrix matrix_from_json(const nlohmann::json& j);

/// Point encoding: {"kind": "projection_point", "rank": n, "matrix": {...}}.
nlohmann::json point_to_json(const ProjectionPoint& pt);
ProjectionPoint point_from_json(const nlohmann::json& j);

/// Tangent encoding: {"kind": "tangent_vector", "base": {...}, "matrix": {...}}.
nlohmann::json tangent_to_json(const TangentVector& v);
TangentVector tangent_from_json(const nlohmann::json& j);

/// File helpers; throw std::runtime_error on IO failure.
void save_json(const nlohmann::json& j, const std::string& path);
nlohmann::json load_json(const std::string& path);

}  // namespace idemgeo
