#include "idemgeo/serialize.hpp"

#include <fstream>
#include <stdexcept>

#include "idemgeo/variety.hpp"

namespace idemgeo {

nlohmann::json matrix_to_json(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("matrix_to_json: only square matrices are serialized");
  }
  const int d = static_cast<int>(m.rows());
  nlohmann::json entries = nlohmann::json::array();
  for (int i = 0; i < d; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < d; ++j) {
      row.push_back({m(i, j).real(), m(i, j).imag()});
    }
    entries.push_back(std::move(row));
  }
  return {{"dim", d}, {"entries", std::move(entries)}};
}

Matrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("entries")) {
    throw std::runtime_error("matrix_from_json: expected object with 'dim' and 'entries'");
  }
  if (!j["dim"].is_number_integer()) {
    throw std::runtime_error("matrix_from_json: 'dim' must be an integer");
  }
  const int d = j["dim"].get<int>();
  if (d <= 0) throw std::runtime_error("matrix_from_json: 'dim' must be positive");
  const auto& entries = j["entries"];
  if (!entries.is_array() || static_cast<int>(entries.size()) != d) {
    throw std::runtime_error("matrix_from_json: 'entries' must be an array of dim rows");
  }
  Matrix m(d, d);
  for (int i = 0; i < d; ++i) {
    const auto& row = entries[i];
    if (!row.is_array() || static_cast<int>(row.size()) != d) {
      throw std::runtime_error("matrix_from_json: each row must have dim entries");
    }
    for (int jcol = 0; jcol < d; ++jcol) {
      const auto& e = row[jcol];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw std::runtime_error("matrix_from_json: entries must be [re, im] number pairs");
      }
      m(i, jcol) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

nlohmann::json point_to_json(const ProjectionPoint& pt) {
  return {{"kind", "projection_point"}, {"rank", pt.rank}, {"matrix", matrix_to_json(pt.q)}};
}

ProjectionPoint point_from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.value("kind", "") != "projection_point") {
    throw std::runtime_error("point_from_json: expected kind 'projection_point'");
  }
  if (!j.contains("rank") || !j["rank"].is_number_integer()) {
    throw std::runtime_error("point_from_json: missing integer 'rank'");
  }
  ProjectionPoint pt{matrix_from_json(j.at("matrix")), j["rank"].get<int>()};
  if (pt.rank <= 0 || pt.rank >= pt.dim()) {
    throw std::runtime_error("point_from_json: rank must satisfy 0 < rank < dim");
  }
  return pt;
}

nlohmann::json tangent_to_json(const TangentVector& v) {
  return {{"kind", "tangent_vector"},
          {"base", point_to_json(v.base)},
          {"matrix", matrix_to_json(v.a)}};
}

TangentVector tangent_from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.value("kind", "") != "tangent_vector") {
    throw std::runtime_error("tangent_from_json: expected kind 'tangent_vector'");
  }
  TangentVector v{point_from_json(j.at("base")), matrix_from_json(j.at("matrix"))};
  if (v.a.rows() != v.base.q.rows()) {
    throw std::runtime_error("tangent_from_json: tangent/base dimension mismatch");
  }
  return v;
}

void save_json(const nlohmann::json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_json: cannot open " + path);
  out << j.dump(2) << "\n";
  if (!out) throw std::runtime_error("save_json: write failed for " + path);
}

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_json: cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("load_json: parse error in " + path + ": " + e.what());
  }
  return j;
}

}  // namespace idemgeo
