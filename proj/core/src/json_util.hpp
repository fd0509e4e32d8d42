#pragma once

// Internal JSON helpers shared by the serialization surfaces. Not installed.

#include <nlohmann/json.hpp>

#include "hypomix/types.hpp"

namespace hypomix::detail {

inline nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json data = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      data.push_back({m(i, j).real(), m(i, j).imag()});
  return {{"dim", m.rows()}, {"data", std::move(data)}};
}

inline Matrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("data")) {
    throw InputError("dense operator JSON needs \"dim\" and \"data\"");
  }
  if (!j["dim"].is_number_integer()) {
    throw InputError("dense operator \"dim\" must be an integer");
  }
  const auto d = j["dim"].get<Eigen::Index>();
  const auto& data = j["data"];
  if (d < 1 || !data.is_array() ||
      data.size() != static_cast<std::size_t>(d * d)) {
    throw InputError("dense operator JSON has wrong entry count");
  }
  Matrix m(d, d);
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index jj = 0; jj < d; ++jj, ++k) {
      const auto& e = data[k];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() ||
          !e[1].is_number()) {
        throw InputError("dense operator entries must be [re, im] pairs");
      }
      m(i, jj) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

}  // namespace hypomix::detail
