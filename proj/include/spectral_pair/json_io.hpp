#ifndef SPECTRAL_PAIR_JSON_IO_HPP
#define SPECTRAL_PAIR_JSON_IO_HPP

// JSON interchange documents.
//
//   complex   [re, im]
//   pair      {"A": 3x3 complex, "B": 3x3 complex}
//   spectral  {"h": [3 complex],
//              "coefficients": {"d1", "d2", "p_plus", "p_minus", "q_plus",
//                               "q_minus", "r_plus", "r_minus", "t"},
//              "divisor": {"L", "M"}}
//   report    {"operation", "max_residual", "per_component", "status"}
//
// Doubles are written in shortest round-trip form, so load(save(x)) == x
// bit for bit.

#include <cmath>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "spectral_pair/group_action.hpp"
#include "spectral_pair/spectral_map.hpp"

namespace spair::io {

using nlohmann::json;

/// Malformed or invalid document.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw SchemaError(where + ": expected [re, im]");
  }
  const Complex z{j[0].get<double>(), j[1].get<double>()};
  if (!is_finite(z)) throw SchemaError(where + ": non-finite number");
  return z;
}

inline json to_json(const Mat3& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < 3; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < 3; ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Mat3 mat3_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) throw SchemaError(where + ": expected 3 rows");
  Mat3 m;
  for (std::size_t i = 0; i < 3; ++i) {
    if (!j[i].is_array() || j[i].size() != 3) throw SchemaError(where + ": expected 3 columns");
    for (std::size_t k = 0; k < 3; ++k) {
      m(i, k) = complex_from_json(j[i][k], where + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
    }
  }
  return m;
}

inline const json& member(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw SchemaError(where + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw SchemaError(where + ": missing key \"" + key + "\"");
  return *it;
}

inline json pair_to_json(const MatrixPair& p) { return {{"A", to_json(p.a)}, {"B", to_json(p.b)}}; }

inline MatrixPair pair_from_json(const json& j) {
  return {mat3_from_json(member(j, "A", "pair"), "A"), mat3_from_json(member(j, "B", "pair"), "B")};
}

inline json spectral_to_json(const SpectralData& sd) {
  json h = json::array();
  for (const auto& x : sd.h) h.push_back(to_json(x));
  json coeffs = json::object();
  const auto values = sd.coeffs.as_array();
  for (std::size_t i = 0; i < values.size(); ++i) coeffs[std::string(CurveCoefficients::names[i])] = to_json(values[i]);
  return {{"h", std::move(h)},
          {"coefficients", std::move(coeffs)},
          {"divisor", {{"L", to_json(sd.divisor.l)}, {"M", to_json(sd.divisor.m)}}}};
}

/// Parses without validating the spectral-data invariants.
inline SpectralData spectral_from_json_unchecked(const json& j) {
  SpectralData sd;
  const json& h = member(j, "h", "spectral");
  if (!h.is_array() || h.size() != 3) throw SchemaError("h: expected 3 complex numbers");
  for (std::size_t i = 0; i < 3; ++i) sd.h[i] = complex_from_json(h[i], "h[" + std::to_string(i) + "]");
  const json& c = member(j, "coefficients", "spectral");
  std::array<Complex, 9> values;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::string name(CurveCoefficients::names[i]);
    values[i] = complex_from_json(member(c, name.c_str(), "coefficients"), name);
  }
  sd.coeffs = CurveCoefficients::from_array(values);
  const json& d = member(j, "divisor", "spectral");
  sd.divisor = {complex_from_json(member(d, "L", "divisor"), "L"), complex_from_json(member(d, "M", "divisor"), "M")};
  return sd;
}

/// Parses and checks the symmetric-function and on-curve invariants; a
/// violation is reported as a SchemaError carrying the diagnostic.
inline SpectralData spectral_from_json(const json& j, const ToleranceConfig& tol = {}) {
  SpectralData sd = spectral_from_json_unchecked(j);
  try {
    check_spectral_data(sd, tol);
  } catch (const Error& e) {
    throw SchemaError(e.what());
  }
  return sd;
}

/// Report over one operation. Non-finite residuals are written as null.
inline json report_to_json(const std::string& operation, const SpectralResiduals& r, bool passed) {
  json per = json::object();
  for (const auto& [k, v] : r.per_component) per[k] = std::isfinite(v) ? json(v) : json(nullptr);
  return {{"operation", operation},
          {"max_residual", std::isfinite(r.max_residual) ? json(r.max_residual) : json(nullptr)},
          {"per_component", std::move(per)},
          {"status", passed ? "pass" : "fail"}};
}

inline GL2ZMatrix gl2z_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() || j[0].size() != 2 ||
      j[1].size() != 2) {
    throw SchemaError("matrix: expected [[a, b], [c, d]]");
  }
  for (const auto& row : j)
    for (const auto& x : row)
      if (!x.is_number_integer()) throw SchemaError("matrix: entries must be integers");
  return {j[0][0].get<std::int64_t>(), j[0][1].get<std::int64_t>(), j[1][0].get<std::int64_t>(),
          j[1][1].get<std::int64_t>()};
}

inline json to_json(const GL2ZMatrix& m) { return json::array({json::array({m.a, m.b}), json::array({m.c, m.d})}); }

}  // namespace spair::io

#endif  // SPECTRAL_PAIR_JSON_IO_HPP
