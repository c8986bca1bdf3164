#pragma once

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

#include "rspace/quadric.hpp"
#include "rspace/suites.hpp"

namespace rspace::io {

using nlohmann::json;

/// Malformed input; reported with the usage exit code.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Field parse_field(const std::string& s) {
  if (s == "R") return Field::R;
  if (s == "C") return Field::C;
  if (s == "H") return Field::H;
  throw ParseError("unknown field '" + s + "'");
}

inline json scalar_json(const DivisionScalar& s, Field f) {
  if (f == Field::R) return s.w;
  if (f == Field::C) return json::array({s.w, s.x});
  return json::array({s.w, s.x, s.y, s.z});
}

inline DivisionScalar scalar_from_json(const json& j, Field f) {
  if (f == Field::R) {
    if (!j.is_number()) throw ParseError("real entry must be a number");
    return DivisionScalar::real(j.get<double>());
  }
  const size_t want = f == Field::C ? 2 : 4;
  if (!j.is_array() || j.size() != want) throw ParseError("entry must be an array of " + std::to_string(want) + " numbers");
  for (const auto& x : j)
    if (!x.is_number()) throw ParseError("entry components must be numbers");
  if (f == Field::C) return DivisionScalar::complex({j[0].get<double>(), j[1].get<double>()});
  return DivisionScalar::quaternion(j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>());
}

/// {"field", "rows", "cols", "data"} with entries in column-major order.
inline json to_json(const FMatrix& m) {
  json data = json::array();
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) data.push_back(scalar_json(m(i, j), m.field()));
  return {{"field", field_name(m.field())}, {"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

inline FMatrix fmatrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("field") || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
    throw ParseError("matrix must be an object with field, rows, cols and data");
  const Field f = parse_field(j.at("field").get<std::string>());
  const long r = j.at("rows").get<long>(), c = j.at("cols").get<long>();
  if (r < 1 || c < 1) throw ParseError("matrix dimensions must be positive");
  const json& data = j.at("data");
  if (!data.is_array() || data.size() != static_cast<size_t>(r * c)) throw ParseError("matrix data has the wrong length");
  FMatrix m = FMatrix::zero(f, r, c);
  size_t k = 0;
  for (Index jj = 0; jj < c; ++jj)
    for (Index i = 0; i < r; ++i) m.set(i, jj, scalar_from_json(data[k++], f));
  return m;
}

inline json to_json(const RVec& v) {
  json a = json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

inline RVec rvec_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("vector must be a non-empty array of numbers");
  RVec v(static_cast<Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ParseError("vector components must be numbers");
    v(static_cast<Index>(i)) = j[i].get<double>();
  }
  return v;
}

inline json to_json(const OrientedPlane& p) { return {{"u", to_json(p.u)}, {"v", to_json(p.v)}}; }

inline OrientedPlane plane_from_json(const json& j, const Tolerance& tol) {
  if (!j.is_object() || !j.contains("u") || !j.contains("v")) throw ParseError("plane must be an object with u and v");
  const RVec u = rvec_from_json(j.at("u")), v = rvec_from_json(j.at("v"));
  try {
    return OrientedPlane::from_frame(u, v, tol);
  } catch (const DomainError& e) {
    throw ParseError(std::string("malformed frame: ") + e.what());
  }
}

/// Real numbers of a serialized point in a fixed order, for CSV rows.
inline void flatten(const json& point, std::vector<double>& out) {
  if (point.is_number()) {
    out.push_back(point.get<double>());
  } else if (point.is_array()) {
    for (const auto& x : point) flatten(x, out);
  } else if (point.is_object() && point.contains("data")) {
    flatten(point.at("data"), out);
  } else if (point.is_object() && point.contains("u")) {
    flatten(point.at("u"), out);
    flatten(point.at("v"), out);
  }
}

inline json to_json(const SuiteReport& r, bool with_trials) {
  json configs = json::array();
  for (const auto& c : r.configs) {
    json mr = std::isfinite(c.max_residual) ? json(c.max_residual) : json("inf");
    configs.push_back({{"config", c.config},
                       {"threshold", c.threshold},
                       {"trials", c.trials},
                       {"passed", c.passed},
                       {"max_residual", mr}});
  }
  json failures = json::array(), trials = json::array();
  for (const auto& t : r.records) {
    json res = std::isfinite(t.residual) ? json(t.residual) : json("inf");
    json rec = {{"config", t.config}, {"trial", t.trial}, {"pass", t.pass}, {"residual", res}, {"message", t.message}};
    if (!t.pass) failures.push_back(rec);
    if (with_trials) trials.push_back(rec);
  }
  json out = {{"suite", r.suite},
              {"seed", r.seed},
              {"trials_per_config", r.trials_per_config},
              {"total", r.total()},
              {"failed", r.failed()},
              {"all_pass", r.all_pass()},
              {"max_residual", std::isfinite(r.max_residual()) ? json(r.max_residual()) : json("inf")},
              {"configs", configs},
              {"failures", failures}};
  if (with_trials) out["trials"] = trials;
  return out;
}

}  // namespace rspace::io
