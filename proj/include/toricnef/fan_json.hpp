#pragma once

// The fan interchange format:
//   {"dim":3,"rays":[[1,0,0],...],"max_cones":[[0,1,2],...]}
// Ray indices are 0-based. Emission is compact with keys in this order and a
// trailing newline, so emit -> parse -> emit is byte-identical.

#include <cstdint>
#include <istream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "toricnef/fan_model.hpp"

namespace toricnef {

inline nlohmann::ordered_json fan_to_json(const Fan& f) {
  nlohmann::ordered_json j;
  j["dim"] = f.dim;
  auto rays = nlohmann::ordered_json::array();
  for (const auto& r : f.rays) {
    auto row = nlohmann::ordered_json::array();
    for (const auto& x : r) row.push_back(x.convert_to<std::int64_t>());
    rays.push_back(std::move(row));
  }
  j["rays"] = std::move(rays);
  auto cones = nlohmann::ordered_json::array();
  for (const auto& c : f.max_cones) cones.push_back(c);
  j["max_cones"] = std::move(cones);
  return j;
}

inline std::string emit_fan(const Fan& f) { return fan_to_json(f).dump() + "\n"; }

inline Fan fan_from_json(const nlohmann::json& j) {
  auto fail = [](const std::string& what) -> void { throw PreconditionError("malformed fan JSON: " + what); };
  if (!j.is_object()) fail("expected an object");
  for (const char* key : {"dim", "rays", "max_cones"})
    if (!j.contains(key)) fail(std::string("missing key '") + key + "'");
  if (!j["dim"].is_number_integer() || j["dim"].get<std::int64_t>() < 0) fail("'dim' must be a non-negative integer");
  if (!j["rays"].is_array()) fail("'rays' must be an array");
  if (!j["max_cones"].is_array()) fail("'max_cones' must be an array");

  Fan f;
  f.dim = j["dim"].get<std::size_t>();
  for (const auto& r : j["rays"]) {
    if (!r.is_array()) fail("each ray must be an array of integers");
    LatticeVector v;
    for (const auto& x : r) {
      if (!x.is_number_integer()) fail("ray coordinates must be integers");
      v.emplace_back(x.get<std::int64_t>());
    }
    f.rays.push_back(std::move(v));
  }
  for (const auto& c : j["max_cones"]) {
    if (!c.is_array()) fail("each cone must be an array of ray indices");
    ConeIndices cone;
    for (const auto& x : c) {
      if (!x.is_number_integer() || x.get<std::int64_t>() < 0) fail("cone entries must be non-negative integers");
      cone.push_back(x.get<std::size_t>());
    }
    f.max_cones.push_back(std::move(cone));
  }
  return f;
}

inline Fan parse_fan(std::istream& in) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw PreconditionError(std::string("malformed fan JSON: ") + e.what());
  }
  return fan_from_json(j);
}

inline Fan parse_fan(const std::string& text) {
  std::istringstream in(text);
  return parse_fan(in);
}

}  // namespace toricnef
