#pragma once

// Human-readable and JSON reports for each command-line subcommand. Every
// report is a pure function of its inputs, so repeated runs are
// byte-identical. JSON reports have the shape
//   {"schema":"toricnef-report/1","command":"<name>","result":{...}}
// with vectors written as comma-separated integers ("1,-1,-2") and rationals
// as "p/q" in lowest terms.

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "toricnef/batyrev.hpp"
#include "toricnef/cone_engine.hpp"
#include "toricnef/divisor_theory.hpp"
#include "toricnef/fan_json.hpp"
#include "toricnef/fan_model.hpp"

namespace toricnef::report {

inline constexpr const char* kSchema = "toricnef-report/1";

struct Report {
  nlohmann::ordered_json result;
  std::string text;
  int exit_code = 0;
};

inline std::string join(const IntVector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].str();
  }
  return s;
}

inline std::string join(const RatVector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += to_string(v[i]);
  }
  return s;
}

inline std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s;
}

inline nlohmann::ordered_json vectors_json(const std::vector<IntVector>& vs) {
  auto a = nlohmann::ordered_json::array();
  for (const auto& v : vs) a.push_back(join(v));
  return a;
}

inline nlohmann::ordered_json cone_json(const RationalCone& c) {
  nlohmann::ordered_json j;
  j["ambient_dim"] = c.ambient_dim();
  j["dim"] = c.dim();
  j["extremal_rays"] = vectors_json(c.extremal_rays());
  j["lineality"] = vectors_json(c.lineality());
  j["facets"] = vectors_json(c.facets());
  j["equations"] = vectors_json(c.equations());
  return j;
}

inline void cone_text(std::ostringstream& out, const RationalCone& c) {
  out << "dim " << c.dim() << " in Q^" << c.ambient_dim() << "\n";
  out << "extremal rays (" << c.extremal_rays().size() << "):\n";
  for (const auto& r : c.extremal_rays()) out << "  " << join(r) << "\n";
  if (!c.lineality().empty()) {
    out << "lineality (" << c.lineality().size() << "):\n";
    for (const auto& r : c.lineality()) out << "  " << join(r) << "\n";
  }
  out << "facets (" << c.facets().size() << "):\n";
  for (const auto& r : c.facets()) out << "  " << join(r) << "\n";
  if (!c.equations().empty()) {
    out << "equations (" << c.equations().size() << "):\n";
    for (const auto& r : c.equations()) out << "  " << join(r) << "\n";
  }
}

inline const char* yes_no(bool b) { return b ? "true" : "false"; }

inline std::string wrap(const std::string& command, const Report& r) {
  nlohmann::ordered_json j;
  j["schema"] = kSchema;
  j["command"] = command;
  j["result"] = r.result;
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------

inline Report validate_report(const Fan& f) {
  Report r;
  auto v = validate(f);
  r.result["valid"] = v.ok();
  auto list = nlohmann::ordered_json::array();
  std::ostringstream out;
  out << (v.ok() ? "valid" : "invalid") << "\n";
  for (const auto& x : v.violations) {
    nlohmann::ordered_json e;
    e["kind"] = to_string(x.kind);
    e["cones"] = x.cones;
    e["rays"] = x.rays;
    e["message"] = x.message;
    list.push_back(std::move(e));
    out << "  " << to_string(x.kind) << ": " << x.message << "\n";
  }
  r.result["violations"] = std::move(list);
  r.text = out.str();
  r.exit_code = v.ok() ? 0 : 1;
  return r;
}

inline Report analyze_report(const Fan& f) {
  require_valid(f);
  Report r;
  const bool complete = is_complete(f), smooth = is_smooth(f);
  r.result["dim"] = f.dim;
  r.result["rays"] = f.rays.size();
  r.result["max_cones"] = f.max_cones.size();
  r.result["smooth"] = smooth;
  r.result["complete"] = complete;
  std::ostringstream out;
  out << "dim: " << f.dim << ", rays: " << f.rays.size() << ", max cones: " << f.max_cones.size() << "\n";
  out << "smooth: " << yes_no(smooth) << ", complete: " << yes_no(complete) << "\n";
  if (complete) {
    DivisorCones dc(f);
    r.result["picard_rank"] = dc.picard_rank();
    r.result["projective"] = dc.is_projective();
    r.result["nef_dim"] = dc.nef_cone().dim();
    out << "projective: " << yes_no(dc.is_projective()) << ", ρ=" << dc.picard_rank() << "\n";
    out << "nef cone dim: " << dc.nef_cone().dim() << "\n";
  } else {
    r.result["picard_rank"] = nullptr;
    r.result["projective"] = nullptr;
    r.result["nef_dim"] = nullptr;
    out << "projective: n/a (fan not complete)\n";
  }
  r.text = out.str();
  return r;
}

inline nlohmann::ordered_json coordinates_json(const DivisorClassSpace& space) {
  nlohmann::ordered_json j;
  j["picard_rank"] = space.picard_rank();
  auto rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < space.projection().rows(); ++i) rows.push_back(join(space.projection().row_vector(i)));
  j["divisor_projection"] = std::move(rows);
  return j;
}

inline Report nef_report(const Fan& f) {
  require_valid(f);
  DivisorCones dc(f);
  Report r;
  r.result["coordinates"] = coordinates_json(dc.space());
  r.result["nef_cone"] = cone_json(dc.nef_cone());
  std::ostringstream out;
  out << "nef cone in N^1 coordinates (ρ=" << dc.picard_rank() << "):\n";
  cone_text(out, dc.nef_cone());
  r.text = out.str();
  return r;
}

inline Report mori_report(const Fan& f) {
  require_valid(f);
  DivisorCones dc(f);
  Report r;
  r.result["coordinates"] = coordinates_json(dc.space());
  r.result["mori_cone"] = cone_json(dc.mori_cone());
  auto ws = nlohmann::ordered_json::array();
  for (const auto& w : dc.wall_list()) {
    nlohmann::ordered_json e;
    e["rays"] = w.ray_indices;
    e["cones"] = {w.left, w.right};
    e["relation"] = join(w.relation);
    ws.push_back(std::move(e));
  }
  r.result["walls"] = std::move(ws);
  std::ostringstream out;
  out << "Mori cone in N_1 coordinates (ρ=" << dc.picard_rank() << "), " << dc.wall_list().size() << " walls:\n";
  cone_text(out, dc.mori_cone());
  r.text = out.str();
  return r;
}

inline Report collections_report(const Fan& f) {
  require_valid(f);
  if (!is_complete(f) || !is_smooth(f)) throw PreconditionError("collections: fan must be complete and smooth");
  Report r;
  auto list = nlohmann::ordered_json::array();
  std::ostringstream out;
  const auto relations = primitive_relations(f);
  out << relations.size() << " primitive collections\n";
  for (const auto& rel : relations) {
    nlohmann::ordered_json e;
    e["collection"] = rel.collection;
    e["focus"] = rel.focus;
    e["focus_coefficients"] = join(rel.focus_coefficients);
    e["relation"] = join(rel.relation);
    list.push_back(std::move(e));
    out << "  {" << join(rel.collection) << "} focus <" << join(rel.focus) << "> relation " << join(rel.relation)
        << "\n";
  }
  r.result["collections"] = std::move(list);
  r.text = out.str();
  return r;
}

inline Report bignef_report(const Fan& f, const std::optional<IntVector>& divisor = std::nullopt) {
  require_valid(f);
  DivisorCones dc(f);
  Report r;
  const bool predicate = dc.boundary_meets_only_at_zero();
  r.result["predicate"] = predicate;
  std::ostringstream out;
  out << "predicate: " << (predicate ? "TRUE" : "FALSE") << "\n";
  auto rays = nlohmann::ordered_json::array();
  const auto verdicts = dc.nef_ray_verdicts();
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    const auto& ray = dc.nef_cone().extremal_rays()[i];
    const bool big = verdicts[i] == Membership::interior;
    nlohmann::ordered_json e;
    e["ray"] = join(ray);
    e["big"] = big;
    rays.push_back(std::move(e));
    out << "  nef ray " << join(ray) << ": " << (big ? "big" : "not big") << "\n";
  }
  r.result["nef_rays"] = std::move(rays);
  if (auto w = dc.nontrivial_nonbig_nef()) {
    nlohmann::ordered_json e;
    e["coefficients"] = join(w->coefficients);
    e["class"] = join(w->coordinates);
    r.result["witness"] = std::move(e);
    out << "non-big nef witness: divisor " << join(w->coefficients) << " (class " << join(w->coordinates) << ")\n";
  } else {
    r.result["witness"] = nullptr;
  }
  if (divisor) {
    auto d = dc.space().divisor(*divisor);
    nlohmann::ordered_json e;
    e["coefficients"] = join(*divisor);
    e["class"] = join(d.coordinates);
    e["nef"] = dc.is_nef(d);
    e["big"] = dc.is_big(d);
    r.result["divisor"] = std::move(e);
    out << "divisor " << join(*divisor) << ": nef " << yes_no(dc.is_nef(d)) << ", big " << yes_no(dc.is_big(d))
        << "\n";
  }
  r.text = out.str();
  r.exit_code = predicate ? 0 : 1;
  return r;
}

inline Report general_report(const Fan& f) {
  require_valid(f);
  auto verdict = is_general(f);
  Report r;
  r.result["general"] = verdict.general;
  std::ostringstream out;
  if (verdict.general) {
    r.result["certificate"] = nullptr;
    out << "general (no positive relation of size ≤ " << f.dim << ")\n";
  } else {
    const auto& c = *verdict.certificate;
    nlohmann::ordered_json e;
    e["rays"] = c.rays;
    e["coefficients"] = join(c.coefficients);
    r.result["certificate"] = std::move(e);
    out << "special: ";
    for (std::size_t i = 0; i < c.rays.size(); ++i) out << (i ? " + " : "") << c.coefficients[i] << "*r" << c.rays[i];
    out << " = 0 (size " << c.rays.size() << " ≤ " << f.dim << ")\n";
  }
  r.text = out.str();
  return r;
}

inline Report project_report(const Fan& f, const IntMatrix& pi) {
  require_valid(f);
  auto result = project_fan(f, pi);
  Report r;
  std::ostringstream out;
  if (auto* q = std::get_if<Fan>(&result)) {
    r.result["quotient"] = fan_to_json(*q);
    r.result["overlap"] = nullptr;
    out << "quotient fan: " << emit_fan(*q);
  } else {
    const auto& c = std::get<OverlapCertificate>(result);
    nlohmann::ordered_json e;
    e["reason"] = to_string(c.reason);
    e["cones"] = {c.first, c.second};
    e["first_cone_rays"] = f.max_cones[c.first];
    e["second_cone_rays"] = f.max_cones[c.second];
    e["first_image"] = vectors_json(c.first_image.generators());
    e["second_image"] = vectors_json(c.second_image.generators());
    r.result["quotient"] = nullptr;
    r.result["overlap"] = std::move(e);
    out << "no quotient fan: " << to_string(c.reason) << "\n";
    out << "  cone <" << join(f.max_cones[c.first]) << "> maps onto the cone spanned by";
    for (const auto& g : c.first_image.generators()) out << " (" << join(g) << ")";
    out << "\n  cone <" << join(f.max_cones[c.second]) << "> maps onto the cone spanned by";
    for (const auto& g : c.second_image.generators()) out << " (" << join(g) << ")";
    out << "\n";
    r.exit_code = 1;
  }
  r.text = out.str();
  return r;
}

}  // namespace toricnef::report
