// Command-line front end for the toricnef library.
//
// Exit codes: 0 success; 1 a negative answer where the subcommand documents
// one (validate: invalid fan, bignef: predicate false, project: no quotient
// fan); 2 malformed input or a failed precondition.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "toricnef/catalog.hpp"
#include "toricnef/fan_json.hpp"
#include "toricnef/report.hpp"

namespace {

using namespace toricnef;

Fan load_fan(const std::string& path) {
  if (path == "-") return parse_fan(std::cin);
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open " + path);
  return parse_fan(in);
}

IntVector parse_integer_list(const std::string& text) {
  IntVector out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long long value = 0;
    try {
      value = std::stoll(item, &used);
    } catch (const std::exception&) {
      throw PreconditionError("expected comma-separated integers, got '" + text + "'");
    }
    if (used != item.size() && item.find_first_not_of(" \t", used) != std::string::npos)
      throw PreconditionError("expected comma-separated integers, got '" + text + "'");
    out.emplace_back(value);
  }
  if (out.empty()) throw PreconditionError("empty integer list");
  return out;
}

IntMatrix parse_matrix(const std::string& text) {
  std::vector<IntVector> rows;
  std::stringstream ss(text);
  std::string row;
  while (std::getline(ss, row, ';')) rows.push_back(parse_integer_list(row));
  if (rows.empty()) throw PreconditionError("empty matrix");
  return IntMatrix::from_rows(rows);
}

int emit(const std::string& command, const report::Report& r, bool json) {
  if (json)
    std::cout << report::wrap(command, r);
  else
    std::cout << r.text;
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact nef / pseudo-effective cone analysis of simplicial toric varieties"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  app.add_flag("--json", json, "Machine-readable report (schema toricnef-report/1)");

  std::string fan_path;
  auto add_fan_command = [&](const std::string& name, const std::string& help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("fan", fan_path, "Fan JSON file, or - for stdin")->required();
    return sub;
  };

  auto* validate_cmd = add_fan_command("validate", "Check the fan invariants");
  auto* analyze_cmd = add_fan_command("analyze", "Dimension, ray count, Picard rank, smoothness, completeness, projectivity");
  auto* nef_cmd = add_fan_command("nef", "Nef cone in N^1 coordinates");
  auto* mori_cmd = add_fan_command("mori", "Mori cone in N_1 coordinates");
  auto* collections_cmd = add_fan_command("collections", "Primitive collections and relations (smooth fans)");
  auto* bignef_cmd = add_fan_command("bignef", "Whether every nonzero nef class is big");
  std::string divisor_text;
  bignef_cmd->add_option("--divisor", divisor_text, "Also classify this divisor (coefficients over rays)");
  auto* general_cmd = add_fan_command("general", "'general' / 'special' classification with certificate");
  auto* subdivide_cmd = add_fan_command("subdivide", "Star subdivision; prints the new fan JSON");
  std::string center_text;
  subdivide_cmd->add_option("--at", center_text, "Primitive center, e.g. 1,-1,-2")->required();
  auto* project_cmd = add_fan_command("project", "Image fan under a lattice projection, or an overlap certificate");
  std::string matrix_text;
  project_cmd->add_option("--matrix", matrix_text, "Rows separated by ';', e.g. \"1,0,0;0,1,0\"")->required();

  auto* catalog_cmd = app.add_subcommand("catalog", "Emit a catalog fan as JSON");
  std::string catalog_name;
  std::optional<std::size_t> catalog_value, catalog_n, catalog_k;
  std::optional<long> catalog_a;
  std::string catalog_dims;
  catalog_cmd->add_option("name", catalog_name, "p | example-8-10 | xk | miyake-oda | general-ndim | pxp | blown-up-p2 | "
                                                "p1xp1 | p1xp2 | hirzebruch")
      ->required();
  catalog_cmd->add_option("value", catalog_value, "Shorthand for --n (p, general-ndim) or --k (xk)");
  catalog_cmd->add_option("--n", catalog_n, "Dimension for p and general-ndim");
  catalog_cmd->add_option("--k", catalog_k, "Picard rank for xk");
  catalog_cmd->add_option("--a", catalog_a, "Twist for hirzebruch");
  catalog_cmd->add_option("--dims", catalog_dims, "Factor dimensions for pxp, e.g. 1,2");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate_cmd) return emit("validate", report::validate_report(load_fan(fan_path)), json);
    if (*analyze_cmd) return emit("analyze", report::analyze_report(load_fan(fan_path)), json);
    if (*nef_cmd) return emit("nef", report::nef_report(load_fan(fan_path)), json);
    if (*mori_cmd) return emit("mori", report::mori_report(load_fan(fan_path)), json);
    if (*collections_cmd) return emit("collections", report::collections_report(load_fan(fan_path)), json);
    if (*bignef_cmd) {
      std::optional<IntVector> divisor;
      if (!divisor_text.empty()) divisor = parse_integer_list(divisor_text);
      return emit("bignef", report::bignef_report(load_fan(fan_path), divisor), json);
    }
    if (*general_cmd) return emit("general", report::general_report(load_fan(fan_path)), json);
    if (*project_cmd) return emit("project", report::project_report(load_fan(fan_path), parse_matrix(matrix_text)), json);
    if (*subdivide_cmd) {
      Fan f = load_fan(fan_path);
      require_valid(f);
      std::cout << emit_fan(star_subdivision(f, parse_integer_list(center_text)));
      return 0;
    }
    if (*catalog_cmd) {
      catalog::CatalogParams p;
      p.n = catalog_n;
      p.k = catalog_k;
      p.a = catalog_a;
      if (catalog_value) {
        if (catalog_name == "xk")
          p.k = p.k.value_or(*catalog_value);
        else
          p.n = p.n.value_or(*catalog_value);
      }
      if (!catalog_dims.empty())
        for (const auto& d : parse_integer_list(catalog_dims)) p.dims.push_back(d.convert_to<std::size_t>());
      std::cout << emit_fan(catalog::by_name(catalog_name, p));
      return 0;
    }
  } catch (const std::exception& e) {
    if (json) {
      nlohmann::ordered_json j;
      j["schema"] = report::kSchema;
      j["error"] = e.what();
      std::cout << j.dump(2) << "\n";
    }
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
