// Command-line front end: cells, contact vectors, dual sets, segment sums,
// the equivalence checker and catalog reports.

#include "vorext/vorext.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using vorext::io::json;

struct Options {
  std::string form_path;
  std::string lattice;
  int n = 0;
  std::string e_csv;
  std::string b_csv;
  std::string json_path;
  std::string off_path;
  std::size_t vcap = vorext::kDefaultVertexDimCap;
  int samples = 50;
  unsigned seed = 1;
};

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

vorext::QuadForm load_form(const Options& o) {
  const bool has_form = !o.form_path.empty(), has_lattice = !o.lattice.empty();
  if (has_form == has_lattice) throw vorext::Error("UsageError", "give exactly one of --form or --lattice");
  if (has_form) {
    std::ifstream in(o.form_path);
    if (!in) throw vorext::Error("IOError", "cannot open " + o.form_path);
    json doc;
    try {
      in >> doc;
    } catch (const json::exception& ex) {
      throw vorext::Error("ParseError", ex.what());
    }
    return vorext::io::form_from_json(doc);
  }
  if (o.n != 0) {
    auto entry = vorext::parse_lattice_name(o.lattice);
    return vorext::catalog(entry.family, o.n);
  }
  return vorext::catalog(o.lattice);
}

std::string input_name(const Options& o) {
  if (!o.lattice.empty()) return o.n ? o.lattice + "(" + std::to_string(o.n) + ")" : o.lattice;
  return o.form_path;
}

vorext::Vec parse_e(const Options& o) {
  if (o.e_csv.empty()) throw vorext::Error("UsageError", "--e is required");
  vorext::Vec e;
  for (const auto& t : split_csv(o.e_csv)) e.push_back(vorext::parse_rational(t));
  return e;
}

std::vector<vorext::Rational> parse_b(const Options& o) {
  if (o.b_csv.empty()) return vorext::default_b_samples();
  std::vector<vorext::Rational> b;
  for (const auto& t : split_csv(o.b_csv)) b.push_back(vorext::parse_rational(t));
  return b;
}

void emit(const json& j, const Options& o) {
  const std::string text = j.dump(2) + "\n";
  std::cout << text;
  if (!o.json_path.empty()) {
    std::ofstream out(o.json_path);
    if (!out) throw vorext::Error("IOError", "cannot write " + o.json_path);
    out << text;
  }
}

void write_off(const vorext::VPolytope& v, const Options& o) {
  if (o.off_path.empty()) return;
  if (v.dim > 3) throw vorext::Error("DimensionCapExceeded", "OFF export needs d <= 3");
  std::ofstream out(o.off_path);
  if (!out) throw vorext::Error("IOError", "cannot write " + o.off_path);
  out << vorext::io::to_off(v);
}

int cmd_cell(const Options& o) {
  const auto a = load_form(o);
  const auto cs = vorext::coset_minima(a);
  const auto normals = vorext::facet_normals(cs);
  const auto h = vorext::build_cell(a, normals);
  json j;
  j["command"] = "cell";
  j["form"] = vorext::io::form_to_json(a);
  j["hrep"] = vorext::io::to_json(h);
  j["summary"] = {{"facets", normals.size()}};
  if (a.dim() <= o.vcap) {
    const auto v = vorext::enumerate_vertices(h, o.vcap);
    j["vrep"] = vorext::io::to_json(v);
    j["summary"]["vertices"] = v.vertices.size();
    if (a.dim() >= 2) j["summary"]["belts"] = vorext::io::belt_summary(vorext::belts(v));
    write_off(v, o);
  } else {
    j["vrep"] = nullptr;
    j["notice"] = "vertex enumeration skipped: d = " + std::to_string(a.dim()) + " exceeds --vcap " + std::to_string(o.vcap);
    if (!o.off_path.empty()) throw vorext::Error("DimensionCapExceeded", "OFF export needs d <= 3");
  }
  emit(j, o);
  return 0;
}

int cmd_relevant(const Options& o) {
  const auto a = load_form(o);
  json j;
  j["command"] = "relevant";
  j["form"] = vorext::io::form_to_json(a);
  j["contacts"] = vorext::io::to_json(vorext::coset_minima(a));
  emit(j, o);
  return 0;
}

int cmd_dual_set(const Options& o) {
  const auto a = load_form(o);
  const auto normals = vorext::facet_normals(vorext::coset_minima(a));
  json j;
  j["command"] = "dual-set";
  j["form"] = vorext::io::form_to_json(a);
  j["dualSet"] = vorext::io::to_json(vorext::dual_set(normals));
  emit(j, o);
  return 0;
}

int cmd_extend(const Options& o) {
  const auto a = load_form(o);
  const auto e = parse_e(o);
  const auto bs = parse_b(o);
  if (bs.size() != 1) throw vorext::Error("UsageError", "extend takes a single --b");
  const auto normals = vorext::facet_normals(vorext::coset_minima(a));
  const auto cell = vorext::enumerate_vertices(vorext::build_cell(a, normals), o.vcap);
  const auto sum = vorext::sum_with_segment(cell, vorext::Direction(e, bs.front()));
  json added = json::array();
  for (const auto& q : sum.added) added.push_back(vorext::io::to_json(q));
  json j;
  j["command"] = "extend";
  j["form"] = vorext::io::form_to_json(a);
  j["e"] = vorext::io::to_json(e);
  j["b"] = vorext::to_string(bs.front());
  j["sum"] = vorext::io::to_json(sum.v);
  j["directSumFacets"] = added;
  j["parallelotope"] = vorext::io::to_json(vorext::is_parallelotope(sum.v));
  write_off(sum.v, o);
  emit(j, o);
  return 0;
}

int cmd_check(const Options& o) {
  const auto a = load_form(o);
  vorext::CheckOptions opt;
  opt.vertex_dim_cap = o.vcap;
  const auto rep = vorext::check_theorem(a, parse_e(o), parse_b(o), opt);
  emit(vorext::io::to_json(rep), o);
  return rep.invariants_hold ? 0 : 1;
}

// Every dual-set member plus random directions that fail to normalize.
int cmd_verify(const Options& o) {
  std::vector<std::pair<std::string, vorext::QuadForm>> inputs;
  if (o.lattice.empty() && o.form_path.empty()) {
    for (const auto* name : {"A2", "A3", "D4"}) inputs.emplace_back(name, vorext::catalog(name));
  } else {
    inputs.emplace_back(input_name(o), load_form(o));
  }
  vorext::CheckOptions opt;
  opt.vertex_dim_cap = o.vcap;
  const auto bs = parse_b(o);
  std::mt19937 rng(o.seed);
  json rows = json::array();
  bool all_ok = true;
  for (const auto& [name, a] : inputs) {
    const auto normals = vorext::facet_normals(vorext::coset_minima(a));
    const auto ds = vorext::dual_set(normals);
    std::size_t checked = 0, failed = 0, converse = 0, silent = 0;
    json failures = json::array();
    auto run = [&](const vorext::Vec& e) {
      const auto rep = vorext::check_theorem(a, e, bs, opt);
      ++checked;
      silent += rep.theorem_silent;
      if (!rep.invariants_hold) {
        ++failed;
        failures.push_back(vorext::io::to_json(rep));
      }
    };
    for (const auto& e : ds.members) run(vorext::to_vec(e));
    std::uniform_int_distribution<int> coord(-4, 4);
    int attempts = 0;
    while (static_cast<int>(converse) < o.samples && attempts < 100 * std::max(o.samples, 1)) {
      ++attempts;
      vorext::Vec e(a.dim());
      for (auto& x : e) x = coord(rng);
      if (vorext::is_zero(e) || vorext::normalize_direction(e, normals).ok) continue;
      ++converse;
      if (a.dim() <= o.vcap) run(e);
    }
    all_ok = all_ok && failed == 0;
    rows.push_back({{"input", name},
                    {"dim", a.dim()},
                    {"dualSet", ds.members.size()},
                    {"nonNormalizable", converse},
                    {"checked", checked},
                    {"theoremSilent", silent},
                    {"failed", failed},
                    {"failures", failures}});
  }
  emit({{"command", "verify"}, {"results", rows}, {"ok", all_ok}}, o);
  return all_ok ? 0 : 1;
}

int cmd_catalog_list(const Options& o) {
  json j = json::array();
  for (const auto& name : vorext::catalog_names()) {
    json entry = {{"name", name}};
    if (name[0] == 'E') {
      entry["dim"] = name[1] - '0';
    } else {
      entry["parametric"] = true;
      entry["minN"] = (name[0] == 'D') ? 3 : 1;
    }
    j.push_back(entry);
  }
  emit({{"command", "catalog-list"}, {"lattices", j}}, o);
  return 0;
}

int cmd_report(const Options& o) {
  const auto names = o.lattice.empty() ? vorext::default_report_lattices() : split_csv(o.lattice);
  std::vector<vorext::ReportRow> rows;
  for (const auto& name : names) rows.push_back(vorext::report_row(name, vorext::catalog(name), o.vcap));
  std::cout << vorext::io::to_markdown(rows);
  if (!o.json_path.empty()) {
    json j = json::array();
    for (const auto& r : rows) j.push_back(vorext::io::to_json(r));
    std::ofstream out(o.json_path);
    if (!out) throw vorext::Error("IOError", "cannot write " + o.json_path);
    out << json{{"command", "report"}, {"rows", j}}.dump(2) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Voronoi parallelotopes, free directions and segment extensions"};
  app.require_subcommand(1);
  Options o;

  auto input = [&](CLI::App* sub) {
    sub->add_option("--form", o.form_path, "JSON form document {\"dim\", \"gram\"}");
    sub->add_option("--lattice", o.lattice, "catalog name, e.g. A2, D4, E6*, Zn");
    sub->add_option("--n", o.n, "dimension for parametric catalog families");
    sub->add_option("--json", o.json_path, "also write the JSON output here");
    sub->add_option("--vcap", o.vcap, "largest dimension for vertex enumeration");
  };

  auto* cell = app.add_subcommand("cell", "Voronoi cell: H-rep, V-rep and belt summary");
  input(cell);
  cell->add_option("--off", o.off_path, "OFF export (d <= 3)");
  auto* relevant = app.add_subcommand("relevant", "per-parity-class minimal vectors and facet normals");
  input(relevant);
  auto* dual = app.add_subcommand("dual-set", "free directions of the facet-normal set");
  input(dual);
  auto* extend = app.add_subcommand("extend", "Minkowski sum of the cell with a segment");
  input(extend);
  extend->add_option("--e", o.e_csv, "segment direction, comma separated")->required();
  extend->add_option("--b", o.b_csv, "segment weight")->default_str("1");
  extend->add_option("--off", o.off_path, "OFF export (d <= 3)");
  auto* check = app.add_subcommand("check", "check both directions of the extension equivalence");
  input(check);
  check->add_option("--e", o.e_csv, "segment direction, comma separated")->required();
  check->add_option("--b", o.b_csv, "segment weights, comma separated (default 1/2,1,3)");
  auto* verify = app.add_subcommand("verify", "check every free direction and random non-free ones");
  input(verify);
  verify->add_option("--b", o.b_csv, "segment weights (default 1/2,1,3)");
  verify->add_option("--samples", o.samples, "random non-normalizable directions per lattice");
  verify->add_option("--seed", o.seed, "random seed");
  auto* list = app.add_subcommand("catalog-list", "list catalog lattices");
  list->add_option("--json", o.json_path, "also write the JSON output here");
  auto* report = app.add_subcommand("report", "summary table over the catalog");
  report->add_option("--lattice", o.lattice, "comma separated subset (default: built-in list)");
  report->add_option("--json", o.json_path, "write the JSON table here");
  report->add_option("--vcap", o.vcap, "largest dimension for vertex enumeration");

  CLI11_PARSE(app, argc, argv);
  if (extend->parsed() && o.b_csv.empty()) o.b_csv = "1";

  try {
    if (cell->parsed()) return cmd_cell(o);
    if (relevant->parsed()) return cmd_relevant(o);
    if (dual->parsed()) return cmd_dual_set(o);
    if (extend->parsed()) return cmd_extend(o);
    if (check->parsed()) return cmd_check(o);
    if (verify->parsed()) return cmd_verify(o);
    if (list->parsed()) return cmd_catalog_list(o);
    if (report->parsed()) return cmd_report(o);
  } catch (const vorext::Error& ex) {
    std::cerr << json{{"error", {{"kind", ex.kind()}, {"message", ex.what()}}}}.dump() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << json{{"error", {{"kind", "Internal"}, {"message", ex.what()}}}}.dump() << "\n";
    return 2;
  }
  return 2;
}
