// Catalog-wide summary: facet and contact counts, dual-set sizes and
// irreducibility for each named lattice.

#ifndef VOREXT_REPORT_HPP
#define VOREXT_REPORT_HPP

#include "vorext/extension.hpp"
#include "vorext/serialize.hpp"

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace vorext {

struct ReportRow {
  std::string name;
  std::size_t dim = 0;
  std::size_t facets = 0;
  std::size_t contacts = 0;
  std::size_t dual = 0;
  bool irreducible = false;
  std::string irreducible_from;  // "G(P)" when checked on the cell, "form" otherwise
  std::optional<IntVec> sample;  // lexicographically first free direction
};

inline std::vector<std::string> default_report_lattices() {
  return {"Z2", "Z3", "A2", "A3", "A4", "D4", "D5", "A2*", "A3*", "D4*", "E6", "E6*", "E7", "E7*", "E8"};
}

inline ReportRow report_row(const std::string& name, const QuadForm& a, std::size_t vertex_dim_cap = kDefaultVertexDimCap) {
  ReportRow row;
  row.name = name;
  row.dim = a.dim();
  const auto cs = coset_minima(a);
  const auto normals = facet_normals(cs);
  row.facets = normals.size();
  row.contacts = cs.contact_vectors().size();
  const auto ds = dual_set(normals);
  row.dual = ds.members.size();
  if (!ds.members.empty()) row.sample = ds.members.front();
  if (a.dim() >= 2 && a.dim() <= vertex_dim_cap) {
    const auto cell = enumerate_vertices(build_cell(a, normals), vertex_dim_cap);
    row.irreducible = irreducibility_graph(cell).connected;
    row.irreducible_from = "G(P)";
  } else {
    row.irreducible = orthogonal_components(a, normals) == 1;
    row.irreducible_from = "form";
  }
  return row;
}

namespace io {

inline json to_json(const ReportRow& r) {
  return {{"lattice", r.name},
          {"dim", r.dim},
          {"facets", r.facets},
          {"contacts", r.contacts},
          {"dualSet", r.dual},
          {"irreducible", r.irreducible},
          {"irreducibleFrom", r.irreducible_from},
          {"sampleFreeDirection", r.sample ? json(*r.sample) : json("none")}};
}

inline std::string to_markdown(const std::vector<ReportRow>& rows) {
  std::ostringstream os;
  os << "| lattice | dim | facets | contacts | dual set | irreducible | sample free direction |\n";
  os << "|---|---|---|---|---|---|---|\n";
  for (const auto& r : rows) {
    os << "| " << r.name << " | " << r.dim << " | " << r.facets << " | " << r.contacts << " | " << r.dual << " | "
       << (r.irreducible ? "yes" : "no") << " (" << r.irreducible_from << ") | ";
    if (r.sample) {
      os << "(";
      for (std::size_t i = 0; i < r.sample->size(); ++i) os << (i ? "," : "") << (*r.sample)[i];
      os << ")";
    } else {
      os << "none";
    }
    os << " |\n";
  }
  return os.str();
}

}  // namespace io

}  // namespace vorext

#endif  // VOREXT_REPORT_HPP
