// JSON documents (rationals as "p/q" strings) and OFF export.

#ifndef VOREXT_SERIALIZE_HPP
#define VOREXT_SERIALIZE_HPP

#include "vorext/extension.hpp"
#include "vorext/polytope.hpp"

#include <json.hpp>

#include <cmath>
#include <iomanip>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace vorext::io {

using nlohmann::json;

inline json to_json(const Rational& r) { return to_string(r); }

inline json to_json(const Vec& v) {
  json j = json::array();
  for (const auto& x : v) j.push_back(to_string(x));
  return j;
}

inline json to_json(const IntVec& v) { return json(v); }

inline json to_json(const std::vector<IntVec>& vs) {
  json j = json::array();
  for (const auto& v : vs) j.push_back(v);
  return j;
}

inline json to_json(const Mat& m) {
  json j = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) j.push_back(to_json(m.row(i)));
  return j;
}

inline Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  throw Error("ParseError", "expected a rational string or integer, got " + j.dump());
}

inline Vec vec_from_json(const json& j) {
  if (!j.is_array()) throw Error("ParseError", "expected an array");
  Vec v;
  for (const auto& x : j) v.push_back(rational_from_json(x));
  return v;
}

inline json form_to_json(const QuadForm& a) { return {{"dim", a.dim()}, {"gram", to_json(a.gram())}}; }

/// Accepts a bare form document or any document carrying one under "form".
inline QuadForm form_from_json(const json& doc) {
  const json& j = doc.contains("form") ? doc.at("form") : doc;
  if (!j.contains("gram")) throw Error("ParseError", "form document needs a \"gram\" entry");
  std::vector<Vec> rows;
  for (const auto& r : j.at("gram")) rows.push_back(vec_from_json(r));
  Mat g = Mat::from_rows(rows);
  if (j.contains("dim") && j.at("dim").get<std::size_t>() != g.rows())
    throw Error("ParseError", "\"dim\" disagrees with the Gram matrix");
  return QuadForm(std::move(g));
}

inline json to_json(const ContactVectorSet& cs) {
  json classes = json::array();
  for (const auto& c : cs.classes) {
    classes.push_back({{"parity", c.parity(cs.dim)},
                       {"minNorm", to_string(c.min_norm)},
                       {"minima", to_json(c.minima)},
                       {"relevant", c.relevant}});
  }
  const auto normals = facet_normals(cs);
  return {{"dim", cs.dim},
          {"classes", classes},
          {"contactCount", cs.contact_vectors().size()},
          {"facetCount", normals.size()},
          {"facetNormals", to_json(normals)}};
}

inline json to_json(const Inequality& q) { return {{"normal", to_json(q.normal)}, {"support", to_string(q.support)}}; }

inline json to_json(const HPolytope& h) {
  json ineqs = json::array();
  for (const auto& q : h.ineqs) ineqs.push_back(to_json(q));
  return {{"dim", h.dim}, {"inequalities", ineqs}};
}

inline HPolytope hpolytope_from_json(const json& j) {
  HPolytope h;
  h.dim = j.at("dim").get<std::size_t>();
  for (const auto& q : j.at("inequalities")) h.ineqs.push_back({vec_from_json(q.at("normal")), rational_from_json(q.at("support"))});
  return h;
}

inline json to_json(const VPolytope& v) {
  json verts = json::array();
  for (const auto& x : v.vertices) verts.push_back(to_json(x));
  json facets = json::array();
  for (const auto& q : v.facets) facets.push_back(to_json(q));
  return {{"dim", v.dim}, {"facets", facets}, {"vertices", verts}, {"facetIncidence", v.incidence}};
}

inline json belt_summary(const std::vector<Belt>& bs) {
  std::map<std::size_t, std::size_t> count;
  for (const auto& b : bs) ++count[b.length()];
  json j = json::array();
  for (auto [len, n] : count) j.push_back({{"length", len}, {"count", n}});
  return j;
}

inline json to_json(const ParallelotopeVerdict& v) {
  json fails = json::array();
  for (const auto& f : v.failures) {
    json w = {{"kind", to_string(f.kind)}, {"index", f.index}};
    if (f.kind == FailureKind::Belt) w["length"] = f.length;
    fails.push_back(w);
  }
  return {{"ok", v.ok}, {"failures", fails}};
}

inline json to_json(const DualSet& ds) {
  return {{"count", ds.members.size()}, {"members", to_json(ds.members)}, {"basis", to_json(ds.basis)}};
}

inline json to_json(const ExtensionReport& r) {
  json j;
  j["input"] = {{"dim", r.gram.rows()}, {"gram", to_json(r.gram)}, {"e", to_json(r.e_raw)}};
  json bs = json::array();
  for (const auto& b : r.b_samples) bs.push_back(to_string(b));
  j["input"]["b"] = bs;
  json norm = {{"ok", r.normalization.ok}};
  if (r.normalization.ok) {
    norm["e"] = to_json(r.normalization.e);
    norm["w"] = to_string(r.normalization.w);
  } else {
    norm["reason"] = r.normalization.reason;
    if (r.normalization.witnesses)
      norm["witnesses"] = json::array({r.normalization.witnesses->first, r.normalization.witnesses->second});
  }
  j["normalization"] = norm;
  j["normalizedE"] = r.normalization.ok ? to_json(r.normalization.e) : json(nullptr);
  j["inDualSet"] = r.in_dual_set;
  j["violatingNormals"] = to_json(r.violating_normals);
  j["vrepAvailable"] = r.vrep_available;
  if (!r.vrep_available) j["mode"] = "dual-set-only";
  j["irreducibleInput"] = r.irreducible_input ? json(*r.irreducible_input) : json(nullptr);
  j["theoremSilent"] = r.theorem_silent;
  j["bStable"] = r.b_stable ? json(*r.b_stable) : json(nullptr);
  json samples = json::array();
  for (const auto& s : r.samples) {
    json e = {{"b", to_string(s.b)}, {"sumH", to_json(s.sum)}, {"parallelotope", to_json(s.parallelotope)}};
    e["cellH"] = s.cell ? to_json(*s.cell) : json(nullptr);
    e["equal"] = s.equal ? json(*s.equal) : json(nullptr);
    if (!s.witness.empty()) e["witness"] = s.witness;
    samples.push_back(e);
  }
  j["samples"] = samples;
  j["invariantsHold"] = r.invariants_hold;
  j["violations"] = r.violations;
  return j;
}

// ---------------------------------------------------------------------------
// OFF export (display only: coordinates are rounded)

namespace detail {

inline std::string decimal(const Rational& r) {
  std::ostringstream os;
  os << std::setprecision(12) << r.convert_to<double>();
  return os.str();
}

// Orders the vertices of a polygon lying in a plane with normal n (d = 3)
// or in the plane itself (d = 2), counter-clockwise seen from outside.
inline std::vector<std::size_t> cyclic_order(const VPolytope& v, std::vector<std::size_t> idx, const Vec* normal) {
  Vec c(v.dim);
  for (auto i : idx) c = c + v.vertices[i];
  c = (Rational(1) / static_cast<long>(idx.size())) * c;
  std::vector<Vec> plane;
  if (normal) {
    plane = orthogonal_complement({*normal}, 3);
  } else {
    plane = {Vec{1, 0}, Vec{0, 1}};
  }
  auto coords = [&](std::size_t i) {
    const Vec d = v.vertices[i] - c;
    return std::make_pair(dot(d, plane[0]), dot(d, plane[1]));
  };
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return vorext::detail::angle_less(coords(a), coords(b)); });
  if (normal) {
    // Orientation: flip when (plane0 x plane1) points against the outer normal.
    const Vec& u = plane[0];
    const Vec& w = plane[1];
    const Vec cross{u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2], u[0] * w[1] - u[1] * w[0]};
    if (dot(cross, *normal) < 0) std::reverse(idx.begin(), idx.end());
  }
  return idx;
}

}  // namespace detail

/// OFF text for a polygon (d = 2, embedded at z = 0) or a 3-polytope.
inline std::string to_off(const VPolytope& v) {
  if (v.dim < 2 || v.dim > 3) throw Error("DimensionCapExceeded", "OFF export supports d = 2 and d = 3 only");
  std::ostringstream os;
  std::vector<std::vector<std::size_t>> faces;
  if (v.dim == 2) {
    std::vector<std::size_t> all(v.vertices.size());
    std::iota(all.begin(), all.end(), 0);
    faces.push_back(detail::cyclic_order(v, all, nullptr));
  } else {
    for (std::size_t f = 0; f < v.facets.size(); ++f)
      faces.push_back(detail::cyclic_order(v, v.incidence[f], &v.facets[f].normal));
  }
  os << "OFF\n" << v.vertices.size() << ' ' << faces.size() << " 0\n";
  for (const auto& x : v.vertices) {
    os << detail::decimal(x[0]) << ' ' << detail::decimal(x[1]) << ' ' << (v.dim == 3 ? detail::decimal(x[2]) : "0")
       << '\n';
  }
  for (const auto& f : faces) {
    os << f.size();
    for (auto i : f) os << ' ' << i;
    os << '\n';
  }
  return os.str();
}

}  // namespace vorext::io

#endif  // VOREXT_SERIALIZE_HPP
