// Segments, their rank-one forms, the dual set of a facet-normal set, the two
// constructions of P(a) + b z(e), and the checker tying them together.

#ifndef VOREXT_EXTENSION_HPP
#define VOREXT_EXTENSION_HPP

#include "vorext/exact.hpp"
#include "vorext/lattice.hpp"
#include "vorext/polytope.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace vorext {

/// The segment b z(e) = { l e : -b <= l <= b }.
struct Direction {
  Vec e;
  Rational b = 1;

  Direction() = default;
  Direction(Vec e_, Rational b_) : e(std::move(e_)), b(std::move(b_)) {
    if (is_zero(e)) throw Error("ZeroDirection", "segment direction must be nonzero");
    if (b <= 0) throw Error("InvalidWeight", "segment weight must be positive");
  }
  Direction(const IntVec& e_, Rational b_) : Direction(to_vec(e_), std::move(b_)) {}
};

/// b |<p, e>|: the support function of the segment, zero when p is orthogonal to e.
inline Rational f_e(const LatticeVector& p, const Direction& dir) { return dir.b * abs(dot(p, dir.e)); }
inline Rational f_e(const Vec& p, const Direction& dir) { return dir.b * abs(dot(p, dir.e)); }

/// b <p, e>^2.
inline Rational a_e(const LatticeVector& p, const Direction& dir) {
  const Rational t = dot(p, dir.e);
  return dir.b * t * t;
}

/// Gram matrix of a + a_e, i.e. A + b e e^T.
inline Mat rank_one_update(const QuadForm& a, const Direction& dir) {
  const std::size_t d = a.dim();
  if (dir.e.size() != d) throw Error("DimensionMismatch", "direction length differs from form dimension");
  Mat g = a.gram();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) g(i, j) += dir.b * dir.e[i] * dir.e[j];
  return g;
}

inline bool unit_product(const Rational& t) { return t == 0 || t == 1 || t == -1; }

/// Normals whose product with e lies in {0, +1, -1}.
inline std::vector<LatticeVector> p_e_set(const std::vector<LatticeVector>& normals, const Vec& e) {
  std::vector<LatticeVector> out;
  for (const auto& p : normals)
    if (unit_product(dot(p, e))) out.push_back(p);
  return out;
}

/// The segment as the H-polytope { <p, x> <= f_e(p) }. Requires normals on
/// both sides of e and enough normals orthogonal to e to span e-perp; with
/// fewer, the polytope is wider than the segment (Z^3 with e = (1,1,0)).
inline HPolytope segment_as_polytope(const Direction& dir, const std::vector<LatticeVector>& normals) {
  bool pos = false, neg = false;
  std::vector<Vec> orthogonal;
  for (const auto& p : normals) {
    const int s = dot(p, dir.e).sign();
    pos = pos || s > 0;
    neg = neg || s < 0;
    if (s == 0) orthogonal.push_back(to_vec(p));
  }
  if (!(pos && neg && !orthogonal.empty()))
    throw Error("SegmentHypothesis", "products <p, e> must take positive, negative and zero values");
  if (rank(orthogonal) + 1 != dir.e.size())
    throw Error("SegmentHypothesis", "normals orthogonal to e do not span the orthogonal complement of e");
  HPolytope h{dir.e.size(), {}};
  for (const auto& p : normals) h.ineqs.push_back({to_vec(p), f_e(p, dir)});
  return h;
}

// ---------------------------------------------------------------------------
// Dual set

struct DualSet {
  std::vector<IntVec> members;      // sorted, closed under negation, no zero vector
  std::vector<LatticeVector> basis;  // the d independent normals used

  bool contains(const IntVec& e) const { return std::binary_search(members.begin(), members.end(), e); }
};

/// Greedy lexicographic choice of d independent vectors.
inline std::vector<LatticeVector> independent_subset(std::vector<LatticeVector> vs, std::size_t d) {
  std::sort(vs.begin(), vs.end());
  std::vector<LatticeVector> basis;
  std::vector<Vec> rows;
  for (const auto& v : vs) {
    rows.push_back(to_vec(v));
    if (rank(rows) == rows.size()) {
      basis.push_back(v);
      if (basis.size() == d) break;
    } else {
      rows.pop_back();
    }
  }
  return basis;
}

/// Every nonzero e with <e, p> in {0, +1, -1} for all normals p.
///
/// Such an e is fixed by its products with d independent normals, so trying
/// all 3^d sign patterns on a basis and filtering is complete.
inline DualSet dual_set(const std::vector<LatticeVector>& normals) {
  if (normals.empty()) throw Error("RankDeficient", "empty normal set");
  const std::size_t d = normals.front().size();
  DualSet ds;
  ds.basis = independent_subset(normals, d);
  if (ds.basis.size() < d) throw Error("RankDeficient", "normals do not span the space");
  std::vector<Vec> rows;
  for (const auto& b : ds.basis) rows.push_back(to_vec(b));
  const Mat inv = *inverse(Mat::from_rows(rows));

  std::vector<int> sigma(d, -1);
  for (;;) {
    Vec rhs(d);
    bool all_zero = true;
    for (std::size_t i = 0; i < d; ++i) {
      rhs[i] = sigma[i];
      all_zero = all_zero && sigma[i] == 0;
    }
    if (!all_zero) {
      const Vec e = inv * rhs;
      bool ok = std::all_of(e.begin(), e.end(), [](const Rational& x) { return is_integral(x); });
      for (std::size_t k = 0; ok && k < normals.size(); ++k) ok = unit_product(dot(normals[k], e));
      if (ok) {
        IntVec ie(d);
        for (std::size_t i = 0; i < d; ++i) ie[i] = numerator(e[i]).convert_to<std::int64_t>();
        ds.members.push_back(std::move(ie));
      }
    }
    std::size_t i = 0;
    while (i < d && sigma[i] == 1) sigma[i++] = -1;
    if (i == d) break;
    ++sigma[i];
  }
  std::sort(ds.members.begin(), ds.members.end());
  return ds;
}

// ---------------------------------------------------------------------------
// Normalization

struct Normalization {
  bool ok = false;
  Vec e;       // eRaw / w when ok
  Rational w;  // the common nonzero |<p, eRaw>|
  std::optional<std::pair<LatticeVector, LatticeVector>> witnesses;  // distinct nonzero products
  std::string reason;
};

/// Rescales eRaw so that its products with the normals lie in {0, +1, -1},
/// which is possible iff all nonzero |<p, eRaw>| agree.
inline Normalization normalize_direction(const Vec& e_raw, const std::vector<LatticeVector>& normals) {
  if (is_zero(e_raw)) throw Error("ZeroDirection", "direction must be nonzero");
  Normalization out;
  std::vector<LatticeVector> sorted = normals;
  std::sort(sorted.begin(), sorted.end());
  std::optional<std::pair<LatticeVector, Rational>> first;
  // Positive products first; for a symmetric set the second pass adds nothing.
  for (const int side : {1, -1}) {
    for (const auto& p : sorted) {
      const Rational t = dot(p, e_raw);
      if (t.sign() != side) continue;
      if (!first) {
        first.emplace(p, abs(t));
      } else if (abs(t) != first->second) {
        out.witnesses.emplace(first->first, p);
        out.reason = "distinct nonzero products";
        return out;
      }
    }
  }
  if (!first) {
    out.reason = "direction orthogonal to every normal";
    return out;
  }
  out.w = first->second;
  out.e = (Rational(1) / out.w) * e_raw;
  for (const auto& x : out.e) {
    if (!is_integral(x)) {
      out.reason = "normalized direction is not integral";
      return out;
    }
  }
  out.ok = true;
  return out;
}

// ---------------------------------------------------------------------------
// The two constructions of P + b z(e)

struct SegmentSum {
  VPolytope v;                   // vertices and irredundant facets of the sum
  std::vector<Inequality> added;  // direct-sum facet normals G + b z(e), canonical
  HPolytope h_rep() const { return v.h_rep(); }
};

/// Minkowski sum of a full-dimensional polytope with b z(e), facet by facet:
/// each facet moves outward by f_e(p), and each transversal (d-2)-face G of
/// the shadow boundary contributes the facet G + b z(e), whose normal is the
/// combination of G's two facet normals orthogonal to e.
inline SegmentSum sum_with_segment(const VPolytope& cell, const Direction& dir) {
  if (!cell.full_dimensional) throw Error("NotFullDimensional", "sum_with_segment needs a full-dimensional cell");
  if (dir.e.size() != cell.dim) throw Error("DimensionMismatch", "direction length differs from cell dimension");
  SegmentSum out;
  HPolytope h{cell.dim, {}};
  for (const auto& q : cell.facets) h.ineqs.push_back({q.normal, q.support + f_e(q.normal, dir)});
  std::set<Inequality> added;
  for (const auto& g : codim2_faces(cell)) {
    if (is_parallel(g, dir.e) || !in_shadow_boundary(g, dir.e)) continue;
    for (std::size_t x = 0; x < g.normals.size(); ++x) {
      for (std::size_t y = x + 1; y < g.normals.size(); ++y) {
        const Rational c1 = dot(g.normals[x], dir.e), c2 = dot(g.normals[y], dir.e);
        if (c1.sign() * c2.sign() >= 0) continue;
        const Vec q = abs(c2) * g.normals[x] + abs(c1) * g.normals[y];
        added.insert(canonical({q, support_value(cell, q)}));
      }
    }
  }
  h.ineqs.insert(h.ineqs.end(), added.begin(), added.end());
  out.v = enumerate_vertices(h, cell.dim);
  out.added.assign(added.begin(), added.end());
  return out;
}

struct PerturbedCell {
  QuadForm form;
  ContactVectorSet contacts;
  std::vector<LatticeVector> normals;
  HPolytope h;
};

/// Voronoi cell of a + a_e through the full coset-minima pipeline.
inline PerturbedCell voronoi_of_sum_form(const QuadForm& a, const Direction& dir,
                                         std::size_t coset_cap = kDefaultCosetDimCap) {
  for (const auto& x : dir.e)
    if (!is_integral(x)) throw Error("NotNormalized", "direction must be integral");
  QuadForm sum(rank_one_update(a, dir));
  auto cs = coset_minima(sum, coset_cap);
  auto normals = facet_normals(cs);
  auto h = build_cell(sum, normals);
  return {std::move(sum), std::move(cs), std::move(normals), std::move(h)};
}

// ---------------------------------------------------------------------------
// Inclusion P(a1) + P(a2) within P(a1 + a2)

struct SubsetResult {
  bool ok = true;
  std::size_t pairs_checked = 0;
  std::optional<std::pair<Vec, Vec>> witness;
};

/// Both polytopes must list the same normals in the same order.
inline SubsetResult subset_check(const HPolytope& h1, const HPolytope& h2) {
  if (h1.dim != h2.dim || h1.ineqs.size() != h2.ineqs.size())
    throw Error("NormalSetMismatch", "polytopes use different normal sets");
  HPolytope sum{h1.dim, {}};
  for (std::size_t k = 0; k < h1.ineqs.size(); ++k) {
    if (h1.ineqs[k].normal != h2.ineqs[k].normal) throw Error("NormalSetMismatch", "polytopes use different normal sets");
    sum.ineqs.push_back({h1.ineqs[k].normal, h1.ineqs[k].support + h2.ineqs[k].support});
  }
  const auto v1 = enumerate_vertices(h1, h1.dim);
  const auto v2 = enumerate_vertices(h2, h2.dim);
  SubsetResult r;
  for (const auto& x1 : v1.vertices) {
    for (const auto& x2 : v2.vertices) {
      ++r.pairs_checked;
      const Vec x = x1 + x2;
      for (const auto& q : sum.ineqs) {
        if (dot(q.normal, x) > q.support) {
          r.ok = false;
          r.witness.emplace(x1, x2);
          return r;
        }
      }
    }
  }
  return r;
}

inline SubsetResult subset_check(const QuadForm& a1, const QuadForm& a2, const std::vector<LatticeVector>& normals) {
  return subset_check(build_cell(a1, normals), build_cell(a2, normals));
}

// ---------------------------------------------------------------------------
// Transversal shadow faces are contact faces

struct ContactFaceCheck {
  bool ok = true;
  std::size_t faces_checked = 0;
  std::vector<std::string> violations;
};

/// For e in the dual set: every transversal (d-2)-face in the shadow boundary
/// is the contact face F(p1 + p2) of a contact vector orthogonal to e, and
/// lies in a 4-belt.
inline ContactFaceCheck lemma_l8_check(const QuadForm& a, const ContactVectorSet& cs, const VPolytope& cell,
                                       const Vec& e) {
  std::vector<LatticeVector> normals = facet_normals(cs);
  for (const auto& p : normals)
    if (!unit_product(dot(p, e))) throw Error("NotInDualSet", "direction is not in the dual set of the facet normals");
  ContactFaceCheck out;
  const auto faces = codim2_faces(cell);
  const auto bs = belts(cell, faces);
  std::vector<std::size_t> belt_len(faces.size(), 0);
  for (const auto& b : bs)
    for (auto f : b.faces) belt_len[f] = b.length();
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const auto& g = faces[i];
    if (is_parallel(g, e) || !in_shadow_boundary(g, e)) continue;
    ++out.faces_checked;
    auto fail = [&](const std::string& why) {
      out.ok = false;
      out.violations.push_back("face " + std::to_string(i) + ": " + why);
    };
    if (g.normals.size() != 2) {
      fail("expected exactly two incident facets");
      continue;
    }
    const Vec sum = g.normals[0] + g.normals[1];
    LatticeVector p(sum.size());
    for (std::size_t k = 0; k < sum.size(); ++k) p[k] = numerator(sum[k]).convert_to<std::int64_t>();
    if (dot(p, e) != 0) fail("<p1 + p2, e> != 0");
    if (!cs.contains(p)) fail("p1 + p2 is not a contact vector");
    const auto f = contact_face(cell, p, a(p));
    if (!f || f->vertices != g.vertices) fail("face is not the contact face F(p1 + p2)");
    if (belt_len[i] != 4) fail("face lies in a belt of length " + std::to_string(belt_len[i]));
  }
  return out;
}

// ---------------------------------------------------------------------------
// The equivalence checker

struct SampleResult {
  Rational b;
  HPolytope sum;                  // irredundant H-rep of P + b z(e)
  std::optional<HPolytope> cell;  // Voronoi cell of a + a_e, when e normalizes
  std::optional<bool> equal;
  std::string witness;  // first discrepancy when not equal
  ParallelotopeVerdict parallelotope;
  std::vector<LatticeVector> perturbed_normals;
};

struct ExtensionReport {
  Mat gram;
  Vec e_raw;
  std::vector<Rational> b_samples;

  Normalization normalization;
  bool in_dual_set = false;
  std::vector<LatticeVector> violating_normals;  // products outside {0, +1, -1}

  bool vrep_available = false;  // false above the vertex-enumeration cap
  std::optional<bool> irreducible_input;
  bool theorem_silent = false;  // reducible input and e does not normalize
  std::optional<bool> b_stable;  // facet normals of a + a_e identical across b
  std::vector<SampleResult> samples;

  bool invariants_hold = true;
  std::vector<std::string> violations;
};

struct CheckOptions {
  std::size_t vertex_dim_cap = kDefaultVertexDimCap;
  std::size_t coset_dim_cap = kDefaultCosetDimCap;
};

inline std::vector<Rational> default_b_samples() { return {Rational(1, 2), Rational(1), Rational(3)}; }

namespace detail {

inline std::string render(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s + ")";
}

inline std::string first_difference(const std::vector<Vec>& lhs, const std::vector<Vec>& rhs) {
  const std::set<Vec> r(rhs.begin(), rhs.end()), l(lhs.begin(), lhs.end());
  for (const auto& x : lhs)
    if (!r.count(x)) return "vertex " + render(x) + " of the sum is not a vertex of the perturbed cell";
  for (const auto& x : rhs)
    if (!l.count(x)) return "vertex " + render(x) + " of the perturbed cell is not a vertex of the sum";
  return {};
}

}  // namespace detail

/// Runs both directions of the equivalence for one form and one direction.
inline ExtensionReport check_theorem(const QuadForm& a, const Vec& e_raw, const std::vector<Rational>& b_samples,
                                     const CheckOptions& opt = {}) {
  if (e_raw.size() != a.dim()) throw Error("DimensionMismatch", "direction length differs from form dimension");
  if (is_zero(e_raw)) throw Error("ZeroDirection", "direction must be nonzero");
  for (const auto& b : b_samples)
    if (b <= 0) throw Error("InvalidWeight", "segment weights must be positive");

  ExtensionReport rep;
  rep.gram = a.gram();
  rep.e_raw = e_raw;
  rep.b_samples = b_samples;

  const auto cs = coset_minima(a, opt.coset_dim_cap);
  const auto normals = facet_normals(cs);
  rep.normalization = normalize_direction(e_raw, normals);
  const Vec& e = rep.normalization.ok ? rep.normalization.e : e_raw;
  for (const auto& p : normals)
    if (!unit_product(dot(p, e))) rep.violating_normals.push_back(p);
  rep.in_dual_set = rep.normalization.ok && rep.violating_normals.empty();
  if (rep.normalization.ok && !rep.in_dual_set) {
    rep.invariants_hold = false;
    rep.violations.push_back("normalized direction is not in the dual set");
  }

  rep.vrep_available = a.dim() <= opt.vertex_dim_cap;
  if (!rep.vrep_available) return rep;

  const auto cell = enumerate_vertices(build_cell(a, normals), opt.vertex_dim_cap);
  if (is_parallelotope(cell).ok) {
    rep.irreducible_input = irreducibility_graph(cell).connected;
  } else {
    rep.invariants_hold = false;
    rep.violations.push_back("input cell fails the parallelotope test");
  }
  rep.theorem_silent = !rep.normalization.ok && rep.irreducible_input == false;

  std::optional<std::vector<LatticeVector>> reference_normals;
  bool stable = true;
  for (const auto& b : b_samples) {
    const Direction dir(e, b);
    SampleResult s;
    s.b = b;
    const auto sum = sum_with_segment(cell, dir);
    s.sum = sum.h_rep();
    s.parallelotope = is_parallelotope(sum.v);
    if (rep.normalization.ok) {
      auto pc = voronoi_of_sum_form(a, dir, opt.coset_dim_cap);
      const auto pv = enumerate_vertices(pc.h, opt.vertex_dim_cap);
      s.equal = pv.vertices == sum.v.vertices;
      if (!*s.equal) s.witness = detail::first_difference(sum.v.vertices, pv.vertices);
      s.cell = pv.h_rep();
      s.perturbed_normals = pc.normals;
      if (!reference_normals) reference_normals = pc.normals;
      stable = stable && *reference_normals == pc.normals;
    }
    if (rep.in_dual_set) {
      if (s.equal != true) {
        rep.invariants_hold = false;
        rep.violations.push_back("b=" + to_string(b) + ": sum differs from the perturbed Voronoi cell");
      }
      if (!s.parallelotope.ok) {
        rep.invariants_hold = false;
        rep.violations.push_back("b=" + to_string(b) + ": sum fails the parallelotope test");
      }
    }
    if (!rep.normalization.ok && rep.irreducible_input == true && s.parallelotope.ok) {
      rep.invariants_hold = false;
      rep.violations.push_back("b=" + to_string(b) + ": irreducible cell plus non-normalizable segment is a parallelotope");
    }
    rep.samples.push_back(std::move(s));
  }
  if (rep.normalization.ok && !b_samples.empty()) rep.b_stable = stable;
  return rep;
}

}  // namespace vorext

#endif  // VOREXT_EXTENSION_HPP
