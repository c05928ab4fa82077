// Exact H/V polytope engine: double-description vertex enumeration, face
// incidences, belts, shadow boundaries and the Venkov parallelotope test.

#ifndef VOREXT_POLYTOPE_HPP
#define VOREXT_POLYTOPE_HPP

#include "vorext/exact.hpp"
#include "vorext/lattice.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace vorext {

/// <normal, x> <= support
struct Inequality {
  Vec normal;
  Rational support;

  friend bool operator==(const Inequality&, const Inequality&) = default;
  friend bool operator<(const Inequality& a, const Inequality& b) {
    if (a.normal != b.normal) return a.normal < b.normal;
    return a.support < b.support;
  }
};

/// Rescales to a primitive integer normal.
inline Inequality canonical(Inequality q) {
  const Rational f = make_primitive(q.normal);
  q.support *= f;
  return q;
}

struct HPolytope {
  std::size_t dim = 0;
  std::vector<Inequality> ineqs;
};

inline constexpr std::size_t kDefaultVertexDimCap = 5;

/// Vertex representation together with its irredundant facets.
///
/// `facets` is sorted and canonical (primitive integer normals); `vertices`
/// is sorted lexicographically, so two polytopes are equal iff their vertex
/// lists are. `incidence[f]` lists the vertices lying on facet f. Facets are
/// only populated for full-dimensional polytopes.
struct VPolytope {
  std::size_t dim = 0;
  bool full_dimensional = false;
  std::vector<Inequality> facets;
  std::vector<Vec> vertices;
  std::vector<std::vector<std::size_t>> incidence;

  HPolytope h_rep() const { return {dim, facets}; }
};

/// Affine dimension of a point set (-1 when empty).
inline int affine_dim(const std::vector<Vec>& pts) {
  if (pts.empty()) return -1;
  std::vector<Vec> diffs;
  diffs.reserve(pts.size() - 1);
  for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(pts[i] - pts[0]);
  if (diffs.empty()) return 0;
  return static_cast<int>(rank(diffs));
}

namespace detail {

inline bool is_symmetric_set(const std::vector<Vec>& vs) {
  std::set<Vec> all(vs.begin(), vs.end());
  for (const auto& v : vs)
    if (!all.count(-v)) return false;
  return true;
}

inline std::vector<Vec> pick(const std::vector<Vec>& pts, const std::vector<std::size_t>& idx) {
  std::vector<Vec> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(pts[i]);
  return out;
}

// Double description on the homogenized cone
//   { (y0, x) : y0 >= 0, support_k * y0 - <normal_k, x> >= 0 }.
class DoubleDescription {
 public:
  explicit DoubleDescription(std::vector<Vec> rows) : rows_(std::move(rows)), n_(rows_.front().size()) {}

  // Returns the extreme rays, or throws when the cone is not pointed.
  std::vector<Vec> run() {
    std::vector<std::size_t> basis;
    std::vector<Vec> chosen;
    for (std::size_t k = 0; k < rows_.size() && basis.size() < n_; ++k) {
      chosen.push_back(rows_[k]);
      if (rank(chosen) == chosen.size()) {
        basis.push_back(k);
      } else {
        chosen.pop_back();
      }
    }
    if (basis.size() < n_) throw Error("UnboundedCell", "inequalities do not bound a polytope");
    const auto inv = inverse(Mat::from_rows(chosen));
    processed_.assign(rows_.size(), false);
    for (auto k : basis) processed_[k] = true;
    for (std::size_t j = 0; j < n_; ++j) {
      Vec ray(n_);
      for (std::size_t i = 0; i < n_; ++i) ray[i] = (*inv)(i, j);
      make_primitive(ray);
      add_ray(std::move(ray));
    }
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      if (processed_[k]) continue;
      insert_row(k);
      processed_[k] = true;
      if (rays_.empty()) break;
    }
    return rays_;
  }

 private:
  using Bits = boost::dynamic_bitset<>;

  void add_ray(Vec ray) {
    Bits z(rows_.size());
    for (std::size_t k = 0; k < rows_.size(); ++k)
      if (processed_[k] && dot(rows_[k], ray) == 0) z.set(k);
    rays_.push_back(std::move(ray));
    zeros_.push_back(std::move(z));
  }

  void insert_row(std::size_t k) {
    std::vector<Rational> val(rays_.size());
    std::vector<std::size_t> pos, neg, zer;
    for (std::size_t r = 0; r < rays_.size(); ++r) {
      val[r] = dot(rows_[k], rays_[r]);
      const int s = val[r].sign();
      (s > 0 ? pos : s < 0 ? neg : zer).push_back(r);
    }
    std::vector<Vec> next_rays;
    std::vector<Bits> next_zeros;
    for (auto r : pos) {
      next_rays.push_back(rays_[r]);
      next_zeros.push_back(zeros_[r]);
    }
    for (auto r : zer) {
      next_rays.push_back(rays_[r]);
      Bits z = zeros_[r];
      z.set(k);
      next_zeros.push_back(std::move(z));
    }
    const std::size_t need = n_ >= 2 ? n_ - 2 : 0;
    for (auto rp : pos) {
      for (auto rn : neg) {
        const Bits common = zeros_[rp] & zeros_[rn];
        if (common.count() < need) continue;
        bool adjacent = true;
        for (std::size_t o = 0; o < rays_.size() && adjacent; ++o) {
          if (o == rp || o == rn) continue;
          if (common.is_subset_of(zeros_[o])) adjacent = false;
        }
        if (!adjacent) continue;
        Vec ray = val[rp] * rays_[rn] - val[rn] * rays_[rp];
        make_primitive(ray);
        Bits z = common;
        z.set(k);
        next_rays.push_back(std::move(ray));
        next_zeros.push_back(std::move(z));
      }
    }
    rays_ = std::move(next_rays);
    zeros_ = std::move(next_zeros);
  }

  std::vector<Vec> rows_;
  std::size_t n_;
  std::vector<bool> processed_;
  std::vector<Vec> rays_;
  std::vector<Bits> zeros_;
};

}  // namespace detail

/// Sorts canonically and drops exact duplicates; of two inequalities with
/// the same primitive normal only the tighter survives.
inline HPolytope normalized(const HPolytope& h) {
  std::map<Vec, Rational> best;
  for (const auto& q : h.ineqs) {
    if (q.normal.size() != h.dim) throw Error("DimensionMismatch", "inequality of wrong length");
    if (is_zero(q.normal)) {
      if (q.support < 0) throw Error("EmptyPolytope", "inequality 0 <= negative");
      continue;
    }
    auto c = canonical(q);
    auto [it, inserted] = best.emplace(c.normal, c.support);
    if (!inserted && c.support < it->second) it->second = c.support;
  }
  HPolytope out{h.dim, {}};
  for (auto& [n, s] : best) out.ineqs.push_back({n, s});
  return out;
}

/// P = { x : <p, x> <= a(p) for every p in normals }.
inline HPolytope build_cell(const QuadForm& a, const std::vector<LatticeVector>& normals) {
  const std::size_t d = a.dim();
  std::vector<Vec> vs;
  for (const auto& p : normals) {
    if (p.size() != d) throw Error("DimensionMismatch", "normal of wrong length");
    vs.push_back(to_vec(p));
  }
  if (!detail::is_symmetric_set(vs))
    throw Error("UnboundedCell", "normal set is not closed under negation; boundedness not certified");
  if (vs.empty() || rank(vs) < d) throw Error("UnboundedCell", "normals do not positively span the space");
  HPolytope h{d, {}};
  for (const auto& p : normals) h.ineqs.push_back({to_vec(p), a(p)});
  return h;
}

/// Exact vertex enumeration with facet incidences.
inline VPolytope enumerate_vertices(const HPolytope& input, std::size_t vertex_dim_cap = kDefaultVertexDimCap) {
  const std::size_t d = input.dim;
  if (d > vertex_dim_cap)
    throw Error("DimensionCapExceeded", "vertex enumeration capped at d <= " + std::to_string(vertex_dim_cap));
  const HPolytope h = normalized(input);
  std::vector<Vec> rows;
  Vec y0(d + 1);
  y0[0] = 1;
  rows.push_back(y0);
  for (const auto& q : h.ineqs) {
    Vec r(d + 1);
    r[0] = q.support;
    for (std::size_t i = 0; i < d; ++i) r[i + 1] = -q.normal[i];
    rows.push_back(std::move(r));
  }
  VPolytope v;
  v.dim = d;
  const auto rays = detail::DoubleDescription(std::move(rows)).run();
  for (const auto& r : rays) {
    if (r[0] == 0) throw Error("UnboundedCell", "inequalities do not bound a polytope");
    Vec x(d);
    for (std::size_t i = 0; i < d; ++i) x[i] = r[i + 1] / r[0];
    v.vertices.push_back(std::move(x));
  }
  std::sort(v.vertices.begin(), v.vertices.end());
  v.vertices.erase(std::unique(v.vertices.begin(), v.vertices.end()), v.vertices.end());
  v.full_dimensional = affine_dim(v.vertices) == static_cast<int>(d);
  if (!v.full_dimensional) return v;

  std::set<std::vector<std::size_t>> seen;
  for (const auto& q : h.ineqs) {
    std::vector<std::size_t> tight;
    for (std::size_t i = 0; i < v.vertices.size(); ++i)
      if (dot(q.normal, v.vertices[i]) == q.support) tight.push_back(i);
    if (affine_dim(detail::pick(v.vertices, tight)) != static_cast<int>(d) - 1) continue;
    if (!seen.insert(tight).second) continue;
    v.facets.push_back(q);
    v.incidence.push_back(std::move(tight));
  }
  return v;
}

/// max over vertices of <q, x>.
inline Rational support_value(const VPolytope& v, const Vec& q) {
  if (v.vertices.empty()) throw Error("EmptyPolytope", "support of an empty vertex set");
  Rational best = dot(q, v.vertices.front());
  for (const auto& x : v.vertices) best = std::max(best, dot(q, x));
  return best;
}

// ---------------------------------------------------------------------------
// Faces

struct Face {
  std::vector<std::size_t> vertices;  // sorted indices into VPolytope::vertices
  std::vector<std::size_t> facets;    // indices of facets containing the face
  std::vector<Vec> normals;           // normals of those facets
  int dim = -1;
  std::vector<Vec> direction;  // rref basis of the linear span of the face

  friend bool operator==(const Face& a, const Face& b) { return a.vertices == b.vertices; }
};

inline Face make_face(const VPolytope& v, std::vector<std::size_t> verts) {
  Face f;
  std::sort(verts.begin(), verts.end());
  f.vertices = std::move(verts);
  const auto pts = detail::pick(v.vertices, f.vertices);
  f.dim = affine_dim(pts);
  std::vector<Vec> diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(pts[i] - pts[0]);
  f.direction = row_space_basis(diffs);
  for (std::size_t k = 0; k < v.facets.size(); ++k) {
    if (std::includes(v.incidence[k].begin(), v.incidence[k].end(), f.vertices.begin(), f.vertices.end())) {
      f.facets.push_back(k);
      f.normals.push_back(v.facets[k].normal);
    }
  }
  return f;
}

/// P intersected with the hyperplane <p, x> = supp, if that hyperplane supports P.
inline std::optional<Face> contact_face(const VPolytope& v, const Vec& p, const Rational& supp) {
  if (v.vertices.empty() || support_value(v, p) != supp) return std::nullopt;
  std::vector<std::size_t> tight;
  for (std::size_t i = 0; i < v.vertices.size(); ++i)
    if (dot(p, v.vertices[i]) == supp) tight.push_back(i);
  return make_face(v, std::move(tight));
}

inline std::optional<Face> contact_face(const VPolytope& v, const LatticeVector& p, const Rational& supp) {
  return contact_face(v, to_vec(p), supp);
}

/// All nonempty proper faces, ordered by decreasing dimension then vertex set.
inline std::vector<Face> all_faces(const VPolytope& v) {
  std::set<std::vector<std::size_t>> known(v.incidence.begin(), v.incidence.end());
  std::vector<std::vector<std::size_t>> frontier(v.incidence.begin(), v.incidence.end());
  while (!frontier.empty()) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& f : frontier) {
      for (const auto& g : v.incidence) {
        std::vector<std::size_t> meet;
        std::set_intersection(f.begin(), f.end(), g.begin(), g.end(), std::back_inserter(meet));
        if (meet.empty() || meet.size() == f.size()) continue;
        if (known.insert(meet).second) next.push_back(std::move(meet));
      }
    }
    frontier = std::move(next);
  }
  std::vector<Face> out;
  for (const auto& s : known) out.push_back(make_face(v, s));
  std::stable_sort(out.begin(), out.end(), [](const Face& a, const Face& b) { return a.dim > b.dim; });
  return out;
}

/// All faces of dimension d-2.
inline std::vector<Face> codim2_faces(const VPolytope& v) {
  const int target = static_cast<int>(v.dim) - 2;
  std::set<std::vector<std::size_t>> seen;
  std::vector<Face> out;
  for (std::size_t i = 0; i < v.incidence.size(); ++i) {
    for (std::size_t j = i + 1; j < v.incidence.size(); ++j) {
      std::vector<std::size_t> meet;
      std::set_intersection(v.incidence[i].begin(), v.incidence[i].end(), v.incidence[j].begin(), v.incidence[j].end(),
                            std::back_inserter(meet));
      if (meet.empty() || seen.count(meet)) continue;
      if (affine_dim(detail::pick(v.vertices, meet)) != target) continue;
      seen.insert(meet);
      out.push_back(make_face(v, std::move(meet)));
    }
  }
  std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) { return a.vertices < b.vertices; });
  return out;
}

// ---------------------------------------------------------------------------
// Belts

struct Belt {
  std::vector<Vec> direction;        // common direction space of its codim-2 faces
  std::vector<std::size_t> facets;   // cyclic order
  std::vector<std::size_t> faces;    // indices into codim2_faces()
  std::size_t length() const noexcept { return facets.size(); }
};

namespace detail {

// Half-plane then cross-product comparison; no trigonometry.
inline bool angle_less(const std::pair<Rational, Rational>& a, const std::pair<Rational, Rational>& b) {
  auto upper = [](const std::pair<Rational, Rational>& p) {
    return p.second > 0 || (p.second == 0 && p.first > 0);
  };
  const bool ua = upper(a), ub = upper(b);
  if (ua != ub) return ua;
  return a.first * b.second - a.second * b.first > 0;
}

}  // namespace detail

/// Groups codim-2 faces by direction space; each group's facets form a belt.
inline std::vector<Belt> belts(const VPolytope& v, const std::vector<Face>& faces) {
  if (v.dim < 2) throw Error("DimensionMismatch", "belts need d >= 2");
  std::map<std::vector<Vec>, Belt> groups;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    auto& b = groups[faces[i].direction];
    b.direction = faces[i].direction;
    b.faces.push_back(i);
    for (auto f : faces[i].facets)
      if (std::find(b.facets.begin(), b.facets.end(), f) == b.facets.end()) b.facets.push_back(f);
  }
  std::vector<Belt> out;
  for (auto& [dir, b] : groups) {
    const auto plane = orthogonal_complement(dir, v.dim);
    if (plane.size() == 2) {
      auto coords = [&](std::size_t f) {
        return std::make_pair(dot(v.facets[f].normal, plane[0]), dot(v.facets[f].normal, plane[1]));
      };
      std::sort(b.facets.begin(), b.facets.end(),
                [&](std::size_t x, std::size_t y) { return detail::angle_less(coords(x), coords(y)); });
    }
    out.push_back(std::move(b));
  }
  return out;
}

inline std::vector<Belt> belts(const VPolytope& v) { return belts(v, codim2_faces(v)); }

// ---------------------------------------------------------------------------
// Parallelotope test

enum class FailureKind { CentralSymmetry, FacetSymmetry, Belt };

inline const char* to_string(FailureKind k) {
  switch (k) {
    case FailureKind::CentralSymmetry: return "CentralSymmetry";
    case FailureKind::FacetSymmetry: return "FacetSymmetry";
    case FailureKind::Belt: return "Belt";
  }
  return "?";
}

struct ParallelotopeFailure {
  FailureKind kind;
  std::size_t index = 0;   // facet or belt index
  std::size_t length = 0;  // belt length, for Belt failures
};

struct ParallelotopeVerdict {
  bool ok = true;
  std::vector<ParallelotopeFailure> failures;  // central symmetry, then facets, then belts

  const ParallelotopeFailure* failure() const { return failures.empty() ? nullptr : &failures.front(); }

  std::optional<ParallelotopeFailure> belt_failure() const {
    for (const auto& f : failures)
      if (f.kind == FailureKind::Belt) return f;
    return std::nullopt;
  }
};

inline bool centrally_symmetric(const std::vector<Vec>& pts) {
  if (pts.empty()) return true;
  Vec c(pts.front().size());
  for (const auto& p : pts) c = c + p;
  const Rational inv = Rational(1) / static_cast<long>(pts.size());
  c = inv * c;
  std::set<Vec> all(pts.begin(), pts.end());
  for (const auto& p : pts)
    if (!all.count(Rational(2) * c - p)) return false;
  return true;
}

/// Venkov's criterion: central symmetry, centrally symmetric facets, belts of length 4 or 6.
inline ParallelotopeVerdict is_parallelotope(const VPolytope& v) {
  if (!v.full_dimensional) throw Error("NotFullDimensional", "parallelotope test needs a full-dimensional polytope");
  ParallelotopeVerdict verdict;
  if (!centrally_symmetric(v.vertices)) verdict.failures.push_back({FailureKind::CentralSymmetry, 0, 0});
  for (std::size_t f = 0; f < v.facets.size(); ++f)
    if (!centrally_symmetric(detail::pick(v.vertices, v.incidence[f])))
      verdict.failures.push_back({FailureKind::FacetSymmetry, f, 0});
  if (v.dim >= 2) {
    const auto bs = belts(v);
    for (std::size_t i = 0; i < bs.size(); ++i)
      if (bs[i].length() != 4 && bs[i].length() != 6)
        verdict.failures.push_back({FailureKind::Belt, i, bs[i].length()});
  }
  verdict.ok = verdict.failures.empty();
  return verdict;
}

// ---------------------------------------------------------------------------
// Irreducibility graph G(P)

struct IrreducibilityGraph {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (facet, antipodal facet), first < second
  std::vector<std::vector<std::size_t>> adjacency;         // over pair indices
  bool connected = false;
};

/// Vertices are antipodal facet pairs; two are joined when they share a
/// codim-2 face lying in a 6-belt.
inline IrreducibilityGraph irreducibility_graph(const VPolytope& v) {
  if (!is_parallelotope(v).ok) throw Error("NotParallelotope", "irreducibility graph needs a parallelotope");
  IrreducibilityGraph g;
  std::vector<std::size_t> pair_of(v.facets.size(), static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < v.facets.size(); ++i) {
    if (pair_of[i] != static_cast<std::size_t>(-1)) continue;
    const Vec anti = -v.facets[i].normal;
    for (std::size_t j = i + 1; j < v.facets.size(); ++j) {
      if (v.facets[j].normal == anti) {
        pair_of[i] = pair_of[j] = g.pairs.size();
        g.pairs.emplace_back(i, j);
        break;
      }
    }
    if (pair_of[i] == static_cast<std::size_t>(-1)) throw Error("NotParallelotope", "facet without antipode");
  }
  std::vector<std::set<std::size_t>> adj(g.pairs.size());
  const auto faces = codim2_faces(v);
  for (const auto& b : belts(v, faces)) {
    if (b.length() != 6) continue;
    for (auto fi : b.faces) {
      const auto& fs = faces[fi].facets;
      for (std::size_t x = 0; x < fs.size(); ++x)
        for (std::size_t y = x + 1; y < fs.size(); ++y) {
          const auto px = pair_of[fs[x]], py = pair_of[fs[y]];
          if (px == py) continue;
          adj[px].insert(py);
          adj[py].insert(px);
        }
    }
  }
  for (const auto& s : adj) g.adjacency.emplace_back(s.begin(), s.end());
  std::vector<bool> seen(g.pairs.size(), false);
  std::vector<std::size_t> stack{0};
  if (!g.pairs.empty()) seen[0] = true;
  std::size_t reached = g.pairs.empty() ? 0 : 1;
  while (!stack.empty() && !g.pairs.empty()) {
    const auto u = stack.back();
    stack.pop_back();
    for (auto w : g.adjacency[u])
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        stack.push_back(w);
      }
  }
  g.connected = !g.pairs.empty() && reached == g.pairs.size();
  return g;
}

// ---------------------------------------------------------------------------
// Shadow boundary and face classification

/// True when a line in direction e through a relative-interior point of F
/// meets P only inside F: either every tight normal is orthogonal to e, or
/// the tight normals take both signs against e.
inline bool in_shadow_boundary(const Face& f, const Vec& e) {
  bool pos = false, neg = false;
  for (const auto& n : f.normals) {
    const int s = dot(n, e).sign();
    pos = pos || s > 0;
    neg = neg || s < 0;
  }
  return (pos && neg) || (!pos && !neg);
}

inline bool is_parallel(const Face& f, const Vec& e) {
  auto with = f.direction;
  with.push_back(e);
  return rank(with) == f.direction.size();
}

enum class FaceSumKind { ParallelExtension, Shift, DirectSum };

inline const char* to_string(FaceSumKind k) {
  switch (k) {
    case FaceSumKind::ParallelExtension: return "ParallelExtension";
    case FaceSumKind::Shift: return "Shift";
    case FaceSumKind::DirectSum: return "DirectSum";
  }
  return "?";
}

/// How F changes in P + z(e).
inline FaceSumKind classify_face(const Face& f, const Vec& e) {
  if (is_zero(e)) throw Error("ZeroDirection", "direction must be nonzero");
  if (is_parallel(f, e)) return FaceSumKind::ParallelExtension;
  return in_shadow_boundary(f, e) ? FaceSumKind::DirectSum : FaceSumKind::Shift;
}

struct ShadowFace {
  Face face;
  bool parallel = false;
};

inline std::vector<ShadowFace> shadow_boundary(const VPolytope& v, const Vec& e) {
  if (is_zero(e)) throw Error("ZeroDirection", "direction must be nonzero");
  std::vector<ShadowFace> out;
  for (auto& f : all_faces(v)) {
    if (!in_shadow_boundary(f, e)) continue;
    const bool par = is_parallel(f, e);
    out.push_back({std::move(f), par});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Neighbour across a contact facet

/// Index of the facet with normal direction p and support a(p), if any.
inline std::optional<std::size_t> find_facet(const VPolytope& v, const Vec& p, const Rational& supp) {
  const auto c = canonical({p, supp});
  for (std::size_t k = 0; k < v.facets.size(); ++k)
    if (v.facets[k] == c) return k;
  return std::nullopt;
}

/// True iff P and P + 2Ap meet exactly in the facet F(p).
inline bool adjacency_check(const QuadForm& a, const VPolytope& v, const LatticeVector& p) {
  const Vec pv = to_vec(p);
  const auto facet = find_facet(v, pv, a(p));
  if (!facet) throw Error("NotFacetNormal", "vector is not the normal of a facet with support a(p)");
  const Vec shift = Rational(2) * a.apply(pv);
  HPolytope both{v.dim, v.facets};
  for (const auto& q : v.facets) both.ineqs.push_back({q.normal, q.support + dot(q.normal, shift)});
  const auto meet = enumerate_vertices(both, v.dim);
  return meet.vertices == detail::pick(v.vertices, v.incidence[*facet]);
}

}  // namespace vorext

#endif  // VOREXT_POLYTOPE_HPP
