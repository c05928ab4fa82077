// One PASS/FAIL line per acceptance criterion; exit status is nonzero if any fails.

#include "vorext/vorext.hpp"

#include "oracles.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

using namespace vorext;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void fail(const std::string& why) {
    if (ok) detail << "first failure: " << why << "; ";
    ok = false;
  }
};

VPolytope cell_of(const QuadForm& a) { return enumerate_vertices(build_cell(a, facet_normals(coset_minima(a)))); }

// 1. Every free direction of A2, A3, D4 at every sampled weight: both
//    constructions agree and the sum passes the parallelotope test.
void forward(Outcome& out) {
  std::size_t runs = 0;
  for (const auto* name : {"A2", "A3", "D4"}) {
    const auto a = catalog(name);
    const auto cell = cell_of(a);
    const auto ds = dual_set(facet_normals(coset_minima(a)));
    for (const auto& e : ds.members) {
      for (const auto& b : default_b_samples()) {
        const Direction dir(e, b);
        const auto sum = sum_with_segment(cell, dir);
        const auto perturbed = enumerate_vertices(voronoi_of_sum_form(a, dir).h);
        ++runs;
        if (sum.v.vertices != perturbed.vertices) out.fail(std::string(name) + " sum differs from perturbed cell");
        if (!is_parallelotope(sum.v).ok) out.fail(std::string(name) + " sum is not a parallelotope");
      }
    }
    out.detail << name << ": " << ds.members.size() << " directions; ";
  }
  out.detail << runs << " (e, b) pairs";
}

// 2. Random non-normalizable directions on irreducible cells produce a sum
//    with a belt of length other than 4 or 6.
void converse(Outcome& out) {
  std::mt19937 rng(20240611);
  std::uniform_int_distribution<int> coord(-4, 4);
  for (const auto* name : {"A2", "A3", "D4"}) {
    const auto a = catalog(name);
    const auto normals = facet_normals(coset_minima(a));
    const auto cell = enumerate_vertices(build_cell(a, normals));
    if (!irreducibility_graph(cell).connected) out.fail(std::string(name) + " is not irreducible");
    int found = 0;
    std::map<std::size_t, int> lengths;
    while (found < 50) {
      Vec e(a.dim());
      for (auto& x : e) x = coord(rng);
      if (is_zero(e) || normalize_direction(e, normals).ok) continue;
      ++found;
      const auto verdict = is_parallelotope(sum_with_segment(cell, Direction(e, 1)).v);
      const auto belt = verdict.belt_failure();
      if (verdict.ok || !belt || belt->length == 4 || belt->length == 6) {
        out.fail(std::string(name) + " direction without a bad belt");
        continue;
      }
      ++lengths[belt->length];
    }
    out.detail << name << ": 50 directions, witness belt lengths {";
    for (auto [len, n] : lengths) out.detail << len << ":" << n << " ";
    out.detail << "}; ";
  }
}

// 3. E6* and E7* have no free directions.
void empty_dual_sets(Outcome& out) {
  for (const auto* name : {"E6*", "E7*"}) {
    const auto normals = facet_normals(coset_minima(catalog(name)));
    const auto ds = dual_set(normals);
    out.detail << name << ": " << normals.size() << " facets, dual set " << ds.members.size() << "; ";
    if (!ds.members.empty()) out.fail(std::string(name) + " has a free direction");
  }
}

// 4. D4, D5, E6, E7 have free directions.
void nonempty_dual_sets(Outcome& out) {
  for (const auto* name : {"D4", "D5", "E6", "E7"}) {
    const auto ds = dual_set(facet_normals(coset_minima(catalog(name))));
    out.detail << name << ": " << ds.members.size() << "; ";
    if (ds.members.empty()) out.fail(std::string(name) + " has no free direction");
  }
}

// 5. Random forms against the box-scan and Minkowski-hull oracles.
void oracles(Outcome& out) {
  std::mt19937 rng(777);
  std::size_t sums = 0;
  for (const std::size_t d : {3u, 4u}) {
    for (int t = 0; t < 25; ++t) {
      const auto a = oracle::random_form(d, rng);
      const auto cs = coset_minima(a);
      const auto brute = oracle::box_scan_minima(a, oracle::safe_box_radius(a, d == 3 ? 6 : 4));
      for (const auto& c : cs.classes)
        if (c.minima != brute.at(c.mask).minima || c.min_norm != brute.at(c.mask).norm)
          out.fail("coset minima differ from box scan");
      if (d != 3) continue;
      const auto cell = enumerate_vertices(build_cell(a, facet_normals(cs)));
      auto members = dual_set(facet_normals(cs)).members;
      std::shuffle(members.begin(), members.end(), rng);
      if (members.size() > 5) members.resize(5);
      for (const auto& e : members) {
        const Direction dir(e, Rational(1 + t % 3, 1 + t % 2));
        std::vector<Vec> pts;
        for (const auto& x : cell.vertices) {
          pts.push_back(x + dir.b * dir.e);
          pts.push_back(x - dir.b * dir.e);
        }
        const auto hull = oracle::brute_force_hull(pts);
        const auto sum = sum_with_segment(cell, dir);
        ++sums;
        if (hull != std::set<Inequality>(sum.v.facets.begin(), sum.v.facets.end()))
          out.fail("segment sum facets differ from the hull oracle");
      }
    }
  }
  out.detail << "50 forms checked against box scan; " << sums << " d=3 sums checked against hull";
}

// 6. Inclusion of sums, layer integrality, segment recovery, transversal
//    shadow faces, and reducibility classification.
void lemma_suite(Outcome& out) {
  std::mt19937 rng(4242);
  std::uniform_int_distribution<int> coord(-30, 30);
  std::size_t subset = 0, layers = 0, segments = 0, outside = 0, shadow = 0;
  for (const auto* name : {"Z2", "Z3", "A2", "A3", "D4", "A3*"}) {
    const auto a = catalog(name);
    const auto cs = coset_minima(a);
    const auto normals = facet_normals(cs);
    const auto h = build_cell(a, normals);
    const auto cell = enumerate_vertices(h);
    for (int t = 0; t < 3; ++t) {
      ++subset;
      if (!subset_check(a, oracle::random_form(a.dim(), rng), normals).ok) out.fail("sum inclusion violated");
    }
    for (const auto& e : dual_set(normals).members) {
      const Vec ev = to_vec(e);
      for (int t = 0; t < 200; ++t) {
        LatticeVector v(a.dim());
        for (auto& x : v) x = coord(rng);
        try {
          layer_index(ev, v);
          ++layers;
        } catch (const Error&) {
          out.fail("non-integral layer");
        }
      }
      const Direction dir(e, 2);
      std::optional<HPolytope> seg;
      try {
        seg = segment_as_polytope(dir, normals);
      } catch (const Error&) {
        ++outside;
        // Only the reducible cubic lattices lack orthogonal normals spanning e-perp.
        if (name[0] != 'Z') out.fail(std::string(name) + ": free direction outside the segment hypothesis");
      }
      if (seg) {
        const auto& seg_h = *seg;
        std::vector<Vec> expected{dir.b * ev, -(dir.b * ev)};
        std::sort(expected.begin(), expected.end());
        ++segments;
        if (enumerate_vertices(seg_h).vertices != expected) out.fail("segment not recovered");
        ++subset;
        if (!subset_check(h, seg_h).ok) out.fail("cell plus segment inclusion violated");
      }
      const auto l8 = lemma_l8_check(a, cs, cell, ev);
      shadow += l8.faces_checked;
      if (!l8.ok) out.fail(std::string(name) + ": " + l8.violations.front());
    }
  }
  for (const auto* name : {"Z2", "Z3", "Z4"})
    if (irreducibility_graph(cell_of(catalog(name))).connected) out.fail(std::string(name) + " classified irreducible");
  for (const auto* name : {"A2", "A3", "D4"})
    if (!irreducibility_graph(cell_of(catalog(name))).connected) out.fail(std::string(name) + " classified reducible");
  out.detail << subset << " inclusion checks, " << layers << " layer checks, " << segments << " segments (" << outside
             << " directions outside the segment hypothesis), " << shadow
             << " transversal shadow faces; Z2-Z4 reducible, A2/A3/D4 irreducible";
}

// 7. Square plus a non-normalizable segment is a parallelotope; the report
//    must say the theorem does not apply.
void reducible_caveat(Outcome& out) {
  const auto rep = check_theorem(catalog("Z2"), {2, 1}, {1});
  if (rep.normalization.ok) out.fail("(2,1) normalized");
  if (rep.irreducible_input != false) out.fail("square not reported reducible");
  if (rep.samples.empty() || !rep.samples[0].parallelotope.ok) out.fail("sum is not a parallelotope");
  if (!rep.theorem_silent) out.fail("report not flagged theorem-silent");
  if (!rep.invariants_hold) out.fail("report invariants violated");
  out.detail << "sum facets " << (rep.samples.empty() ? 0 : rep.samples[0].sum.ineqs.size()) << ", theorem-silent "
             << (rep.theorem_silent ? "yes" : "no");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"forward direction on A2, A3, D4", forward},
      {"converse on random non-normalizable directions", converse},
      {"E6* and E7* have empty dual sets", empty_dual_sets},
      {"D4, D5, E6, E7 have nonempty dual sets", nonempty_dual_sets},
      {"random forms match brute-force oracles", oracles},
      {"lemma suite and reducibility", lemma_suite},
      {"reducible square is theorem-silent", reducible_caveat},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(out);
    } catch (const std::exception& ex) {
      out.fail(std::string("exception: ") + ex.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all = all && out.ok;
    std::cout << (out.ok ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " ("
              << std::fixed << std::setprecision(2) << secs << " s) " << out.detail.str() << std::endl;
  }
  return all ? 0 : 1;
}
