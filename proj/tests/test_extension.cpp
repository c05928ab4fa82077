#include "vorext/extension.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace vorext;

namespace {

const std::vector<LatticeVector> kSquare{{-1, 0}, {0, -1}, {0, 1}, {1, 0}};

std::vector<LatticeVector> normals_of(const std::string& name) { return facet_normals(coset_minima(catalog(name))); }

VPolytope cell_of(const QuadForm& a) { return enumerate_vertices(build_cell(a, facet_normals(coset_minima(a)))); }

std::set<Vec> facet_normal_set(const VPolytope& v) {
  std::set<Vec> out;
  for (const auto& q : v.facets) out.insert(q.normal);
  return out;
}

/// Vertex-Minkowski oracle: hull of {x + b e, x - b e}.
std::vector<Vec> minkowski_oracle(const VPolytope& v, const Vec& e, const Rational& b) {
  std::vector<Vec> pts;
  for (const auto& x : v.vertices) {
    pts.push_back(x + b * e);
    pts.push_back(x - b * e);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return oracle::hull_vertices(pts);
}

}  // namespace

TEST(Extension, FeExamples) {
  EXPECT_EQ(f_e(LatticeVector{1, 0}, Direction(IntVec{0, 1}, 1)), 0);
  EXPECT_EQ(f_e(LatticeVector{3, 0}, Direction(IntVec{1, 1}, 2)), 6);
  EXPECT_EQ(f_e(LatticeVector{1, -1}, Direction(IntVec{1, 1}, 5)), 0);
}

TEST(Extension, AeExamples) {
  EXPECT_EQ(a_e({1, 0}, Direction(IntVec{1, 1}, 1)), 1);
  EXPECT_EQ(a_e({2, 0}, Direction(IntVec{1, 1}, 1)), 4);
  EXPECT_NE(a_e({2, 0}, Direction(IntVec{1, 1}, 1)), f_e(LatticeVector{2, 0}, Direction(IntVec{1, 1}, 1)));
  EXPECT_EQ(a_e({1, -1}, Direction(IntVec{1, 1}, 7)), 0);
}

TEST(Extension, DirectionValidation) {
  EXPECT_THROW(Direction(IntVec{0, 0}, 1), Error);
  EXPECT_THROW(Direction(IntVec{1, 0}, 0), Error);
  EXPECT_THROW(Direction(IntVec{1, 0}, -1), Error);
}

TEST(Extension, PeSetExamples) {
  EXPECT_EQ(p_e_set(kSquare, {1, 1}).size(), 4u);
  EXPECT_EQ(p_e_set(kSquare, {2, 1}), (std::vector<LatticeVector>{{0, -1}, {0, 1}}));
  EXPECT_EQ(p_e_set(normals_of("A2"), {0, 1}).size(), 6u);
}

TEST(Extension, SegmentAsPolytopeExamples) {
  auto seg = enumerate_vertices(segment_as_polytope(Direction(IntVec{0, 1}, 1), kSquare));
  EXPECT_EQ(seg.vertices, (std::vector<Vec>{{0, -1}, {0, 1}}));
  EXPECT_FALSE(seg.full_dimensional);
  seg = enumerate_vertices(segment_as_polytope(Direction(IntVec{0, 1}, 3), normals_of("A2")));
  EXPECT_EQ(seg.vertices, (std::vector<Vec>{{0, -3}, {0, 3}}));
  try {
    segment_as_polytope(Direction(IntVec{1, 1}, 1), kSquare);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), "SegmentHypothesis");
  }
}

TEST(Extension, SegmentNeedsOrthogonalNormalsSpanningThePerp) {
  // All three signs occur, but only +-e3 is orthogonal to e: the inequalities
  // cut out a square, not the segment.
  const auto z3 = normals_of("Z3");
  const Direction dir(IntVec{1, 1, 0}, 1);
  HPolytope raw{3, {}};
  for (const auto& p : z3) raw.ineqs.push_back({to_vec(p), f_e(p, dir)});
  EXPECT_EQ(enumerate_vertices(raw).vertices.size(), 4u);
  try {
    segment_as_polytope(dir, z3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), "SegmentHypothesis");
  }
}

TEST(Extension, DualSetExamples) {
  const auto sq = dual_set(kSquare);
  EXPECT_EQ(sq.members,
            (std::vector<IntVec>{{-1, -1}, {-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0}, {1, 1}}));
  const auto a2 = dual_set(normals_of("A2"));
  EXPECT_EQ(a2.members, (std::vector<IntVec>{{-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0}}));
  EXPECT_FALSE(a2.contains({1, 1}));
  EXPECT_TRUE(dual_set(normals_of("E6*")).members.empty());
  try {
    dual_set({{1, 0}, {-1, 0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), "RankDeficient");
  }
}

TEST(Extension, DualSetMatchesBoxSearch) {
  // When every unit vector is a facet normal, each coordinate of a dual member
  // lies in {0, +1, -1}, so a radius-1 box is exhaustive.
  for (const auto& name : {"A2", "A3", "Z3", "A3*"}) {
    const auto normals = normals_of(name);
    const auto d = normals.front().size();
    for (std::size_t i = 0; i < d; ++i) {
      LatticeVector u(d, 0);
      u[i] = 1;
      ASSERT_TRUE(std::binary_search(normals.begin(), normals.end(), u)) << name;
    }
    std::vector<IntVec> brute;
    oracle::for_each_in_box(d, 1, [&](const LatticeVector& e) {
      if (std::all_of(e.begin(), e.end(), [](auto x) { return x == 0; })) return;
      for (const auto& p : normals)
        if (!unit_product(dot(p, e))) return;
      brute.push_back(e);
    });
    std::sort(brute.begin(), brute.end());
    EXPECT_EQ(dual_set(normals).members, brute) << name;
  }
}

TEST(Extension, NormalizeExamples) {
  const auto a2 = normals_of("A2");
  auto n = normalize_direction({0, 2}, a2);
  ASSERT_TRUE(n.ok);
  EXPECT_EQ(n.e, (Vec{0, 1}));
  EXPECT_EQ(n.w, 2);

  n = normalize_direction({0, 1}, kSquare);
  ASSERT_TRUE(n.ok);
  EXPECT_EQ(n.e, (Vec{0, 1}));
  EXPECT_EQ(n.w, 1);

  n = normalize_direction({2, 1}, a2);
  EXPECT_FALSE(n.ok);
  ASSERT_TRUE(n.witnesses);
  std::set<LatticeVector> w{n.witnesses->first, n.witnesses->second};
  EXPECT_EQ(w, (std::set<LatticeVector>{{0, 1}, {1, 0}}));

  EXPECT_THROW(normalize_direction({0, 0}, a2), Error);
}

TEST(Extension, SumWithSegmentExamples) {
  const auto sq = cell_of(catalog("Z2"));
  auto sum = sum_with_segment(sq, Direction(IntVec{1, 1}, 1));
  EXPECT_EQ(sum.v.vertices, (std::vector<Vec>{{-2, -2}, {-2, 0}, {0, -2}, {0, 2}, {2, 0}, {2, 2}}));
  EXPECT_EQ(sum.v.facets.size(), 6u);

  sum = sum_with_segment(sq, Direction(IntVec{0, 1}, 1));
  EXPECT_EQ(sum.v.vertices, (std::vector<Vec>{{-1, -2}, {-1, 2}, {1, -2}, {1, 2}}));
  EXPECT_TRUE(sum.added.empty());

  const auto hex = cell_of(catalog("A2"));
  sum = sum_with_segment(hex, Direction(IntVec{2, 1}, 1));
  EXPECT_EQ(sum.v.facets.size(), 8u);
  EXPECT_EQ(sum.v.vertices, minkowski_oracle(hex, {2, 1}, 1));
}

TEST(Extension, VoronoiOfSumFormExamples) {
  const auto z2 = catalog("Z2");
  auto pc = voronoi_of_sum_form(z2, Direction(IntVec{1, 1}, 1));
  EXPECT_EQ(pc.form.gram(), (Mat{{2, 1}, {1, 2}}));
  EXPECT_EQ(pc.normals, (std::vector<LatticeVector>{{-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0}}));
  for (const auto& q : pc.h.ineqs) EXPECT_EQ(q.support, 2);
  EXPECT_EQ(enumerate_vertices(pc.h).vertices, sum_with_segment(cell_of(z2), Direction(IntVec{1, 1}, 1)).v.vertices);

  pc = voronoi_of_sum_form(z2, Direction(IntVec{0, 1}, 1));
  EXPECT_EQ(pc.form.gram(), (Mat{{1, 0}, {0, 2}}));
  EXPECT_EQ(enumerate_vertices(pc.h).vertices, (std::vector<Vec>{{-1, -2}, {-1, 2}, {1, -2}, {1, 2}}));

  pc = voronoi_of_sum_form(catalog("A2"), Direction(IntVec{0, 1}, 1));
  EXPECT_EQ(pc.form.gram(), (Mat{{2, -1}, {-1, 3}}));
  EXPECT_EQ(enumerate_vertices(pc.h).vertices.size(), 6u);

  EXPECT_THROW(voronoi_of_sum_form(z2, Direction(Vec{Rational(1, 2), 0}, 1)), Error);
}

TEST(Extension, SubsetCheckExamples) {
  const auto z2 = catalog("Z2");
  auto r = subset_check(z2, z2, kSquare);
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.pairs_checked, 16u);

  const auto a2 = catalog("A2");
  const auto normals = normals_of("A2");
  const Direction dir(IntVec{0, 1}, 1);
  HPolytope seg = segment_as_polytope(dir, normals);
  r = subset_check(build_cell(a2, normals), seg);
  EXPECT_TRUE(r.ok);

  std::mt19937 rng(17);
  for (int t = 0; t < 5; ++t) {
    const auto a1 = oracle::random_form(3, rng);
    const auto a2r = oracle::random_form(3, rng);
    // A shared symmetric normal set that positively spans.
    const auto shared = facet_normals(coset_minima(a1));
    EXPECT_TRUE(subset_check(a1, a2r, shared).ok);
  }
  EXPECT_THROW(subset_check(build_cell(z2, kSquare), build_cell(a2, normals)), Error);
}

TEST(Extension, TransversalShadowFacesAreContactFaces) {
  const auto z2 = catalog("Z2");
  auto r = lemma_l8_check(z2, coset_minima(z2), cell_of(z2), {1, 1});
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.faces_checked, 2u);

  const auto a2 = catalog("A2");
  r = lemma_l8_check(a2, coset_minima(a2), cell_of(a2), {0, 1});
  EXPECT_TRUE(r.ok);

  const auto d4 = catalog("D4");
  const auto cs = coset_minima(d4);
  const auto cell = cell_of(d4);
  for (const auto& e : dual_set(facet_normals(cs)).members) {
    const auto res = lemma_l8_check(d4, cs, cell, to_vec(e));
    EXPECT_TRUE(res.ok) << (res.violations.empty() ? "" : res.violations.front());
  }
  try {
    lemma_l8_check(a2, coset_minima(a2), cell_of(a2), {1, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), "NotInDualSet");
  }
}

TEST(Extension, CheckTheoremExamples) {
  auto rep = check_theorem(catalog("A2"), {0, 1}, default_b_samples());
  EXPECT_TRUE(rep.in_dual_set);
  EXPECT_TRUE(rep.invariants_hold);
  ASSERT_EQ(rep.samples.size(), 3u);
  for (const auto& s : rep.samples) {
    EXPECT_EQ(s.equal, true);
    EXPECT_TRUE(s.parallelotope.ok);
  }
  EXPECT_EQ(rep.b_stable, true);

  rep = check_theorem(catalog("A2"), {2, 1}, {1});
  EXPECT_FALSE(rep.normalization.ok);
  EXPECT_FALSE(rep.in_dual_set);
  EXPECT_TRUE(rep.invariants_hold);
  ASSERT_EQ(rep.samples.size(), 1u);
  EXPECT_EQ(rep.samples[0].sum.ineqs.size(), 8u);
  const auto belt = rep.samples[0].parallelotope.belt_failure();
  ASSERT_TRUE(belt);
  EXPECT_EQ(belt->length, 8u);

  rep = check_theorem(catalog("Z2"), {2, 1}, {1});
  EXPECT_FALSE(rep.normalization.ok);
  EXPECT_EQ(rep.irreducible_input, false);
  EXPECT_TRUE(rep.samples[0].parallelotope.ok);
  EXPECT_EQ(rep.samples[0].sum.ineqs.size(), 6u);
  EXPECT_TRUE(rep.theorem_silent);
  EXPECT_TRUE(rep.invariants_hold);
}

TEST(Extension, CheckTheoremAboveVertexCap) {
  const auto rep = check_theorem(catalog("E6*"), {1, 0, 0, 0, 0, 0}, {1});
  EXPECT_FALSE(rep.vrep_available);
  EXPECT_FALSE(rep.in_dual_set);
  EXPECT_TRUE(rep.samples.empty());
  EXPECT_TRUE(rep.invariants_hold);
}

// Invariants.

TEST(ExtensionProperty, ForwardDirectionOnSmallCatalog) {
  for (const auto& name : {"Z2", "Z3", "A2", "A3", "A2*", "A3*"}) {
    const auto a = catalog(name);
    for (const auto& e : dual_set(facet_normals(coset_minima(a))).members) {
      const auto rep = check_theorem(a, to_vec(e), default_b_samples());
      EXPECT_TRUE(rep.in_dual_set) << name;
      EXPECT_TRUE(rep.invariants_hold) << name << " " << (rep.violations.empty() ? "" : rep.violations.front());
      EXPECT_EQ(rep.b_stable, true) << name;
    }
  }
}

TEST(ExtensionProperty, RankOneBridge) {
  for (const auto& name : {"Z3", "A2", "A3", "D4", "A3*", "D4*", "D5", "E6"}) {
    const auto normals = normals_of(name);
    const auto ds = dual_set(normals);
    for (const auto& e : ds.members) {
      const Direction dir(e, 3);
      for (const auto& p : p_e_set(normals, to_vec(e))) EXPECT_EQ(a_e(p, dir), f_e(p, dir)) << name;
    }
  }
}

TEST(ExtensionProperty, LayerIntegrality) {
  std::mt19937 rng(8);
  std::uniform_int_distribution<int> coord(-50, 50);
  for (const auto& name : {"A3", "D4", "D5", "E6"}) {
    for (const auto& e : dual_set(normals_of(name)).members) {
      for (int t = 0; t < 200; ++t) {
        LatticeVector v(e.size());
        for (auto& x : v) x = coord(rng);
        EXPECT_NO_THROW(layer_index(to_vec(e), v)) << name;
      }
    }
  }
}

TEST(ExtensionProperty, SegmentRecovery) {
  for (const auto& name : {"A2", "A3", "D4"}) {
    const auto normals = normals_of(name);
    for (const auto& e : dual_set(normals).members) {
      for (const auto& b : default_b_samples()) {
        const Direction dir(e, b);
        const auto seg = enumerate_vertices(segment_as_polytope(dir, normals));
        std::vector<Vec> expected{b * to_vec(e), -(b * to_vec(e))};
        std::sort(expected.begin(), expected.end());
        EXPECT_EQ(seg.vertices, expected) << name;
      }
    }
  }
}

TEST(ExtensionProperty, TypeThreeNormals) {
  for (const auto& name : {"A2", "A3", "D4"}) {
    const auto a = catalog(name);
    const auto cell = cell_of(a);
    for (const auto& e : dual_set(facet_normals(coset_minima(a))).members) {
      const Direction dir(e, 1);
      const auto sum = sum_with_segment(cell, dir);
      const auto facets = facet_normal_set(sum.v);
      for (const auto& q : sum.added) {
        EXPECT_EQ(dot(q.normal, dir.e), 0) << name;
        const auto k = find_facet(sum.v, q.normal, q.support);
        ASSERT_TRUE(k) << name;
        EXPECT_EQ(affine_dim(detail::pick(sum.v.vertices, sum.v.incidence[*k])), static_cast<int>(a.dim()) - 1);
        EXPECT_TRUE(facets.count(q.normal));
      }
    }
  }
}

TEST(ExtensionProperty, SumMatchesMinkowskiOracleOnRandomForms) {
  std::mt19937 rng(31);
  for (int t = 0; t < 6; ++t) {
    const auto a = oracle::random_form(3, rng);
    const auto cell = cell_of(a);
    const auto ds = dual_set(facet_normals(coset_minima(a)));
    for (std::size_t k = 0; k < ds.members.size() && k < 3; ++k) {
      const Direction dir(ds.members[k], Rational(1, 2));
      EXPECT_EQ(sum_with_segment(cell, dir).v.vertices, minkowski_oracle(cell, dir.e, dir.b));
    }
  }
}
