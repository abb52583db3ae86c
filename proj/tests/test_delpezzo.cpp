#include <doctest.h>

#include <set>

#include "galmod/delpezzo.hpp"

using namespace galmod;

namespace {

const IntVector kCanonical5 = {-3, -1, -1, -1, -1};

IntVector image_of(const IntegerMatrix& m, const IntVector& v) {
  return m.apply(v);
}

}  // namespace

TEST_CASE("picard presets") {
  PicardLattice p5 = picard_preset(5);
  CHECK(p5.rank == 5);
  CHECK(p5.pairing == IntegerMatrix::diagonal({1, -1, -1, -1, -1}));
  CHECK(p5.canonical == kCanonical5);
  CHECK(intersection(p5, p5.canonical, p5.canonical) == 5);

  PicardLattice p6 = picard_preset(6);
  CHECK(p6.rank == 4);
  CHECK(intersection(p6, p6.canonical, p6.canonical) == 6);

  CHECK_THROWS_AS(picard_preset(4), UnsupportedDegree);
}

TEST_CASE("intersection pairing") {
  PicardLattice p = picard_preset(5);
  IntVector l0 = {1, 0, 0, 0, 0};
  IntVector l1 = {0, -1, 0, 0, 0};  // the class l1 in chart coordinates
  CHECK(intersection(p, l0, l0) == 1);
  CHECK(intersection(p, l1, l1) == -1);
  CHECK(intersection(p, l0, l1) == 0);
  IntVector s4 = {1, 1, 1, 1, 0};
  CHECK(intersection(p, s4, s4) == -2);
  CHECK_THROWS_AS(intersection(p, {1, 0}, l0), DimensionMismatch);
}

TEST_CASE("root enumeration") {
  SUBCASE("degree five") {
    PicardLattice p = picard_preset(5);
    std::vector<IntVector> rs = roots(p);
    CHECK(rs.size() == 20);
    CHECK(std::is_sorted(rs.begin(), rs.end()));
    // s1 = l1 - l2 in chart coordinates
    IntVector s1 = {0, -1, 1, 0, 0};
    CHECK(std::find(rs.begin(), rs.end(), s1) != rs.end());
    for (const IntVector& r : rs) {
      CHECK(intersection(p, r, r) == -2);
      CHECK(intersection(p, p.canonical, r) == 0);
    }
    // closed under negation
    std::set<IntVector> all(rs.begin(), rs.end());
    for (const IntVector& r : rs) {
      IntVector neg(r.size());
      for (std::size_t i = 0; i < r.size(); ++i) neg[i] = -r[i];
      CHECK(all.count(neg) == 1);
    }
  }
  SUBCASE("degree six") {
    CHECK(roots(picard_preset(6)).size() == 8);
  }
}

TEST_CASE("simple reflections of the degree-5 lattice") {
  std::vector<NamedGenerator> sigma = simple_reflections_dp5();
  REQUIRE(sigma.size() == 4);
  PicardLattice p = picard_preset(5);

  SUBCASE("stated images") {
    // s4 sends l0 to 2 l0 - l1 - l2 - l3.
    CHECK(image_of(sigma[3].matrix, {1, 0, 0, 0, 0}) ==
          IntVector{2, 1, 1, 1, 0});
    // s4 negates its own root.
    CHECK(image_of(sigma[3].matrix, {1, 1, 1, 1, 0}) ==
          IntVector{-1, -1, -1, -1, 0});
    // s1 swaps the first two b-coordinates.
    CHECK(image_of(sigma[0].matrix, {9, 1, 2, 3, 4}) == IntVector{9, 2, 1, 3, 4});
  }
  SUBCASE("each is unimodular and involutive") {
    for (const auto& s : sigma) {
      CHECK(s.matrix.is_unimodular());
      CHECK(s.matrix * s.matrix == IntegerMatrix::identity(5));
    }
  }
  SUBCASE("they agree with the generic reflection formula") {
    const IntVector roots_of[4] = {{0, -1, 1, 0, 0},
                                   {0, 0, -1, 1, 0},
                                   {0, 0, 0, -1, 1},
                                   {1, 1, 1, 1, 0}};
    for (std::size_t i = 0; i < 4; ++i)
      CHECK(reflection_matrix(p, roots_of[i]) == sigma[i].matrix);
  }
  SUBCASE("reflection at a non-root is rejected") {
    CHECK_THROWS_AS(reflection_matrix(p, {1, 0, 0, 0, 0}), NotARoot);
  }
}

TEST_CASE("reflection groups of the presets") {
  SUBCASE("degree five has order 120") {
    GroupPtr w = weyl_group(picard_preset(5));
    CHECK(w->order() == 120);
    PicardLattice p = picard_preset(5);
    for (std::size_t e = 0; e < w->order(); ++e) {
      const IntegerMatrix& a = w->element(e);
      CHECK(a.transpose() * p.pairing * a == p.pairing);
      CHECK(a.apply(p.canonical) == p.canonical);
    }
  }
  SUBCASE("degree six has order 12") {
    GroupPtr w = weyl_group(picard_preset(6));
    CHECK(w->order() == 12);
    PicardLattice p = picard_preset(6);
    for (std::size_t e = 0; e < w->order(); ++e) {
      const IntegerMatrix& a = w->element(e);
      CHECK(a.transpose() * p.pairing * a == p.pairing);
      CHECK(a.apply(p.canonical) == p.canonical);
    }
  }
  SUBCASE("coxeter orders, computed not postulated") {
    GroupPtr w = weyl_group(picard_preset(5));
    std::size_t s[4];
    for (std::size_t i = 0; i < 4; ++i) s[i] = w->generator_element(i);
    for (std::size_t i = 0; i < 4; ++i)
      CHECK(w->element_order(s[i]) == 2);
    // chain adjacency: consecutive products have order 3, the rest 2
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j) {
        std::size_t expected = (j == i + 1) ? 3 : 2;
        CHECK(w->element_order(w->product(s[i], s[j])) == expected);
      }
  }
  SUBCASE("roots are closed under the group action") {
    PicardLattice p = picard_preset(5);
    GroupPtr w = weyl_group(p);
    std::vector<IntVector> rs = roots(p);
    std::set<IntVector> all(rs.begin(), rs.end());
    for (std::size_t e = 0; e < w->order(); ++e)
      for (const IntVector& r : rs)
        CHECK(all.count(w->element(e).apply(r)) == 1);
  }
}

TEST_CASE("the h vectors") {
  std::vector<IntVector> h = h_vectors_dp5();
  std::vector<NamedGenerator> sigma = simple_reflections_dp5();
  PicardLattice p = picard_preset(5);

  SUBCASE("s_i interchanges h_i and h_{i+1} and fixes the rest") {
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 5; ++j) {
        IntVector image = image_of(sigma[i].matrix, h[j]);
        if (j == i)
          CHECK(image == h[i + 1]);
        else if (j == i + 1)
          CHECK(image == h[i]);
        else
          CHECK(image == h[j]);
      }
  }
  SUBCASE("stated images") {
    CHECK(image_of(sigma[3].matrix, h[3]) == IntVector{2, 1, 1, 1, 1});
    CHECK(image_of(sigma[0].matrix, h[0]) == h[1]);
  }
  SUBCASE("together with the canonical class they generate the lattice") {
    IntegerMatrix gens(5, 6);
    for (std::size_t j = 0; j < 5; ++j)
      for (std::size_t i = 0; i < 5; ++i) gens.at(i, j) = h[j][i];
    for (std::size_t i = 0; i < 5; ++i) gens.at(i, 5) = p.canonical[i];
    CHECK(hnf_column_basis(gens) == IntegerMatrix::identity(5));
  }
}

TEST_CASE("the explicit degree-5 resolution") {
  GroupPtr w = weyl_group(picard_preset(5));
  SUBCASE("over the full group") {
    Resolution res = dp5_resolution(Subgroup::full(w));
    CHECK(res.p->rank() == 6);
    CHECK(res.m->rank() == 5);
    CHECK(res.c->rank() == 1);
    // f kills the kernel generator: h1+...+h5+2*canonical = 0.
    CHECK((res.surjection.matrix * res.inclusion.matrix).is_zero());
    // kernel generator in canonical form
    CHECK(hnf_column_basis(res.inclusion.matrix).column(0) ==
          IntVector{2, 1, 1, 1, 1, 1});
    // the standard retraction: r(x) = 5*1 + 2*(-2) = 1
    REQUIRE(res.splitting.has_value());
    CHECK((res.splitting->retraction.matrix * res.inclusion.matrix)
              .is_identity());
    CHECK((res.surjection.matrix * res.splitting->section.matrix)
              .is_identity());
    // the kernel is the trivial rank-one module, and coflabby
    CHECK(res.c->generator_action(0) == IntegerMatrix::identity(1));
    CHECK(is_coflabby(*res.c).coflabby);
    // the solver finds a section and a retraction on its own
    CHECK(section_of_surjection(res.surjection).has_value());
    CHECK(retraction_of_inclusion(res.inclusion).has_value());
  }
  SUBCASE("the complement is the trivial rank-one lattice") {
    Resolution res = dp5_resolution(Subgroup::full(w));
    GLattice n = complement_summand(res);
    CHECK(n.rank() == 1);
    IsoVerdict iso =
        equivariant_isomorphic(n, GLattice::trivial_action(n.group(), 1), 1);
    CHECK(iso.yes());
  }
  SUBCASE("restricted to a generator subgroup") {
    std::size_t s1 = w->generator_element(0);
    Resolution res = dp5_resolution(Subgroup::cyclic(w, s1));
    CHECK(res.m->group()->order() == 2);
    REQUIRE(res.splitting.has_value());
    CHECK((res.surjection.matrix * res.splitting->section.matrix)
              .is_identity());
    // s1 interchanges the first two coordinates of the restricted action.
    CHECK(res.m->generator_action(0) ==
          simple_reflections_dp5()[0].matrix);
  }
  SUBCASE("a few subgroup classes, resolutions all verify") {
    const auto& classes = w->subgroup_classes();
    for (std::size_t ci = 0; ci < classes.size(); ci += 6) {
      Resolution res = dp5_resolution(classes[ci]);
      CHECK(res.p->rank() == 6);
      CHECK((res.surjection.matrix * res.inclusion.matrix).is_zero());
      REQUIRE(res.splitting.has_value());
      CHECK((res.splitting->retraction.matrix * res.inclusion.matrix)
                .is_identity());
    }
  }
}

TEST_CASE("invariants of the degree-5 lattice") {
  GroupPtr w = weyl_group(picard_preset(5));
  GLattice picard = GLattice::defining(w);
  SUBCASE("the full group fixes exactly the canonical line") {
    IntegerMatrix inv = invariant_sublattice(picard, Subgroup::full(w));
    REQUIRE(inv.cols() == 1);
    // canonical generator of the line through (-3,-1,-1,-1,-1)
    CHECK(inv.column(0) == IntVector{3, 1, 1, 1, 1});
  }
  SUBCASE("h1 vanishes over the full group") {
    CHECK(h1(picard, Subgroup::full(w)).trivial());
  }
  SUBCASE("invertible implies coflabby") {
    CHECK(is_coflabby(picard).coflabby);
  }
  SUBCASE("the subgroup census") {
    CHECK(w->subgroup_classes().size() == 19);
    CHECK(w->subgroup_count() == 156);
  }
  SUBCASE("the rank-6 coset lattice from the full and index-5 classes") {
    const auto& classes = w->subgroup_classes();
    std::size_t full = 0, stab = 0;
    for (std::size_t ci = 0; ci < classes.size(); ++ci) {
      if (classes[ci].order() == 120) full = ci;
      if (classes[ci].order() == 24) stab = ci;
    }
    GLattice p = permutation_lattice(w, {{full, stab}, {}});
    CHECK(p.rank() == 6);
  }
}

TEST_CASE("orbit sizes on the permuted basis") {
  GroupPtr w = weyl_group(picard_preset(5));
  CHECK(dp5_orbit_sizes(Subgroup::full(w)) == std::vector<std::size_t>{5});
  CHECK(dp5_orbit_sizes(Subgroup::trivial(w)) ==
        std::vector<std::size_t>{1, 1, 1, 1, 1});
  CHECK(dp5_orbit_sizes(Subgroup::cyclic(w, w->generator_element(0))) ==
        std::vector<std::size_t>{2, 1, 1, 1});
}
