#include <doctest.h>

#include "galmod/group.hpp"

using namespace galmod;

namespace {

// n x n permutation matrix of a one-line permutation (images of 0..n-1).
IntegerMatrix perm_matrix(const std::vector<std::size_t>& image) {
  IntegerMatrix m(image.size(), image.size());
  for (std::size_t c = 0; c < image.size(); ++c) m.at(image[c], c) = 1;
  return m;
}

GroupPtr symmetric3() {
  return FiniteMatrixGroup::enumerate({{"t", perm_matrix({1, 0, 2})},
                                       {"c", perm_matrix({1, 2, 0})}});
}

}  // namespace

TEST_CASE("enumeration of small groups") {
  SUBCASE("identity generator only") {
    GroupPtr g = FiniteMatrixGroup::enumerate(
        {{"e", IntegerMatrix::identity(2)}});
    CHECK(g->order() == 1);
  }
  SUBCASE("sign in rank one") {
    GroupPtr g = FiniteMatrixGroup::enumerate(
        {{"s", IntegerMatrix::from_rows({{-1}})}});
    CHECK(g->order() == 2);
    CHECK(g->element_order(1) == 2);
  }
  SUBCASE("symmetric group on three points") {
    GroupPtr g = symmetric3();
    CHECK(g->order() == 6);
    CHECK(g->rank() == 3);
  }
  SUBCASE("infinite order trips the cap") {
    CHECK_THROWS_AS(FiniteMatrixGroup::enumerate(
                        {{"shear", IntegerMatrix::from_rows({{1, 1}, {0, 1}})}},
                        10),
                    CapExceeded);
  }
  SUBCASE("non-unimodular generator is rejected by name") {
    try {
      FiniteMatrixGroup::enumerate({{"g2", IntegerMatrix::from_rows({{2}})}});
      FAIL("expected NonUnimodularGenerator");
    } catch (const NonUnimodularGenerator& e) {
      CHECK(e.generator_name == "g2");
    }
  }
  SUBCASE("duplicate names are rejected") {
    CHECK_THROWS_AS(
        FiniteMatrixGroup::enumerate({{"a", IntegerMatrix::identity(1)},
                                      {"a", IntegerMatrix::from_rows({{-1}})}}),
        InvalidInput);
  }
}

TEST_CASE("breadth-first element order") {
  GroupPtr g = symmetric3();
  // Generators sort by name: c before t. Identity first, then words by
  // length and lexicographic generator order.
  CHECK(g->element_name(0) == "e");
  CHECK(g->element(1) == g->generators()[0].matrix);
  CHECK(g->element_name(1) == g->generators()[0].name);
  CHECK(g->word(1).size() == 1);
  // Word lengths never decrease along the element list.
  for (std::size_t i = 1; i < g->order(); ++i)
    CHECK(g->word(i - 1).size() <= g->word(i).size());
}

TEST_CASE("multiplication table, inverses, associativity") {
  GroupPtr g = symmetric3();
  for (std::size_t i = 0; i < g->order(); ++i) {
    CHECK(g->element(i) * g->element(g->inverse(i)) ==
          IntegerMatrix::identity(3));
    CHECK(g->product(i, g->inverse(i)) == FiniteMatrixGroup::identity_index());
    for (std::size_t j = 0; j < g->order(); ++j) {
      CHECK(g->element(g->product(i, j)) == g->element(i) * g->element(j));
      for (std::size_t k = 0; k < g->order(); k += 2)
        CHECK(g->product(g->product(i, j), k) ==
              g->product(i, g->product(j, k)));
    }
  }
}

TEST_CASE("subgroups") {
  GroupPtr g = symmetric3();
  SUBCASE("generated closure") {
    // A transposition generates an order-2 subgroup.
    std::size_t t = g->generator_element(1);  // "t" sorts after "c"
    Subgroup h = Subgroup::cyclic(g, t);
    CHECK(h.order() == 2);
    CHECK(h.is_closed());
    CHECK(h.contains(FiniteMatrixGroup::identity_index()));
  }
  SUBCASE("full and trivial") {
    CHECK(Subgroup::full(g).order() == 6);
    CHECK(Subgroup::trivial(g).order() == 1);
    CHECK(Subgroup::trivial(g).generating_set().empty());
  }
  SUBCASE("generating sets regenerate") {
    for (const Subgroup& h : g->subgroup_classes()) {
      Subgroup again = Subgroup::generated(g, h.generating_set());
      CHECK(again.members() == h.members());
    }
  }
}

TEST_CASE("subgroup classes of small groups") {
  SUBCASE("order one") {
    GroupPtr g =
        FiniteMatrixGroup::enumerate({{"e", IntegerMatrix::identity(1)}});
    CHECK(g->subgroup_classes().size() == 1);
  }
  SUBCASE("order two") {
    GroupPtr g = FiniteMatrixGroup::enumerate(
        {{"s", IntegerMatrix::from_rows({{-1}})}});
    CHECK(g->subgroup_classes().size() == 2);
    CHECK(g->subgroup_count() == 2);
  }
  SUBCASE("symmetric group on three points") {
    GroupPtr g = symmetric3();
    const auto& classes = g->subgroup_classes();
    // trivial, the transpositions (one class), the rotation, everything
    CHECK(classes.size() == 4);
    CHECK(g->subgroup_count() == 6);
    // sorted by order
    std::vector<std::size_t> orders;
    for (const Subgroup& h : classes) orders.push_back(h.order());
    CHECK(orders == std::vector<std::size_t>{1, 2, 3, 6});
    for (const Subgroup& h : classes) CHECK(h.is_closed());
  }
  SUBCASE("conjugates collapse to one class") {
    GroupPtr g = symmetric3();
    std::size_t t = g->generator_element(1);
    Subgroup h = Subgroup::cyclic(g, t);
    for (std::size_t e = 0; e < g->order(); ++e) {
      Subgroup conj = h.conjugate(e);
      CHECK(conj.order() == 2);
      CHECK(conj.is_closed());
    }
  }
}
