#include <doctest.h>

#include <random>

#include "galmod/motive.hpp"

using namespace galmod;

namespace {

GroupPtr order_two() {
  return FiniteMatrixGroup::enumerate({{"s", IntegerMatrix::from_rows({{-1}})}});
}

bool has_term(const MotiveExpression& e, MotiveKind kind, int twist) {
  for (const MotiveTerm& t : e.terms)
    if (t.kind == kind && t.twist == twist) return true;
  return false;
}

}  // namespace

TEST_CASE("etale descriptors from permutation parts") {
  GroupPtr g = order_two();
  const auto& classes = g->subgroup_classes();
  std::size_t full = classes[0].order() == 2 ? 0 : 1;
  std::size_t trivial = 1 - full;
  CHECK(etale_from_descriptor(*g, {{full}, {}}).degrees ==
        std::vector<std::size_t>{1});
  CHECK(etale_from_descriptor(*g, {{trivial}, {}}).degrees ==
        std::vector<std::size_t>{2});
  CHECK(etale_from_descriptor(*g, {{trivial, full, trivial}, {}}).degrees ==
        std::vector<std::size_t>{2, 2, 1});
  CHECK(EtaleAlgebraDescriptor{{2, 2, 1}}.total_degree() == 5);
  CHECK(EtaleAlgebraDescriptor{{2, 2, 1}}.name() == "E_2x2x1");
}

TEST_CASE("rendering motive expressions") {
  MotiveExpression right;
  right.add({MotiveKind::TateUnit, 0, {}});
  right.add({MotiveKind::Etale, 1, {{5}}});
  right.add({MotiveKind::TateUnit, 1, {}});
  right.add({MotiveKind::TateUnit, 2, {}});
  CHECK(render_text(right) == "Z + Z(1) + (Spec E_5)(1) + Z(2)");
  CHECK(render_text(MotiveExpression{}) == "0");
  // insertion order does not matter, the terms are kept canonical
  MotiveExpression again;
  again.add({MotiveKind::TateUnit, 2, {}});
  again.add({MotiveKind::TateUnit, 1, {}});
  again.add({MotiveKind::Etale, 1, {{5}}});
  again.add({MotiveKind::TateUnit, 0, {}});
  CHECK(again == right);
  CHECK_THROWS_AS(MotiveExpression{}.add({MotiveKind::TateUnit, 3, {}}),
                  InvalidInput);
}

TEST_CASE("structured rendering round-trips") {
  std::mt19937_64 rng(0x5eedae11);
  std::uniform_int_distribution<int> twist(0, 2);
  std::uniform_int_distribution<int> kind(0, 3);
  std::uniform_int_distribution<std::size_t> deg(1, 6);
  for (int trial = 0; trial < 30; ++trial) {
    MotiveExpression e;
    for (int t = 0; t < trial % 7; ++t) {
      MotiveTerm term;
      term.kind = static_cast<MotiveKind>(kind(rng));
      term.twist = twist(rng);
      if (term.kind == MotiveKind::Etale)
        term.etale.degrees = {deg(rng), deg(rng)};
      std::sort(term.etale.degrees.rbegin(), term.etale.degrees.rend());
      e.add(std::move(term));
    }
    CHECK(parse_expression_structured(render_structured(e)) == e);
  }
}

TEST_CASE("degree-5 motive pairs") {
  GroupPtr w = weyl_group(picard_preset(5));
  SUBCASE("full image: one quintic factor") {
    auto [left, right] = dp5_motive(Subgroup::full(w));
    CHECK(render_text(left) == "S + Z(1)");
    CHECK(render_text(right) == "Z + Z(1) + (Spec E_5)(1) + Z(2)");
  }
  SUBCASE("trivial image: five linear factors, nothing cancels") {
    auto [left, right] = dp5_motive(Subgroup::trivial(w));
    CHECK(has_term(left, MotiveKind::TateUnit, 1));
    CHECK(has_term(right, MotiveKind::TateUnit, 1));
    bool found = false;
    for (const MotiveTerm& t : right.terms)
      if (t.kind == MotiveKind::Etale) {
        found = true;
        CHECK(t.etale.degrees == std::vector<std::size_t>{1, 1, 1, 1, 1});
      }
    CHECK(found);
  }
  SUBCASE("one transposition: a quadratic factor") {
    auto [left, right] = dp5_motive(
        Subgroup::cyclic(w, w->generator_element(0)));
    for (const MotiveTerm& t : right.terms)
      if (t.kind == MotiveKind::Etale)
        CHECK(t.etale.degrees == std::vector<std::size_t>{2, 1, 1, 1});
  }
  SUBCASE("orbits partition five points for every class") {
    for (const Subgroup& h : w->subgroup_classes()) {
      auto [left, right] = dp5_motive(h);
      for (const MotiveTerm& t : right.terms)
        if (t.kind == MotiveKind::Etale)
          CHECK(t.etale.total_degree() == 5);
    }
  }
}

TEST_CASE("decomposition reports") {
  SUBCASE("degree-5 preset path") {
    GroupPtr w = weyl_group(picard_preset(5));
    Resolution res = dp5_resolution(Subgroup::full(w));
    DecompositionReport report =
        decompose_motive(*res.m, true, "test", &res);
    CHECK(report.verdict == DecompositionVerdict::ZeroDimensional);
    REQUIRE(report.etale.has_value());
    CHECK(report.etale->degrees == std::vector<std::size_t>{5, 1});
    REQUIRE(report.middle.has_value());
    CHECK(report.middle->f_parts.degrees == std::vector<std::size_t>{1});
    REQUIRE(report.summand.has_value());
    CHECK(render_text(report.summand->second) ==
          "Z + (Spec E_5x1)(1) + Z(2)");
  }
  SUBCASE("invertible but no zero cycle asserted") {
    GroupPtr w = weyl_group(picard_preset(5));
    Resolution res = dp5_resolution(Subgroup::full(w));
    DecompositionReport report =
        decompose_motive(*res.m, false, "nothing asserted it", &res);
    CHECK(report.verdict ==
          DecompositionVerdict::InvertibleNoZeroCycleAssumed);
    CHECK(!report.summand.has_value());
  }
  SUBCASE("trivial galois image: five linear factors") {
    GroupPtr e = FiniteMatrixGroup::enumerate(
        {{"e", IntegerMatrix::identity(5)}});
    DecompositionReport report =
        decompose_motive(GLattice::defining(e), true, "test");
    CHECK(report.verdict == DecompositionVerdict::ZeroDimensional);
    REQUIRE(report.etale.has_value());
    CHECK(report.etale->degrees ==
          std::vector<std::size_t>{1, 1, 1, 1, 1});
  }
  SUBCASE("the sign action is not invertible") {
    GroupPtr g = order_two();
    GLattice sign = GLattice::from_generator_actions(
        g, {IntegerMatrix::from_rows({{-1}})});
    DecompositionReport report = decompose_motive(sign, true, "test");
    CHECK(report.verdict == DecompositionVerdict::NotInvertible);
    REQUIRE(report.obstruction.has_value());
    CHECK(report.obstruction->divisor == 2);
    CHECK(!report.summand.has_value());
  }
  SUBCASE("verdict bookkeeping is exact") {
    GroupPtr g = order_two();
    GLattice triv = GLattice::trivial_action(g, 1);
    CHECK(decompose_motive(triv, true, "t").verdict ==
          DecompositionVerdict::ZeroDimensional);
    CHECK(decompose_motive(triv, false, "t").verdict ==
          DecompositionVerdict::InvertibleNoZeroCycleAssumed);
  }
}
