#include "galmod/motive.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace galmod {

std::size_t EtaleAlgebraDescriptor::total_degree() const {
  return std::accumulate(degrees.begin(), degrees.end(), std::size_t{0});
}

std::string EtaleAlgebraDescriptor::name() const {
  if (degrees.empty()) return "E_0";
  std::ostringstream os;
  os << "E_";
  for (std::size_t i = 0; i < degrees.size(); ++i)
    os << (i ? "x" : "") << degrees[i];
  return os.str();
}

EtaleAlgebraDescriptor etale_from_descriptor(const FiniteMatrixGroup& g,
                                             const PermutationDescriptor& d) {
  const auto& classes = g.subgroup_classes();
  EtaleAlgebraDescriptor e;
  for (std::size_t ci : d.parts)
    e.degrees.push_back(g.order() / classes[ci].order());
  std::sort(e.degrees.rbegin(), e.degrees.rend());
  return e;
}

namespace {

int kind_order(MotiveKind k) {
  switch (k) {
    case MotiveKind::TateUnit: return 0;
    case MotiveKind::Etale: return 1;
    case MotiveKind::Surface: return 2;
    case MotiveKind::MiddlePart: return 3;
  }
  return 4;
}

bool term_less(const MotiveTerm& a, const MotiveTerm& b) {
  if (a.twist != b.twist) return a.twist < b.twist;
  if (a.kind != b.kind) return kind_order(a.kind) < kind_order(b.kind);
  return a.etale.degrees < b.etale.degrees;
}

const char* kind_name(MotiveKind k) {
  switch (k) {
    case MotiveKind::TateUnit: return "tate";
    case MotiveKind::Etale: return "etale";
    case MotiveKind::Surface: return "surface";
    case MotiveKind::MiddlePart: return "middle";
  }
  return "?";
}

MotiveKind kind_from_name(const std::string& s) {
  if (s == "tate") return MotiveKind::TateUnit;
  if (s == "etale") return MotiveKind::Etale;
  if (s == "surface") return MotiveKind::Surface;
  if (s == "middle") return MotiveKind::MiddlePart;
  throw InvalidInput("unknown motive term kind '" + s + "'");
}

}  // namespace

MotiveExpression& MotiveExpression::add(MotiveTerm term) {
  if (term.twist < 0 || term.twist > 2)
    throw InvalidInput("motive twists live in 0..2 here");
  terms.insert(std::upper_bound(terms.begin(), terms.end(), term, term_less),
               std::move(term));
  return *this;
}

std::string render_text(const MotiveTerm& t) {
  std::string base;
  switch (t.kind) {
    case MotiveKind::TateUnit: base = "Z"; break;
    case MotiveKind::Etale: base = "(Spec " + t.etale.name() + ")"; break;
    case MotiveKind::Surface: base = "S"; break;
    case MotiveKind::MiddlePart: base = "(S,rho)"; break;
  }
  if (t.twist > 0) base += "(" + std::to_string(t.twist) + ")";
  return base;
}

std::string render_text(const MotiveExpression& e) {
  if (e.terms.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < e.terms.size(); ++i)
    os << (i ? " + " : "") << render_text(e.terms[i]);
  return os.str();
}

std::string render_structured(const MotiveExpression& e) {
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for (const MotiveTerm& t : e.terms) {
    nlohmann::ordered_json term;
    term["kind"] = kind_name(t.kind);
    term["twist"] = t.twist;
    if (t.kind == MotiveKind::Etale) term["degrees"] = t.etale.degrees;
    terms.push_back(std::move(term));
  }
  return terms.dump();
}

MotiveExpression parse_expression_structured(const std::string& text) {
  nlohmann::json parsed;
  try {
    parsed = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed motive expression: ") + e.what());
  }
  if (!parsed.is_array()) throw InvalidInput("motive expression must be a list");
  MotiveExpression e;
  for (const auto& term : parsed) {
    MotiveTerm t;
    t.kind = kind_from_name(term.at("kind").get<std::string>());
    t.twist = term.at("twist").get<int>();
    if (t.kind == MotiveKind::Etale)
      t.etale.degrees = term.at("degrees").get<std::vector<std::size_t>>();
    e.add(std::move(t));
  }
  return e;
}

std::string to_string(DecompositionVerdict v) {
  switch (v) {
    case DecompositionVerdict::ZeroDimensional: return "ZeroDimensional";
    case DecompositionVerdict::NotInvertible: return "NotInvertible";
    case DecompositionVerdict::InvertibleNoZeroCycleAssumed:
      return "InvertibleNoZeroCycleAssumed";
  }
  return "?";
}

DecompositionReport decompose_motive(const GLattice& m, bool zero_cycle_assumed,
                                     std::string zero_cycle_source,
                                     const Resolution* preset,
                                     std::size_t iso_bound,
                                     std::size_t complement_limit) {
  DecompositionReport report;
  report.zero_cycle_assumed = zero_cycle_assumed;
  report.zero_cycle_source = std::move(zero_cycle_source);

  std::optional<Resolution> owned;
  const Resolution* res = preset;
  bool invertible;
  if (preset) {
    if (!preset->splitting)
      throw MissingSplitting("preset resolution must carry its splitting");
    invertible = true;
  } else {
    InvertibilityVerdict verdict = is_invertible(m);
    invertible = verdict.invertible;
    report.obstruction = verdict.obstruction;
    owned = std::move(verdict.resolution);
    res = &*owned;
  }

  if (!invertible) {
    report.verdict = DecompositionVerdict::NotInvertible;
    return report;
  }
  report.section_found = true;
  report.section_rows = res->splitting->section.matrix.rows();
  report.section_cols = res->splitting->section.matrix.cols();
  report.etale =
      etale_from_descriptor(*res->p->group(), res->p->descriptor());

  if (!zero_cycle_assumed) {
    report.verdict = DecompositionVerdict::InvertibleNoZeroCycleAssumed;
    return report;
  }
  report.verdict = DecompositionVerdict::ZeroDimensional;

  MotiveExpression left, right;
  left.add({MotiveKind::Surface, 0, {}});
  right.add({MotiveKind::TateUnit, 0, {}});
  right.add({MotiveKind::Etale, 1, *report.etale});
  right.add({MotiveKind::TateUnit, 2, {}});
  report.summand = {std::move(left), std::move(right)};

  GLattice complement = complement_summand(*res);
  if (complement.rank() > complement_limit) {
    report.complement_note =
        "complement rank " + std::to_string(complement.rank()) +
        " exceeds the recognition limit; no permutation verdict attempted";
    return report;
  }
  PermutationVerdict pv = is_permutation(complement, iso_bound);
  if (pv.yes()) {
    MiddleRelation rel;
    rel.f_parts =
        etale_from_descriptor(*complement.group(), *pv.descriptor);
    rel.lhs.add({MotiveKind::MiddlePart, 0, {}});
    rel.lhs.add({MotiveKind::Etale, 1, rel.f_parts});
    rel.rhs.add({MotiveKind::Etale, 1, *report.etale});
    report.middle = std::move(rel);
    report.complement_note = "complement is a permutation lattice";
  } else if (pv.kind == PermutationVerdict::Kind::NoCertain) {
    report.complement_note = "complement is not a permutation lattice: " +
                             pv.reason;
  } else {
    report.complement_note =
        "complement permutation recognition inconclusive: " + pv.reason;
  }
  return report;
}

std::pair<MotiveExpression, MotiveExpression> dp5_motive(const Subgroup& w) {
  EtaleAlgebraDescriptor e;
  e.degrees = dp5_orbit_sizes(w);
  MotiveExpression left, right;
  left.add({MotiveKind::Surface, 0, {}});
  left.add({MotiveKind::TateUnit, 1, {}});
  right.add({MotiveKind::TateUnit, 0, {}});
  right.add({MotiveKind::TateUnit, 1, {}});
  right.add({MotiveKind::Etale, 1, std::move(e)});
  right.add({MotiveKind::TateUnit, 2, {}});
  return {std::move(left), std::move(right)};
}

}  // namespace galmod
