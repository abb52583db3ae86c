#ifndef GALMOD_MOTIVE_HPP
#define GALMOD_MOTIVE_HPP

#include <utility>

#include "galmod/delpezzo.hpp"
#include "galmod/resolution.hpp"

namespace galmod {

// A finite etale algebra represented by the degree multiset of its field
// factors (one factor of degree [G:H] per orbit stabilizer H).  Stored
// sorted descending.
struct EtaleAlgebraDescriptor {
  std::vector<std::size_t> degrees;

  std::size_t total_degree() const;
  std::string name() const;  // "E_5", "E_2x1x1x1", "E_0" for the empty one
  bool operator==(const EtaleAlgebraDescriptor&) const = default;
};

EtaleAlgebraDescriptor etale_from_descriptor(const FiniteMatrixGroup& g,
                                             const PermutationDescriptor& d);

enum class MotiveKind { TateUnit, Etale, Surface, MiddlePart };

// One Tate-twisted summand.  The twist never exceeds 2: everything in sight
// is a surface motive.
struct MotiveTerm {
  MotiveKind kind = MotiveKind::TateUnit;
  int twist = 0;
  EtaleAlgebraDescriptor etale;  // only for kind == Etale

  bool operator==(const MotiveTerm&) const = default;
};

// Formal multiset of terms.  Multiset equality is the only identity;
// no cancellation is ever performed (it is invalid in general when the
// lattice is not a permutation module).
struct MotiveExpression {
  std::vector<MotiveTerm> terms;  // kept sorted by (twist, kind, degrees)

  MotiveExpression& add(MotiveTerm term);
  bool operator==(const MotiveExpression&) const = default;
};

std::string render_text(const MotiveTerm& t);
std::string render_text(const MotiveExpression& e);
// Structured (JSON) serialization; parse is its exact inverse.
std::string render_structured(const MotiveExpression& e);
MotiveExpression parse_expression_structured(const std::string& text);

enum class DecompositionVerdict {
  ZeroDimensional,
  NotInvertible,
  InvertibleNoZeroCycleAssumed,
};

std::string to_string(DecompositionVerdict v);

struct MiddleRelation {
  MotiveExpression lhs;  // (S,rho) + (Spec F)(1)
  MotiveExpression rhs;  // (Spec E)(1)
  EtaleAlgebraDescriptor f_parts;
};

struct DecompositionReport {
  DecompositionVerdict verdict = DecompositionVerdict::NotInvertible;
  bool zero_cycle_assumed = false;
  std::string zero_cycle_source;  // which input asserted the assumption

  // The summand statement of a zero-dimensional motive:
  // S is a direct summand of Z + (Spec E)(1) + Z(2).
  std::optional<std::pair<MotiveExpression, MotiveExpression>> summand;
  // For the degree-5 preset: the two sides of the surface identity
  // Z(1) + S ~ Z + Z(1) + (Spec E)(1) + Z(2), E from the basis orbits.
  std::optional<std::pair<MotiveExpression, MotiveExpression>> identity;
  std::optional<EtaleAlgebraDescriptor> etale;  // E, from the resolution's P
  std::optional<MiddleRelation> middle;         // when C is permutation
  std::string complement_note;  // the permutation verdict story for C

  // Certificates: the section shape when invertible, the divisibility
  // failure otherwise.
  bool section_found = false;
  std::size_t section_rows = 0, section_cols = 0;
  std::optional<SolveObstruction> obstruction;
};

// Invertibility + zero-cycle bookkeeping per the verdict semantics; the
// zero-cycle hypothesis is never inferred, it enters as the caller's
// explicit flag.  `preset` overrides the resolution (the degree-5 preset
// passes its explicit rank-6 resolution); otherwise the general coflasque
// construction runs.  Permutation recognition of the complement is skipped
// above `complement_limit` ranks with a note.
DecompositionReport decompose_motive(const GLattice& m, bool zero_cycle_assumed,
                                     std::string zero_cycle_source,
                                     const Resolution* preset = nullptr,
                                     std::size_t iso_bound = kDefaultIsoBound,
                                     std::size_t complement_limit = 16);

// The two sides of the degree-5 statement for a subgroup w of the
// reflection group: Z(1) + S against Z + Z(1) + (Spec E)(1) + Z(2), where
// the degrees of E are the orbit sizes of w on the five permuted basis
// vectors.  Both Z(1) terms are kept; nothing cancels.
std::pair<MotiveExpression, MotiveExpression> dp5_motive(const Subgroup& w);

}  // namespace galmod

#endif  // GALMOD_MOTIVE_HPP
