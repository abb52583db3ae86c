#ifndef GALMOD_COHOMOLOGY_HPP
#define GALMOD_COHOMOLOGY_HPP

#include <string>
#include <vector>

#include "galmod/lattice.hpp"

namespace galmod {

// Finite abelian group in invariant-factor form d1 | d2 | ..., all >= 2.
// The empty list is the trivial group.  H^1 of a finite group on a lattice
// is finite and annihilated by the group order, so this suffices.
struct FiniteAbelianGroup {
  std::vector<Int> invariant_factors;

  bool trivial() const { return invariant_factors.empty(); }
  bool operator==(const FiniteAbelianGroup&) const = default;
  std::string to_string() const;  // "0" or "Z/2 x Z/4"
};

// Quotient Z^rank(basis) / column span of `cols`, where `basis` is a
// saturated column basis of an ambient lattice and the columns of `cols` lie
// in its span.  Shared engine for the cohomology routines.
FiniteAbelianGroup abelian_quotient(const IntegerMatrix& basis,
                                    const IntegerMatrix& cols);

// First group cohomology H^1(H, M) by the generator-cocycle method: a
// cocycle is determined by its values on a generating set of H, the cocycle
// identity c(ab) = c(a) + a.c(b) for a in H and b a generator cuts out Z^1
// (the remaining instances follow by induction on word length), and B^1 is
// the span of m -> (g_i.m - m)_i.
FiniteAbelianGroup h1(const GLattice& m, const Subgroup& h);

// Independent oracle for cyclic subgroups: ker(N) / im(g - 1) with
// N = 1 + g + ... + g^(ord-1).  Must agree with h1 on <g> exactly.
FiniteAbelianGroup h1_cyclic_oracle(const GLattice& m, std::size_t element);

struct CoflabbyReport {
  bool coflabby = false;
  // Indices into m.group()->subgroup_classes() whose H^1 is nonzero.
  std::vector<std::size_t> failing_classes;
};

// H^1(H, M) = 0 for every subgroup-class representative H.  Conjugate
// subgroups have isomorphic H^1, so class representatives suffice.  The
// standard literature term for this property is "coflasque".
CoflabbyReport is_coflabby(const GLattice& m);

}  // namespace galmod

#endif  // GALMOD_COHOMOLOGY_HPP
