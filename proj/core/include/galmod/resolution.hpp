#ifndef GALMOD_RESOLUTION_HPP
#define GALMOD_RESOLUTION_HPP

#include <optional>

#include "galmod/cohomology.hpp"
#include "galmod/lattice.hpp"

namespace galmod {

// The coset lattice sum named by `descriptor`: rank = sum of the indices
// [G:H] over the parts, action matrices are 0/1 permutations given by left
// multiplication on cosets.  Basis order: parts in descriptor order, cosets
// in breadth-first order of their representatives.  Labels are filled in if
// the descriptor does not carry them.
GLattice permutation_lattice(GroupPtr group, PermutationDescriptor descriptor);

struct Splitting {
  GMap section;     // s: M -> P with f o s = id
  GMap retraction;  // r: P -> C with r o iota = id
};

// An exact sequence 0 -> C -> P -> M -> 0 with P a permutation lattice and
// C coflasque.  `kernel_cols`/`image_cols`/`kernel_coords` keep the SNF
// bookkeeping of the kernel computation (iota is made of the kernel columns
// of the transform V, kernel_coords is V^{-1}); the split certificates use
// them to avoid dense rank(P)^3 work.
struct Resolution {
  LatticePtr m, p, c;
  GMap inclusion;   // iota: C -> P
  GMap surjection;  // f: P -> M
  std::optional<Splitting> splitting;

  std::vector<std::size_t> kernel_cols, image_cols;
  IntegerMatrix kernel_coords;
};

// The classical construction: P is the sum over all subgroup classes [H] of
// [G:H]-coset lattices with multiplicity rank(M^H), f(gH (x) m) = g.m, and
// C = ker f.  Coflasqueness of C is verified before returning, through the
// connecting isomorphism H^1(H, C) = coker(P^H -> M^H) (exactness plus
// H^1(H, P) = 0 for permutation lattices); a violation throws
// CoflasquenessViolated and signals a bug, never bad input.
Resolution coflasque_resolution(const GLattice& m);

namespace detail {
// Assembles 0 -> ker f -> P -> M -> 0 from a structured permutation lattice
// P and a surjection matrix, running the full exactness and coflasqueness
// verification.  Shared by coflasque_resolution and the preset resolutions.
Resolution build_resolution(LatticePtr m, LatticePtr p, IntegerMatrix f_mat);
}  // namespace detail

// Equivariant s with f o s = id over Z, decided exactly, or absent.  When
// the source of f is a structured permutation lattice the equivariant maps
// M -> P are parametrized through Frobenius reciprocity
// (Hom_G(M, Z[G/H]) = (M^dual)^H) and the section identity becomes a small
// inhomogeneous system; otherwise the entries of s are the unknowns.  Both
// routes decide the same lattice of sections.
std::optional<GMap> section_of_surjection(const GMap& f);

// Equivariant r with r o iota = id, or absent.  Entries of r are the
// unknowns; meant for small ranks.
std::optional<GMap> retraction_of_inclusion(const GMap& iota);

struct InvertibilityVerdict {
  bool invertible = false;
  std::optional<Resolution> resolution;  // with splitting when invertible
  std::optional<SolveObstruction> obstruction;
};

// Complete decision: M is invertible (a direct summand of a permutation
// lattice) iff its coflasque resolution splits.  True comes with the split
// resolution as witness, false with the divisibility obstruction of the
// section system.
InvertibilityVerdict is_invertible(const GLattice& m);

// N = image(id_P - s o f) for a split resolution; equals ker f = image(iota)
// exactly, returned as C with its induced action.  Verifies the block
// witness (s | iota) is unimodular, certifying M + N = P.
GLattice complement_summand(const Resolution& res);

struct PermutationVerdict {
  enum class Kind { Yes, NoCertain, Unknown };
  Kind kind = Kind::Unknown;
  std::optional<PermutationDescriptor> descriptor;
  std::optional<IntegerMatrix> witness;
  std::string reason;

  bool yes() const { return kind == Kind::Yes; }
};

// Is M a permutation lattice?  Candidate descriptors are the multisets of
// subgroup classes matching rank(M) and every invariant rank rank(M^H)
// (for a permutation lattice these are orbit counts, a complete cheap
// screen); each surviving candidate is searched for a unimodular
// equivariant witness at the given bound.
PermutationVerdict is_permutation(const GLattice& m,
                                  std::size_t bound = kDefaultIsoBound);

}  // namespace galmod

#endif  // GALMOD_RESOLUTION_HPP
