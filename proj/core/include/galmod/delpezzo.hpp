#ifndef GALMOD_DELPEZZO_HPP
#define GALMOD_DELPEZZO_HPP

#include "galmod/resolution.hpp"

namespace galmod {

// Picard lattice preset of a Del Pezzo surface of degree 5 or 6, with the
// standard basis l0, ..., lr of the blow-up model.  Vectors are written in
// the chart (a, b_1, ..., b_r) <-> a*l0 - sum_i b_i*l_i, which makes the
// intersection pairing diag(1, -1, ..., -1) and the canonical class
// (-3, -1, ..., -1).
struct PicardLattice {
  int degree = 0;
  std::size_t rank = 0;  // 1 + r
  std::vector<std::string> basis_names;
  IntegerMatrix pairing;
  IntVector canonical;
};

// degree 5: rank 5 (four blown-up points); degree 6: rank 4.
// Throws UnsupportedDegree otherwise.
PicardLattice picard_preset(int degree);

Int intersection(const PicardLattice& p, const IntVector& u,
                 const IntVector& v);

// All integer vectors orthogonal to the canonical class with self-pairing
// -2, in lexicographic order.  The pairing is negative definite there, so an
// explicit coordinate box contains them all: the orthogonality relation
// sum b_i = 3a plus Cauchy-Schwarz give a^2 (9 - r) <= 2r and
// b_i^2 <= a^2 + 2.
std::vector<IntVector> roots(const PicardLattice& p);

// The four simple reflections of the degree-5 lattice in chart coordinates,
// named s1..s4: s1..s3 swap (b_i, b_{i+1}), and
// s4: (a, b) -> (2a-b1-b2-b3, a-b2-b3, a-b1-b3, a-b1-b2, b4).
std::vector<NamedGenerator> simple_reflections_dp5();

// x -> x + (x, root) root for a root of self-pairing -2; involutive and
// pairing-preserving.  Throws NotARoot.
IntegerMatrix reflection_matrix(const PicardLattice& p, const IntVector& root);

// Reflection group of the preset: degree 5 is generated by s1..s4 (order
// 120), degree 6 by the reflections at l1-l2, l2-l3, l0-l1-l2-l3 (order 12).
GroupPtr weyl_group(const PicardLattice& p);

// h_i = l0 - l_i for i = 1..4 and h5 = 2*l0 - l1 - l2 - l3 - l4; together
// with the canonical class they generate the degree-5 lattice, and s_i
// interchanges h_i and h_{i+1}.
std::vector<IntVector> h_vectors_dp5();

// The explicit rank-6 resolution of the degree-5 Picard lattice, restricted
// to a subgroup w of its reflection group: P has basis e, e1..e5 with s_i
// swapping e_i, e_{i+1} and fixing e; f maps e to the canonical class and
// e_i to h_i; the kernel is spanned by 2e + e1 + ... + e5 and carries the
// trivial action.  The splitting comes from the retraction e -> -2,
// e_i -> 1, which is equivariant for the full group and hence for every w.
Resolution dp5_resolution(const Subgroup& w);

// Orbit sizes of w on the five permuted basis vectors e1..e5, sorted
// descending.
std::vector<std::size_t> dp5_orbit_sizes(const Subgroup& w);

}  // namespace galmod

#endif  // GALMOD_DELPEZZO_HPP
