#ifndef GALMOD_LATTICE_HPP
#define GALMOD_LATTICE_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "galmod/group.hpp"

namespace galmod {

inline constexpr std::size_t kDefaultIsoBound = 3;

// A permutation lattice Z[G/H_1] + ... + Z[G/H_k]: one part per summand,
// each part naming a subgroup class by its index in
// group->subgroup_classes().  Basis points are ordered part by part, cosets
// in breadth-first order of their representatives.
struct PermutationDescriptor {
  std::vector<std::size_t> parts;
  std::vector<std::string> basis_labels;
};

// A free Z-module of finite rank with a group action by unimodular
// matrices.  Matrices act on column vectors from the left, so
// (gh).v = g.(h.v).  Action matrices are stored per generator and extended
// multiplicatively along reduced words; permutation lattices additionally
// keep the basis permutation, and kernels of large resolutions defer the
// (expensive) materialization of their matrices until first use.
class GLattice {
 public:
  GLattice() = default;

  // Throws InvalidInput if an action matrix is not unimodular or the
  // extension along words contradicts the multiplication table.
  static GLattice from_generator_actions(GroupPtr group,
                                         std::vector<IntegerMatrix> actions,
                                         bool validate = true);
  static GLattice trivial_action(GroupPtr group, std::size_t rank);
  // The defining representation: generators act by their own matrices.
  static GLattice defining(GroupPtr group);
  // canonical_blocks: basis points are grouped part by part, cosets in
  // breadth-first representative order (the layout permutation_lattice
  // produces); algorithms that walk part blocks require it.
  static GLattice permutation_action(
      GroupPtr group, PermutationDescriptor descriptor,
      std::vector<std::vector<std::uint32_t>> generator_perms,
      bool canonical_blocks = false);
  static GLattice deferred(
      GroupPtr group, std::size_t rank,
      std::function<IntegerMatrix(std::size_t)> provider);

  const GroupPtr& group() const { return group_; }
  std::size_t rank() const { return rank_; }

  const IntegerMatrix& generator_action(std::size_t gi) const;
  IntegerMatrix element_action(std::size_t element) const;
  IntVector apply_element(std::size_t element, const IntVector& v) const;

  bool has_permutation_structure() const { return descriptor_.has_value(); }
  bool has_canonical_permutation_blocks() const { return canonical_blocks_; }
  const PermutationDescriptor& descriptor() const { return *descriptor_; }
  const std::vector<std::uint32_t>& generator_permutation(std::size_t gi) const {
    return perms_[gi];
  }
  std::vector<std::uint32_t> element_permutation(std::size_t element) const;

 private:
  struct LazyCache {
    std::mutex mu;
    std::vector<std::optional<IntegerMatrix>> mats;
  };

  GroupPtr group_;
  std::size_t rank_ = 0;
  bool canonical_blocks_ = false;
  std::vector<IntegerMatrix> dense_;
  std::optional<PermutationDescriptor> descriptor_;
  std::vector<std::vector<std::uint32_t>> perms_;
  std::function<IntegerMatrix(std::size_t)> provider_;
  mutable std::shared_ptr<LazyCache> cache_;
};

using LatticePtr = std::shared_ptr<const GLattice>;

// An equivariant map between lattices over the same group;
// matrix * action_source(g) = action_target(g) * matrix for every generator.
struct GMap {
  LatticePtr source;
  LatticePtr target;
  IntegerMatrix matrix;  // target.rank x source.rank

  bool is_equivariant() const;
  // Validates shape and equivariance; throws InvalidInput on failure.
  static GMap checked(LatticePtr source, LatticePtr target,
                      IntegerMatrix matrix);
  // Shape check only; for maps equivariant by construction.
  static GMap unchecked(LatticePtr source, LatticePtr target,
                        IntegerMatrix matrix);
};

// Saturated (HNF canonical) basis of the H-fixed sublattice M^H, as columns.
IntegerMatrix invariant_sublattice(const GLattice& m, const Subgroup& h);

// Z-basis of the lattice of equivariant maps M -> N (same group).  Dense
// construction; meant for small ranks.
std::vector<IntegerMatrix> hom_lattice(const GLattice& m, const GLattice& n);

// Same underlying lattice, action restricted to H, with H re-enumerated as a
// standalone group (generator names are the parent element words).
GLattice restrict_action(const GLattice& m, const Subgroup& h);

struct IsoVerdict {
  enum class Kind { Yes, NoCertain, Unknown };
  Kind kind = Kind::Unknown;
  std::optional<IntegerMatrix> witness;  // unimodular equivariant, on Yes
  std::string reason;

  bool yes() const { return kind == Kind::Yes; }
};

// Semi-decision for equivariant isomorphism.  NoCertain is backed by a rank
// or invariant-rank obstruction (or a trivial hom lattice); Yes carries a
// unimodular witness; Unknown means the bounded search over integer
// combinations of the hom-lattice basis (coefficients in
// [-search_bound, search_bound]) was exhausted or exceeded its budget.
IsoVerdict equivariant_isomorphic(const GLattice& m, const GLattice& n,
                                  std::size_t search_bound = kDefaultIsoBound);

}  // namespace galmod

#endif  // GALMOD_LATTICE_HPP
