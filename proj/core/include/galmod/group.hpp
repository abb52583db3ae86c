#ifndef GALMOD_GROUP_HPP
#define GALMOD_GROUP_HPP

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "galmod/matrix.hpp"

namespace galmod {

inline constexpr std::size_t kDefaultElementCap = 100000;

struct NamedGenerator {
  std::string name;
  IntegerMatrix matrix;
};

class FiniteMatrixGroup;
class Subgroup;
using GroupPtr = std::shared_ptr<const FiniteMatrixGroup>;

// A finite subgroup of GL_n(Z), enumerated by breadth-first closure of its
// generators.  Element 0 is the identity; elements are ordered by word
// length, then lexicographically by generator name.  Immutable after
// enumeration; all queries are read-only.
class FiniteMatrixGroup
    : public std::enable_shared_from_this<FiniteMatrixGroup> {
 public:
  // Generators are sorted by name before closure; names must be unique and
  // nonempty.  Throws NonUnimodularGenerator or CapExceeded.
  static GroupPtr enumerate(std::vector<NamedGenerator> generators,
                            std::size_t element_cap = kDefaultElementCap);

  std::size_t rank() const { return rank_; }
  std::size_t order() const { return elements_.size(); }
  std::size_t element_cap() const { return element_cap_; }
  const std::vector<NamedGenerator>& generators() const { return generators_; }
  const IntegerMatrix& element(std::size_t i) const { return elements_[i]; }
  static constexpr std::size_t identity_index() { return 0; }

  // Element index of generator g (generators can coincide as elements).
  std::size_t generator_element(std::size_t g) const {
    return generator_elements_[g];
  }

  // Index of elem_i * elem_j.
  std::size_t product(std::size_t i, std::size_t j) const;
  std::size_t inverse(std::size_t i) const;
  std::size_t element_order(std::size_t i) const;
  std::size_t index_of(const IntegerMatrix& m) const;  // throws if absent

  // Reduced word of element i as generator indices (empty for identity).
  const std::vector<std::size_t>& word(std::size_t i) const {
    return words_[i];
  }
  // "e" for the identity, otherwise names joined by '*', e.g. "s1*s2".
  std::string element_name(std::size_t i) const;

  // Conjugacy-class representatives of all subgroups, sorted by order then
  // member list.  Computed once and cached; complete for every finite group,
  // practical up to order a few hundred.
  const std::vector<Subgroup>& subgroup_classes() const;
  // Total number of subgroups (not just classes); cross-check value.
  std::size_t subgroup_count() const;

 private:
  FiniteMatrixGroup() = default;

  std::size_t rank_ = 0;
  std::size_t element_cap_ = kDefaultElementCap;
  std::vector<NamedGenerator> generators_;
  std::vector<std::size_t> generator_elements_;
  std::vector<IntegerMatrix> elements_;
  std::vector<std::vector<std::size_t>> words_;
  std::map<IntVector, std::size_t> index_;  // flattened entries -> element
  std::vector<std::size_t> mult_;  // full order x order table (small orders)
  std::vector<std::size_t> inverse_;

  mutable std::once_flag classes_once_;
  mutable std::unique_ptr<const std::vector<Subgroup>> classes_;
  mutable std::size_t subgroup_count_ = 0;
};

// A subgroup given by its sorted element-index list in a parent group.
class Subgroup {
 public:
  Subgroup(GroupPtr parent, std::vector<std::size_t> members);

  static Subgroup trivial(GroupPtr parent);
  static Subgroup full(GroupPtr parent);
  static Subgroup generated(GroupPtr parent,
                            const std::vector<std::size_t>& gens);
  static Subgroup cyclic(GroupPtr parent, std::size_t element);

  const GroupPtr& parent() const { return parent_; }
  const std::vector<std::size_t>& members() const { return members_; }
  std::size_t order() const { return members_.size(); }
  bool contains(std::size_t element) const;
  bool operator==(const Subgroup& other) const {
    return members_ == other.members_;
  }

  // Closure under product and inverse, identity present.  Cheap enough for
  // tests; construction paths produce closed sets by design.
  bool is_closed() const;

  // Deterministic small generating set: elements greedily added in order of
  // decreasing element order, ties by index.  Empty for the trivial subgroup.
  std::vector<std::size_t> generating_set() const;

  Subgroup conjugate(std::size_t g) const;

 private:
  GroupPtr parent_;
  std::vector<std::size_t> members_;
};

}  // namespace galmod

#endif  // GALMOD_GROUP_HPP
