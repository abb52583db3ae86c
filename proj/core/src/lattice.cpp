#include "galmod/lattice.hpp"

#include <algorithm>

namespace galmod {

namespace {

IntegerMatrix permutation_matrix(const std::vector<std::uint32_t>& p) {
  IntegerMatrix m(p.size(), p.size());
  for (std::size_t c = 0; c < p.size(); ++c) m.at(p[c], c) = 1;
  return m;
}

}  // namespace

GLattice GLattice::from_generator_actions(GroupPtr group,
                                          std::vector<IntegerMatrix> actions,
                                          bool validate) {
  if (actions.size() != group->generators().size())
    throw InvalidInput("one action matrix per group generator expected");
  GLattice lat;
  lat.group_ = std::move(group);
  lat.rank_ = actions.empty() ? 0 : actions.front().rows();
  for (std::size_t gi = 0; gi < actions.size(); ++gi) {
    const IntegerMatrix& a = actions[gi];
    if (!a.is_square() || a.rows() != lat.rank_)
      throw InvalidInput("action matrix for generator '" +
                         lat.group_->generators()[gi].name +
                         "' has wrong shape");
    if (validate && !a.is_unimodular())
      throw NonUnimodularGenerator(lat.group_->generators()[gi].name);
  }
  lat.dense_ = std::move(actions);
  if (validate) {
    // The extension along reduced words must be a homomorphism:
    // A(e) A(g) = A(e g) for every element e and generator g.
    const FiniteMatrixGroup& g = *lat.group_;
    std::vector<IntegerMatrix> all(g.order());
    all[0] = IntegerMatrix::identity(lat.rank_);
    for (std::size_t e = 1; e < g.order(); ++e) {
      const auto& w = g.word(e);
      all[e] = all[g.identity_index()];
      for (std::size_t gi : w) all[e] = all[e] * lat.dense_[gi];
    }
    for (std::size_t e = 0; e < g.order(); ++e)
      for (std::size_t gi = 0; gi < g.generators().size(); ++gi) {
        std::size_t eg = g.product(e, g.generator_element(gi));
        if (!(all[e] * lat.dense_[gi] == all[eg]))
          throw InvalidInput(
              "action does not respect the multiplication table at element " +
              g.element_name(e) + " and generator " +
              g.generators()[gi].name);
      }
  }
  return lat;
}

GLattice GLattice::trivial_action(GroupPtr group, std::size_t rank) {
  std::vector<IntegerMatrix> actions(group->generators().size(),
                                     IntegerMatrix::identity(rank));
  GLattice lat;
  lat.group_ = std::move(group);
  lat.rank_ = rank;
  lat.dense_ = std::move(actions);
  return lat;
}

GLattice GLattice::defining(GroupPtr group) {
  std::vector<IntegerMatrix> actions;
  actions.reserve(group->generators().size());
  for (const NamedGenerator& g : group->generators()) actions.push_back(g.matrix);
  GLattice lat;
  lat.rank_ = group->rank();
  lat.group_ = std::move(group);
  lat.dense_ = std::move(actions);
  return lat;
}

GLattice GLattice::permutation_action(
    GroupPtr group, PermutationDescriptor descriptor,
    std::vector<std::vector<std::uint32_t>> generator_perms,
    bool canonical_blocks) {
  GLattice lat;
  lat.group_ = std::move(group);
  lat.rank_ = descriptor.basis_labels.size();
  lat.canonical_blocks_ = canonical_blocks;
  lat.descriptor_ = std::move(descriptor);
  lat.perms_ = std::move(generator_perms);
  lat.cache_ = std::make_shared<LazyCache>();
  lat.cache_->mats.resize(lat.perms_.size());
  return lat;
}

GLattice GLattice::deferred(GroupPtr group, std::size_t rank,
                            std::function<IntegerMatrix(std::size_t)> provider) {
  GLattice lat;
  lat.rank_ = rank;
  lat.provider_ = std::move(provider);
  lat.cache_ = std::make_shared<LazyCache>();
  lat.cache_->mats.resize(group->generators().size());
  lat.group_ = std::move(group);
  return lat;
}

const IntegerMatrix& GLattice::generator_action(std::size_t gi) const {
  if (!dense_.empty()) return dense_[gi];
  std::lock_guard<std::mutex> lock(cache_->mu);
  auto& slot = cache_->mats[gi];
  if (!slot) {
    if (descriptor_)
      slot = permutation_matrix(perms_[gi]);
    else
      slot = provider_(gi);
  }
  return *slot;
}

IntegerMatrix GLattice::element_action(std::size_t element) const {
  const auto& w = group_->word(element);
  IntegerMatrix acc = IntegerMatrix::identity(rank_);
  for (std::size_t gi : w) acc = acc * generator_action(gi);
  return acc;
}

IntVector GLattice::apply_element(std::size_t element, const IntVector& v) const {
  if (descriptor_) {
    std::vector<std::uint32_t> p = element_permutation(element);
    IntVector out(rank_);
    for (std::size_t c = 0; c < rank_; ++c) out[p[c]] = v[c];
    return out;
  }
  const auto& w = group_->word(element);
  IntVector out = v;
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    out = generator_action(*it).apply(out);
  return out;
}

std::vector<std::uint32_t> GLattice::element_permutation(
    std::size_t element) const {
  const auto& w = group_->word(element);
  std::vector<std::uint32_t> p(rank_);
  for (std::size_t i = 0; i < rank_; ++i) p[i] = static_cast<std::uint32_t>(i);
  // perm(g1*...*gk) = perm(g1) o ... o perm(gk)
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    const auto& q = perms_[*it];
    for (std::size_t i = 0; i < rank_; ++i) p[i] = q[p[i]];
  }
  return p;
}

// ---------------------------------------------------------------------------

bool GMap::is_equivariant() const {
  const std::size_t gens = source->group()->generators().size();
  for (std::size_t gi = 0; gi < gens; ++gi) {
    // Permutation structure sidesteps dense action matrices on either side:
    // right multiplication permutes columns, left multiplication rows.
    IntegerMatrix lhs(matrix.rows(), matrix.cols());
    if (source->has_permutation_structure()) {
      const auto& p = source->generator_permutation(gi);
      for (std::size_t c = 0; c < matrix.cols(); ++c)
        for (std::size_t r = 0; r < matrix.rows(); ++r)
          lhs.at(r, c) = matrix.at(r, p[c]);
    } else {
      lhs = matrix * source->generator_action(gi);
    }
    IntegerMatrix rhs(matrix.rows(), matrix.cols());
    if (target->has_permutation_structure()) {
      const auto& p = target->generator_permutation(gi);
      for (std::size_t r = 0; r < matrix.rows(); ++r)
        for (std::size_t c = 0; c < matrix.cols(); ++c)
          rhs.at(p[r], c) = matrix.at(r, c);
    } else {
      rhs = target->generator_action(gi) * matrix;
    }
    if (!(lhs == rhs)) return false;
  }
  return true;
}

GMap GMap::unchecked(LatticePtr source, LatticePtr target,
                     IntegerMatrix matrix) {
  if (matrix.rows() != target->rank() || matrix.cols() != source->rank())
    throw DimensionMismatch("map matrix shape");
  if (source->group() != target->group())
    throw InvalidInput("map between lattices over different groups");
  return GMap{std::move(source), std::move(target), std::move(matrix)};
}

GMap GMap::checked(LatticePtr source, LatticePtr target, IntegerMatrix matrix) {
  GMap m = unchecked(std::move(source), std::move(target), std::move(matrix));
  if (!m.is_equivariant()) throw InvalidInput("map is not equivariant");
  return m;
}

// ---------------------------------------------------------------------------

IntegerMatrix invariant_sublattice(const GLattice& m, const Subgroup& h) {
  if (h.parent() != m.group())
    throw InvalidInput("subgroup belongs to a different group");
  std::vector<std::size_t> gens = h.generating_set();
  if (gens.empty()) return IntegerMatrix::identity(m.rank());
  IntegerMatrix stack(0, m.rank());
  const IntegerMatrix id = IntegerMatrix::identity(m.rank());
  for (std::size_t e : gens)
    stack = IntegerMatrix::vstack(stack, m.element_action(e) - id);
  return kernel_basis(stack);
}

std::vector<IntegerMatrix> hom_lattice(const GLattice& m, const GLattice& n) {
  if (m.group() != n.group())
    throw InvalidInput("hom lattice needs a common group");
  const std::size_t nm = m.rank(), nn = n.rank();
  const std::size_t unknowns = nn * nm;  // T[i][k] at index i*nm + k
  const std::size_t gens = m.group()->generators().size();
  IntegerMatrix rel(gens * unknowns, unknowns);
  std::size_t row = 0;
  for (std::size_t gi = 0; gi < gens; ++gi) {
    const IntegerMatrix& am = m.generator_action(gi);
    const IntegerMatrix& an = n.generator_action(gi);
    for (std::size_t i = 0; i < nn; ++i)
      for (std::size_t j = 0; j < nm; ++j) {
        // (T A_m - A_n T)[i][j] = 0
        for (std::size_t k = 0; k < nm; ++k)
          rel.at(row, i * nm + k) += am.at(k, j);
        for (std::size_t k = 0; k < nn; ++k)
          rel.at(row, k * nm + j) -= an.at(i, k);
        ++row;
      }
  }
  IntegerMatrix basis = kernel_basis(rel);
  std::vector<IntegerMatrix> out;
  out.reserve(basis.cols());
  for (std::size_t c = 0; c < basis.cols(); ++c) {
    IntegerMatrix t(nn, nm);
    for (std::size_t i = 0; i < nn; ++i)
      for (std::size_t k = 0; k < nm; ++k) t.at(i, k) = basis.at(i * nm + k, c);
    out.push_back(std::move(t));
  }
  return out;
}

GLattice restrict_action(const GLattice& m, const Subgroup& h) {
  if (h.parent() != m.group())
    throw InvalidInput("subgroup belongs to a different group");
  const FiniteMatrixGroup& g = *m.group();
  std::vector<std::size_t> gens = h.generating_set();
  std::vector<NamedGenerator> sub_gens;
  if (gens.empty()) {
    sub_gens.push_back({"e", IntegerMatrix::identity(g.rank())});
  } else {
    for (std::size_t e : gens)
      sub_gens.push_back({g.element_name(e), g.element(e)});
  }
  GroupPtr sub =
      FiniteMatrixGroup::enumerate(std::move(sub_gens), g.element_cap());
  if (sub->order() != h.order())
    throw InternalInvariant("restricted group has wrong order");
  // Enumeration sorts generators by name; realign the actions by looking
  // each generator matrix up in the parent.
  std::vector<IntegerMatrix> actions;
  for (const NamedGenerator& gen : sub->generators())
    actions.push_back(m.element_action(g.index_of(gen.matrix)));
  return GLattice::from_generator_actions(std::move(sub), std::move(actions),
                                          /*validate=*/false);
}

IsoVerdict equivariant_isomorphic(const GLattice& m, const GLattice& n,
                                  std::size_t search_bound) {
  if (m.group() != n.group())
    throw InvalidInput("isomorphism test needs a common group");
  if (m.rank() != n.rank())
    return {IsoVerdict::Kind::NoCertain, std::nullopt, "rank mismatch"};

  const std::size_t gens = m.group()->generators().size();
  bool same = true;
  for (std::size_t gi = 0; gi < gens && same; ++gi)
    same = m.generator_action(gi) == n.generator_action(gi);
  if (same)
    return {IsoVerdict::Kind::Yes, IntegerMatrix::identity(m.rank()), ""};

  const auto& classes = m.group()->subgroup_classes();
  for (std::size_t ci = 0; ci < classes.size(); ++ci) {
    std::size_t rm = invariant_sublattice(m, classes[ci]).cols();
    std::size_t rn = invariant_sublattice(n, classes[ci]).cols();
    if (rm != rn)
      return {IsoVerdict::Kind::NoCertain, std::nullopt,
              "invariant ranks differ at subgroup class " +
                  std::to_string(ci) + " (" + std::to_string(rm) + " vs " +
                  std::to_string(rn) + ")"};
  }

  std::vector<IntegerMatrix> basis = hom_lattice(m, n);
  if (basis.empty())
    return {IsoVerdict::Kind::NoCertain, std::nullopt,
            "the equivariant hom lattice is trivial"};

  // Shells by max coefficient magnitude, lexicographic within a shell.
  constexpr std::size_t kBudget = 1000000;
  const std::size_t r = basis.size();
  std::size_t examined = 0;
  for (std::size_t shell = 1; shell <= search_bound; ++shell) {
    const long long lo = -static_cast<long long>(shell);
    const long long hi = static_cast<long long>(shell);
    std::vector<long long> c(r, lo);
    for (;;) {
      bool on_shell = false;
      for (long long v : c)
        if (v == lo || v == hi) {
          on_shell = true;
          break;
        }
      if (on_shell) {
        if (++examined > kBudget)
          return {IsoVerdict::Kind::Unknown, std::nullopt,
                  "witness search exceeded its candidate budget"};
        IntegerMatrix t(n.rank(), m.rank());
        for (std::size_t b = 0; b < r; ++b)
          if (c[b] != 0)
            for (std::size_t i = 0; i < t.rows(); ++i)
              for (std::size_t j = 0; j < t.cols(); ++j)
                t.at(i, j) += Int(c[b]) * basis[b].at(i, j);
        if (t.is_unimodular())
          return {IsoVerdict::Kind::Yes, std::move(t), ""};
      }
      std::size_t pos = 0;
      while (pos < r && c[pos] == hi) c[pos++] = lo;
      if (pos == r) break;
      ++c[pos];
    }
  }
  return {IsoVerdict::Kind::Unknown, std::nullopt,
          "no unimodular combination within bound " +
              std::to_string(search_bound)};
}

}  // namespace galmod
