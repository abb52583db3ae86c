#include "galmod/group.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace galmod {

namespace {

constexpr std::size_t kMultTableLimit = 512;

IntVector flatten(const IntegerMatrix& m) {
  IntVector key;
  key.reserve(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) key.push_back(m.at(i, j));
  return key;
}

}  // namespace

GroupPtr FiniteMatrixGroup::enumerate(std::vector<NamedGenerator> generators,
                                      std::size_t element_cap) {
  if (generators.empty())
    throw InvalidInput(
        "a group needs at least one generator (the rank is read from them)");
  std::stable_sort(generators.begin(), generators.end(),
                   [](const NamedGenerator& a, const NamedGenerator& b) {
                     return a.name < b.name;
                   });
  for (std::size_t i = 0; i + 1 < generators.size(); ++i)
    if (generators[i].name == generators[i + 1].name)
      throw InvalidInput("duplicate generator name '" + generators[i].name +
                         "'");
  const std::size_t rank = generators.front().matrix.rows();
  for (const NamedGenerator& g : generators) {
    if (g.name.empty()) throw InvalidInput("generator with empty name");
    if (!g.matrix.is_square() || g.matrix.rows() != rank)
      throw InvalidInput("generator '" + g.name + "' has wrong shape");
    if (!g.matrix.is_unimodular()) throw NonUnimodularGenerator(g.name);
  }

  auto group = std::shared_ptr<FiniteMatrixGroup>(new FiniteMatrixGroup());
  FiniteMatrixGroup& g = *group;
  g.rank_ = rank;
  g.element_cap_ = element_cap;
  g.generators_ = std::move(generators);

  auto push = [&g](IntegerMatrix m,
                   std::vector<std::size_t> word) -> std::size_t {
    IntVector key = flatten(m);
    auto it = g.index_.find(key);
    if (it != g.index_.end()) return it->second;
    if (g.elements_.size() >= g.element_cap_)
      throw CapExceeded("group closure passed the element cap of " +
                        std::to_string(g.element_cap_));
    std::size_t id = g.elements_.size();
    g.index_.emplace(std::move(key), id);
    g.elements_.push_back(std::move(m));
    g.words_.push_back(std::move(word));
    return id;
  };

  push(IntegerMatrix::identity(rank), {});
  for (std::size_t cur = 0; cur < g.elements_.size(); ++cur) {
    for (std::size_t gi = 0; gi < g.generators_.size(); ++gi) {
      IntegerMatrix prod = g.elements_[cur] * g.generators_[gi].matrix;
      std::vector<std::size_t> word = g.words_[cur];
      word.push_back(gi);
      push(std::move(prod), std::move(word));
    }
  }

  g.generator_elements_.resize(g.generators_.size());
  for (std::size_t gi = 0; gi < g.generators_.size(); ++gi)
    g.generator_elements_[gi] = g.index_.at(flatten(g.generators_[gi].matrix));

  const std::size_t n = g.order();
  if (n <= kMultTableLimit) {
    g.mult_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        g.mult_[i * n + j] = g.index_.at(flatten(g.elements_[i] * g.elements_[j]));
    g.inverse_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (g.mult_[i * n + j] == 0) {
          g.inverse_[i] = j;
          break;
        }
  }
  return group;
}

std::size_t FiniteMatrixGroup::index_of(const IntegerMatrix& m) const {
  auto it = index_.find(flatten(m));
  if (it == index_.end())
    throw InvalidInput("matrix is not an element of the group");
  return it->second;
}

std::size_t FiniteMatrixGroup::product(std::size_t i, std::size_t j) const {
  if (!mult_.empty()) return mult_[i * order() + j];
  return index_of(elements_[i] * elements_[j]);
}

std::size_t FiniteMatrixGroup::inverse(std::size_t i) const {
  if (!inverse_.empty()) return inverse_[i];
  return index_of(elements_[i].unimodular_inverse());
}

std::size_t FiniteMatrixGroup::element_order(std::size_t i) const {
  std::size_t k = 1, acc = i;
  while (acc != identity_index()) {
    acc = product(acc, i);
    ++k;
  }
  return k;
}

std::string FiniteMatrixGroup::element_name(std::size_t i) const {
  const auto& w = words_[i];
  if (w.empty()) return "e";
  std::ostringstream os;
  for (std::size_t k = 0; k < w.size(); ++k)
    os << (k ? "*" : "") << generators_[w[k]].name;
  return os.str();
}

// ---------------------------------------------------------------------------
// Subgroups

Subgroup::Subgroup(GroupPtr parent, std::vector<std::size_t> members)
    : parent_(std::move(parent)), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()),
                 members_.end());
}

bool Subgroup::contains(std::size_t element) const {
  return std::binary_search(members_.begin(), members_.end(), element);
}

bool Subgroup::is_closed() const {
  if (!contains(FiniteMatrixGroup::identity_index())) return false;
  for (std::size_t a : members_) {
    if (!contains(parent_->inverse(a))) return false;
    for (std::size_t b : members_)
      if (!contains(parent_->product(a, b))) return false;
  }
  return true;
}

namespace {

// Subgroup generated by `gens`, as a sorted index list.  Right-multiplication
// closure of {e} u gens; inverses appear because every generator has finite
// order.
std::vector<std::size_t> closure(const FiniteMatrixGroup& g,
                                 const std::vector<std::size_t>& gens) {
  std::vector<char> member(g.order(), 0);
  std::vector<std::size_t> work;
  auto add = [&](std::size_t e) {
    if (!member[e]) {
      member[e] = 1;
      work.push_back(e);
    }
  };
  add(FiniteMatrixGroup::identity_index());
  for (std::size_t e : gens) add(e);
  for (std::size_t k = 0; k < work.size(); ++k)
    for (std::size_t e : gens) add(g.product(work[k], e));
  std::sort(work.begin(), work.end());
  return work;
}

}  // namespace

Subgroup Subgroup::trivial(GroupPtr parent) {
  return Subgroup(std::move(parent), {FiniteMatrixGroup::identity_index()});
}

Subgroup Subgroup::full(GroupPtr parent) {
  std::vector<std::size_t> all(parent->order());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return Subgroup(std::move(parent), std::move(all));
}

Subgroup Subgroup::generated(GroupPtr parent,
                             const std::vector<std::size_t>& gens) {
  auto members = closure(*parent, gens);
  return Subgroup(std::move(parent), std::move(members));
}

Subgroup Subgroup::cyclic(GroupPtr parent, std::size_t element) {
  return generated(std::move(parent), {element});
}

std::vector<std::size_t> Subgroup::generating_set() const {
  const FiniteMatrixGroup& g = *parent_;
  std::vector<std::size_t> candidates = members_;
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](std::size_t a, std::size_t b) {
                     std::size_t oa = g.element_order(a);
                     std::size_t ob = g.element_order(b);
                     if (oa != ob) return oa > ob;
                     return a < b;
                   });
  std::vector<std::size_t> gens;
  std::vector<std::size_t> span = {FiniteMatrixGroup::identity_index()};
  for (std::size_t c : candidates) {
    if (std::binary_search(span.begin(), span.end(), c)) continue;
    gens.push_back(c);
    span = closure(g, gens);
    if (span.size() == members_.size()) break;
  }
  return gens;
}

Subgroup Subgroup::conjugate(std::size_t g) const {
  const FiniteMatrixGroup& grp = *parent_;
  std::size_t ginv = grp.inverse(g);
  std::vector<std::size_t> conj;
  conj.reserve(members_.size());
  for (std::size_t h : members_)
    conj.push_back(grp.product(grp.product(g, h), ginv));
  return Subgroup(parent_, std::move(conj));
}

// ---------------------------------------------------------------------------
// Subgroup conjugacy classes.
//
// Strategy: all cyclic subgroups, then iterated closure of pairwise joins
// until a fixpoint, deduplicated by member set, then conjugacy reduction.
// Every subgroup is a join of cyclic subgroups, so the fixpoint holds the
// complete subgroup list.

const std::vector<Subgroup>& FiniteMatrixGroup::subgroup_classes() const {
  std::call_once(classes_once_, [this]() {
    const std::size_t n = order();
    // members -> small generating set, so joins stay cheap
    std::map<std::vector<std::size_t>, std::vector<std::size_t>> subs;
    for (std::size_t e = 0; e < n; ++e) {
      std::vector<std::size_t> members = closure(*this, {e});
      if (!subs.count(members))
        subs.emplace(std::move(members), std::vector<std::size_t>{e});
    }
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>>
          snapshot(subs.begin(), subs.end());
      for (std::size_t a = 0; a < snapshot.size(); ++a) {
        for (std::size_t b = a + 1; b < snapshot.size(); ++b) {
          if (std::includes(snapshot[a].first.begin(), snapshot[a].first.end(),
                            snapshot[b].first.begin(),
                            snapshot[b].first.end()) ||
              std::includes(snapshot[b].first.begin(), snapshot[b].first.end(),
                            snapshot[a].first.begin(), snapshot[a].first.end()))
            continue;
          std::vector<std::size_t> gens = snapshot[a].second;
          gens.insert(gens.end(), snapshot[b].second.begin(),
                      snapshot[b].second.end());
          std::vector<std::size_t> join = closure(*this, gens);
          if (!subs.count(join)) {
            subs.emplace(std::move(join), std::move(gens));
            grew = true;
          }
        }
      }
    }

    subgroup_count_ = subs.size();

    // Conjugacy reduction; the representative of a class is its
    // lexicographically smallest member list.
    std::set<std::vector<std::size_t>> remaining;
    for (const auto& [members, gens] : subs) remaining.insert(members);
    GroupPtr self = shared_from_this();
    std::vector<Subgroup> reps;
    while (!remaining.empty()) {
      Subgroup seed(self, *remaining.begin());
      std::vector<std::size_t> best = seed.members();
      for (std::size_t g = 0; g < n; ++g) {
        Subgroup conj = seed.conjugate(g);
        remaining.erase(conj.members());
        if (conj.members() < best) best = conj.members();
      }
      reps.emplace_back(self, std::move(best));
    }
    std::sort(reps.begin(), reps.end(),
              [](const Subgroup& a, const Subgroup& b) {
                if (a.order() != b.order()) return a.order() < b.order();
                return a.members() < b.members();
              });
    classes_ = std::make_unique<const std::vector<Subgroup>>(std::move(reps));
  });
  return *classes_;
}

std::size_t FiniteMatrixGroup::subgroup_count() const {
  subgroup_classes();
  return subgroup_count_;
}

}  // namespace galmod
