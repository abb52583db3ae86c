#include "galmod/delpezzo.hpp"

#include <algorithm>
#include <cmath>

namespace galmod {

PicardLattice picard_preset(int degree) {
  if (degree != 5 && degree != 6)
    throw UnsupportedDegree("supported preset degrees are 5 and 6");
  PicardLattice p;
  p.degree = degree;
  p.rank = degree == 5 ? 5 : 4;
  IntVector diag(p.rank, -1);
  diag[0] = 1;
  p.pairing = IntegerMatrix::diagonal(diag);
  p.canonical.assign(p.rank, -1);
  p.canonical[0] = -3;
  for (std::size_t i = 0; i < p.rank; ++i)
    p.basis_names.push_back("l" + std::to_string(i));
  return p;
}

Int intersection(const PicardLattice& p, const IntVector& u,
                 const IntVector& v) {
  if (u.size() != p.rank || v.size() != p.rank)
    throw DimensionMismatch("intersection of vectors of wrong length");
  Int acc = 0;
  for (std::size_t i = 0; i < p.rank; ++i)
    acc += u[i] * p.pairing.at(i, i) * v[i];
  return acc;
}

std::vector<IntVector> roots(const PicardLattice& p) {
  const std::size_t r = p.rank - 1;
  // a^2 (9 - r) <= 2r, so the box below is exhaustive.
  long long a_bound = static_cast<long long>(
      std::sqrt(2.0 * static_cast<double>(r) / (9.0 - static_cast<double>(r))));
  std::vector<IntVector> out;
  IntVector v(p.rank);
  // Depth-first over b_1..b_r with running sum and square-sum targets:
  // sum b_i = 3a and sum b_i^2 = a^2 + 2.
  std::function<void(std::size_t, long long, long long)> scan =
      [&](std::size_t i, long long sum_left, long long sq_left) {
        if (i == p.rank) {
          if (sum_left == 0 && sq_left == 0) out.push_back(v);
          return;
        }
        long long b_bound = static_cast<long long>(
            std::sqrt(static_cast<double>(sq_left) + 0.5));
        for (long long b = -b_bound; b <= b_bound; ++b) {
          if (b * b > sq_left) continue;
          v[i] = b;
          scan(i + 1, sum_left - b, sq_left - b * b);
        }
        v[i] = 0;
      };
  for (long long a = -a_bound; a <= a_bound; ++a) {
    v[0] = a;
    scan(1, 3 * a, a * a + 2);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NamedGenerator> simple_reflections_dp5() {
  std::vector<NamedGenerator> gens;
  for (std::size_t i = 1; i <= 3; ++i) {
    IntegerMatrix m = IntegerMatrix::identity(5);
    m.at(i, i) = 0;
    m.at(i + 1, i + 1) = 0;
    m.at(i, i + 1) = 1;
    m.at(i + 1, i) = 1;
    gens.push_back({"s" + std::to_string(i), std::move(m)});
  }
  gens.push_back({"s4", IntegerMatrix::from_rows({{2, -1, -1, -1, 0},
                                                  {1, 0, -1, -1, 0},
                                                  {1, -1, 0, -1, 0},
                                                  {1, -1, -1, 0, 0},
                                                  {0, 0, 0, 0, 1}})});
  return gens;
}

IntegerMatrix reflection_matrix(const PicardLattice& p, const IntVector& root) {
  if (intersection(p, root, root) != -2)
    throw NotARoot("reflection vector must have self-pairing -2");
  IntegerMatrix m = IntegerMatrix::identity(p.rank);
  for (std::size_t j = 0; j < p.rank; ++j) {
    IntVector basis(p.rank);
    basis[j] = 1;
    Int coeff = intersection(p, basis, root);
    for (std::size_t i = 0; i < p.rank; ++i) m.at(i, j) += coeff * root[i];
  }
  return m;
}

GroupPtr weyl_group(const PicardLattice& p) {
  if (p.degree == 5) return FiniteMatrixGroup::enumerate(simple_reflections_dp5());
  // Degree 6: the degree-5 simple roots that survive in rank 4.
  std::vector<NamedGenerator> gens;
  gens.push_back({"s1", reflection_matrix(p, {0, -1, 1, 0})});
  gens.push_back({"s2", reflection_matrix(p, {0, 0, -1, 1})});
  gens.push_back({"s4", reflection_matrix(p, {1, 1, 1, 1})});
  return FiniteMatrixGroup::enumerate(std::move(gens));
}

std::vector<IntVector> h_vectors_dp5() {
  return {{1, 1, 0, 0, 0},
          {1, 0, 1, 0, 0},
          {1, 0, 0, 1, 0},
          {1, 0, 0, 0, 1},
          {2, 1, 1, 1, 1}};
}

namespace {

// Permutation of the basis e, e1..e5 (points 0..5) for a reflection-group
// element given by its word in s1..s4: s_i swaps points i and i+1, e stays.
std::vector<std::uint32_t> basis_permutation(
    const std::vector<std::size_t>& word) {
  std::vector<std::uint32_t> p(6);
  for (std::size_t i = 0; i < 6; ++i) p[i] = static_cast<std::uint32_t>(i);
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    std::uint32_t a = static_cast<std::uint32_t>(*it + 1);
    std::uint32_t b = a + 1;
    for (std::size_t i = 0; i < 6; ++i) {
      if (p[i] == a)
        p[i] = b;
      else if (p[i] == b)
        p[i] = a;
    }
  }
  return p;
}

}  // namespace

std::vector<std::size_t> dp5_orbit_sizes(const Subgroup& w) {
  const FiniteMatrixGroup& g = *w.parent();
  std::vector<std::size_t> root(6);
  for (std::size_t i = 0; i < 6; ++i) root[i] = i;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };
  for (std::size_t e : w.generating_set()) {
    std::vector<std::uint32_t> p = basis_permutation(g.word(e));
    for (std::size_t i = 1; i < 6; ++i) {
      std::size_t a = find(i), b = find(p[i]);
      if (a != b) root[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<std::size_t> size(6, 0);
  for (std::size_t i = 1; i < 6; ++i) ++size[find(i)];
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i < 6; ++i)
    if (find(i) == i) out.push_back(size[i]);
  std::sort(out.rbegin(), out.rend());
  return out;
}

Resolution dp5_resolution(const Subgroup& w) {
  const FiniteMatrixGroup& weyl5 = *w.parent();
  if (weyl5.rank() != 5)
    throw InvalidInput("subgroup must live in the degree-5 reflection group");

  // Restrict the Picard action to w; the restricted group is standalone.
  GLattice picard = restrict_action(GLattice::defining(w.parent()), w);
  GroupPtr sub = picard.group();

  // P: basis e, e1..e5, permuted through the words of the chosen generators.
  std::vector<std::vector<std::uint32_t>> gen_perms;
  for (const NamedGenerator& gen : sub->generators()) {
    std::size_t parent_elem = weyl5.index_of(gen.matrix);
    gen_perms.push_back(basis_permutation(weyl5.word(parent_elem)));
  }

  // Orbits of the basis points; each orbit is one coset summand whose class
  // is the conjugacy class of its point stabilizer.
  std::vector<std::vector<std::uint32_t>> element_perms(sub->order());
  for (std::size_t e = 0; e < sub->order(); ++e) {
    std::vector<std::uint32_t> p(6);
    for (std::size_t i = 0; i < 6; ++i) p[i] = static_cast<std::uint32_t>(i);
    const auto& word = sub->word(e);
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
      const auto& q = gen_perms[*it];
      for (std::size_t i = 0; i < 6; ++i) p[i] = q[p[i]];
    }
    element_perms[e] = std::move(p);
  }

  const auto& classes = sub->subgroup_classes();
  auto class_of = [&](const Subgroup& h) -> std::size_t {
    for (std::size_t ci = 0; ci < classes.size(); ++ci) {
      if (classes[ci].order() != h.order()) continue;
      for (std::size_t g = 0; g < sub->order(); ++g)
        if (h.conjugate(g).members() == classes[ci].members()) return ci;
    }
    throw InternalInvariant("stabilizer matches no subgroup class");
  };

  PermutationDescriptor descriptor;
  std::vector<char> seen(6, 0);
  for (std::size_t pt = 0; pt < 6; ++pt) {
    if (seen[pt]) continue;
    std::vector<std::size_t> stab;
    for (std::size_t e = 0; e < sub->order(); ++e) {
      if (element_perms[e][pt] == pt) stab.push_back(e);
      seen[element_perms[e][pt]] = 1;
    }
    descriptor.parts.push_back(class_of(Subgroup(sub, std::move(stab))));
  }
  descriptor.basis_labels = {"e", "e1", "e2", "e3", "e4", "e5"};

  GLattice p_lat =
      GLattice::permutation_action(sub, std::move(descriptor), gen_perms);

  // f: e -> canonical class, e_i -> h_i.
  PicardLattice preset = picard_preset(5);
  IntegerMatrix f(5, 6);
  for (std::size_t i = 0; i < 5; ++i) f.at(i, 0) = preset.canonical[i];
  std::vector<IntVector> h = h_vectors_dp5();
  for (std::size_t j = 0; j < 5; ++j)
    for (std::size_t i = 0; i < 5; ++i) f.at(i, j + 1) = h[j][i];

  Resolution res = detail::build_resolution(
      std::make_shared<const GLattice>(std::move(picard)),
      std::make_shared<const GLattice>(std::move(p_lat)), std::move(f));

  // The kernel must be the line through 2e + e1 + ... + e5.
  if (res.c->rank() != 1)
    throw InternalInvariant("degree-5 resolution kernel has wrong rank");
  IntegerMatrix gen = hnf_column_basis(res.inclusion.matrix);
  const IntVector x = {2, 1, 1, 1, 1, 1};
  for (std::size_t i = 0; i < 6; ++i)
    if (gen.at(i, 0) != x[i])
      throw InternalInvariant("degree-5 resolution kernel generator is off");

  // Retraction e -> -2, e_i -> 1 in kernel coordinates; flip the sign if the
  // stored kernel basis is -x.
  Int sign = res.inclusion.matrix.at(0, 0) > 0 ? 1 : -1;
  IntegerMatrix r(1, 6);
  r.at(0, 0) = -2 * sign;
  for (std::size_t j = 1; j < 6; ++j) r.at(0, j) = sign;
  if (!(r * res.inclusion.matrix).is_identity())
    throw InternalInvariant("standard retraction does not split the kernel");

  // Section induced by the retraction: id - iota r kills the kernel, so it
  // factors through f; composing with any integral lift of the identity
  // gives the equivariant section.
  auto lift = solve_linear_integer_many(res.surjection.matrix,
                                        IntegerMatrix::identity(5));
  if (!lift) throw InternalInvariant("surjection has no integral lift");
  IntegerMatrix s =
      (IntegerMatrix::identity(6) - res.inclusion.matrix * r) * *lift;
  if (!(res.surjection.matrix * s).is_identity())
    throw InternalInvariant("derived section does not split the surjection");

  res.splitting = Splitting{GMap::checked(res.m, res.p, std::move(s)),
                            GMap::checked(res.p, res.c, std::move(r))};
  return res;
}

}  // namespace galmod
