#include "galmod/resolution.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace galmod {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);
// Below this rank of P every resolution certificate is also verified by
// direct dense products.
constexpr std::size_t kDenseVerifyLimit = 64;

struct CosetSpace {
  std::vector<std::size_t> reps;      // minimal element per coset, ascending
  std::vector<std::size_t> coset_of;  // element -> coset id
};

CosetSpace coset_space(const FiniteMatrixGroup& g, const Subgroup& h) {
  CosetSpace cs;
  cs.coset_of.assign(g.order(), kNone);
  for (std::size_t e = 0; e < g.order(); ++e) {
    if (cs.coset_of[e] != kNone) continue;
    std::size_t id = cs.reps.size();
    cs.reps.push_back(e);
    for (std::size_t hh : h.members()) cs.coset_of[g.product(e, hh)] = id;
  }
  return cs;
}

// Orbits of a subgroup on {0, ..., n-1} under the given generator images;
// returns the orbit id per point, orbits numbered by smallest point.
std::vector<std::size_t> point_orbits(
    std::size_t n, const std::vector<std::vector<std::uint32_t>>& gen_images) {
  std::vector<std::size_t> root(n);
  std::iota(root.begin(), root.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };
  for (const auto& p : gen_images)
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t a = find(c), b = find(p[c]);
      if (a != b) root[std::max(a, b)] = std::min(a, b);
    }
  std::vector<std::size_t> orbit(n, kNone);
  std::size_t count = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t r = find(c);
    if (orbit[r] == kNone) orbit[r] = count++;
    orbit[c] = orbit[r];
  }
  return orbit;
}

}  // namespace

GLattice permutation_lattice(GroupPtr group, PermutationDescriptor descriptor) {
  const FiniteMatrixGroup& g = *group;
  const auto& classes = g.subgroup_classes();
  std::map<std::size_t, CosetSpace> spaces;
  std::size_t rank = 0;
  for (std::size_t ci : descriptor.parts) {
    if (ci >= classes.size()) throw InvalidInput("unknown subgroup class index");
    if (!spaces.count(ci)) spaces.emplace(ci, coset_space(g, classes[ci]));
    rank += spaces.at(ci).reps.size();
  }

  bool fill_labels = descriptor.basis_labels.empty();
  if (!fill_labels && descriptor.basis_labels.size() != rank)
    throw InvalidInput("descriptor label count does not match its rank");
  std::vector<std::size_t> offset(descriptor.parts.size());
  {
    std::size_t at = 0;
    for (std::size_t p = 0; p < descriptor.parts.size(); ++p) {
      offset[p] = at;
      const CosetSpace& cs = spaces.at(descriptor.parts[p]);
      for (std::size_t c = 0; c < cs.reps.size() && fill_labels; ++c)
        descriptor.basis_labels.push_back(std::to_string(p) + ":" +
                                          g.element_name(cs.reps[c]));
      at += cs.reps.size();
    }
  }

  std::vector<std::vector<std::uint32_t>> perms(g.generators().size());
  for (std::size_t gi = 0; gi < g.generators().size(); ++gi) {
    std::size_t ge = g.generator_element(gi);
    perms[gi].resize(rank);
    for (std::size_t p = 0; p < descriptor.parts.size(); ++p) {
      const CosetSpace& cs = spaces.at(descriptor.parts[p]);
      for (std::size_t c = 0; c < cs.reps.size(); ++c)
        perms[gi][offset[p] + c] = static_cast<std::uint32_t>(
            offset[p] + cs.coset_of[g.product(ge, cs.reps[c])]);
    }
  }
  return GLattice::permutation_action(std::move(group), std::move(descriptor),
                                      std::move(perms),
                                      /*canonical_blocks=*/true);
}

namespace {

// A_P(g) * X for a structured permutation lattice P: rows permuted.
IntegerMatrix perm_apply_left(const GLattice& p, std::size_t gi,
                              const IntegerMatrix& x) {
  const auto& perm = p.generator_permutation(gi);
  IntegerMatrix out(x.rows(), x.cols());
  for (std::size_t r = 0; r < x.rows(); ++r)
    for (std::size_t c = 0; c < x.cols(); ++c) out.at(perm[r], c) = x.at(r, c);
  return out;
}

}  // namespace

namespace detail {

// Verifies exactness and the coflasqueness of the kernel.  Coflasqueness
// goes through the connecting isomorphism H^1(H, C) = coker(f: P^H -> M^H),
// valid because H^1(H, P) vanishes for every permutation lattice (Shapiro)
// and the sequence is exact.
Resolution build_resolution(LatticePtr m, LatticePtr p, IntegerMatrix f_mat) {
  if (!p->has_permutation_structure())
    throw InternalInvariant("resolution middle term must be structured");
  const FiniteMatrixGroup& g = *m->group();
  const std::size_t n = m->rank(), big = p->rank();

  KernelWithCoordinates kc = kernel_with_coordinates(f_mat);
  bool surjective = kc.diag.size() == n;
  for (const Int& d : kc.diag)
    if (d != 1) surjective = false;
  if (!surjective) throw NotSurjective("resolution map is not surjective");

  Resolution res;
  res.m = m;
  res.p = p;
  res.kernel_cols = kc.kernel_cols;
  res.image_cols = kc.image_cols;
  res.kernel_coords = std::move(kc.coords);

  const std::size_t nc = kc.basis.cols();
  // Induced action on the kernel, in the coordinates of the kernel columns
  // of V; materialized on demand since it costs rank(C)^2 rank(P) per
  // generator.
  struct KernelCtx {
    IntegerMatrix basis;       // iota, big x nc
    IntegerMatrix coords_sel;  // nc x big, kernel rows of V^{-1}
    LatticePtr p;
  };
  auto ctx = std::make_shared<KernelCtx>();
  ctx->basis = kc.basis;
  ctx->coords_sel = res.kernel_coords.rows_subset(kc.kernel_cols);
  ctx->p = p;
  auto provider = [ctx](std::size_t gi) {
    return ctx->coords_sel * perm_apply_left(*ctx->p, gi, ctx->basis);
  };
  res.c = std::make_shared<const GLattice>(
      GLattice::deferred(m->group(), nc, provider));

  res.surjection = GMap::checked(p, m, std::move(f_mat));
  res.inclusion = GMap::unchecked(res.c, p, std::move(kc.basis));

  // Exactness: f o iota = 0 and rank(P) = rank(C) + rank(M); the kernel
  // columns of V span ker f exactly and are saturated since V is unimodular.
  if (nc + n != big) throw InternalInvariant("resolution rank count is off");
  if (!(res.surjection.matrix * res.inclusion.matrix).is_zero())
    throw InternalInvariant("surjection does not kill the kernel inclusion");
  if (big <= kDenseVerifyLimit && !res.inclusion.is_equivariant())
    throw InternalInvariant("kernel inclusion is not equivariant");

  const auto& classes = g.subgroup_classes();
  for (std::size_t ci = 0; ci < classes.size(); ++ci) {
    const Subgroup& h = classes[ci];
    if (h.order() == 1) continue;
    std::vector<std::size_t> gens = h.generating_set();
    std::vector<std::vector<std::uint32_t>> images;
    images.reserve(gens.size());
    for (std::size_t e : gens) images.push_back(p->element_permutation(e));
    std::vector<std::size_t> orbit = point_orbits(big, images);
    std::size_t orbit_count = 1 + *std::max_element(orbit.begin(), orbit.end());
    IntegerMatrix image(n, orbit_count);  // f applied to the orbit sums
    for (std::size_t c = 0; c < big; ++c)
      for (std::size_t i = 0; i < n; ++i)
        image.at(i, orbit[c]) += res.surjection.matrix.at(i, c);
    IntegerMatrix fixed = invariant_sublattice(*m, h);
    FiniteAbelianGroup coker;
    try {
      coker = abelian_quotient(fixed, image);
    } catch (const InternalInvariant&) {
      throw CoflasquenessViolated(
          "fixed points do not surject rationally at subgroup class " +
          std::to_string(ci));
    }
    if (!coker.trivial())
      throw CoflasquenessViolated("H^1 of the kernel is " + coker.to_string() +
                                  " at subgroup class " + std::to_string(ci));
  }
  return res;
}

}  // namespace detail

Resolution coflasque_resolution(const GLattice& m) {
  GroupPtr group = m.group();
  const FiniteMatrixGroup& g = *group;
  const auto& classes = g.subgroup_classes();

  std::vector<IntegerMatrix> fixed(classes.size());
  PermutationDescriptor descriptor;
  for (std::size_t ci = 0; ci < classes.size(); ++ci) {
    fixed[ci] = invariant_sublattice(m, classes[ci]);
    for (std::size_t j = 0; j < fixed[ci].cols(); ++j)
      descriptor.parts.push_back(ci);
  }

  GLattice p = permutation_lattice(group, std::move(descriptor));
  const auto& parts = p.descriptor().parts;

  std::map<std::size_t, CosetSpace> spaces;
  for (std::size_t ci : parts)
    if (!spaces.count(ci)) spaces.emplace(ci, coset_space(g, classes[ci]));

  std::vector<std::optional<IntegerMatrix>> act(g.order());
  auto action_of = [&](std::size_t e) -> const IntegerMatrix& {
    if (!act[e]) act[e] = m.element_action(e);
    return *act[e];
  };

  // f(gH (x) m_j) = g.m_j over the basis (part, coset).
  IntegerMatrix f(m.rank(), p.rank());
  std::size_t at = 0;
  std::map<std::size_t, std::size_t> copy_seen;
  for (std::size_t pi = 0; pi < parts.size(); ++pi) {
    std::size_t ci = parts[pi];
    std::size_t j = copy_seen[ci]++;
    const CosetSpace& cs = spaces.at(ci);
    for (std::size_t c = 0; c < cs.reps.size(); ++c, ++at) {
      IntVector col = action_of(cs.reps[c]).apply(fixed[ci].column(j));
      for (std::size_t i = 0; i < m.rank(); ++i) f.at(i, at) = col[i];
    }
  }

  return detail::build_resolution(std::make_shared<const GLattice>(m),
                                  std::make_shared<const GLattice>(std::move(p)),
                                  std::move(f));
}

// ---------------------------------------------------------------------------
// Sections and retractions

namespace {

struct SectionOutcome {
  std::optional<IntegerMatrix> s;
  std::optional<SolveObstruction> obstruction;
};

void require_surjective(const GMap& f) {
  // Surjective over Z iff the column lattice is everything.
  if (!hnf_column_basis(f.matrix).is_identity())
    throw NotSurjective("map is not surjective over the integers");
}

// Sections of f: P <- M with P structured: Hom_G(M, Z[G/H]) = (M^dual)^H by
// Frobenius reciprocity, the bijection sending an H-invariant functional
// lambda to T(m)[gH] = lambda(g^{-1} m).  That parametrizes Hom_G(M, P) by
// a Z-basis, and f o s = id becomes a small inhomogeneous system in its
// coordinates.
SectionOutcome frobenius_section(const GMap& f) {
  const GLattice& p = *f.source;
  const GLattice& m = *f.target;
  const FiniteMatrixGroup& g = *m.group();
  const auto& classes = g.subgroup_classes();
  const auto& parts = p.descriptor().parts;
  const std::size_t n = m.rank();

  std::map<std::size_t, CosetSpace> spaces;
  std::map<std::size_t, IntegerMatrix> duals;
  for (std::size_t ci : parts) {
    if (spaces.count(ci)) continue;
    spaces.emplace(ci, coset_space(g, classes[ci]));
    // H-invariant functionals: common kernel of (A(h)^T - id).
    std::vector<std::size_t> gens = classes[ci].generating_set();
    if (gens.empty()) {
      duals.emplace(ci, IntegerMatrix::identity(n));
    } else {
      IntegerMatrix stack(0, n);
      for (std::size_t e : gens)
        stack = IntegerMatrix::vstack(
            stack, m.element_action(e).transpose() - IntegerMatrix::identity(n));
      duals.emplace(ci, kernel_basis(stack));
    }
  }

  std::vector<std::optional<IntegerMatrix>> inv_t(g.order());
  auto inv_action_t = [&](std::size_t e) -> const IntegerMatrix& {
    if (!inv_t[e]) inv_t[e] = m.element_action(g.inverse(e)).transpose();
    return *inv_t[e];
  };

  struct BasisMap {
    std::size_t offset;        // first row of the part block in P
    IntegerMatrix block;       // [G:H] x n rows of the map
    IntegerMatrix composed;    // f restricted to the block, times the block
  };
  std::vector<BasisMap> basis;
  std::size_t offset = 0;
  for (std::size_t pi = 0; pi < parts.size(); ++pi) {
    std::size_t ci = parts[pi];
    const CosetSpace& cs = spaces.at(ci);
    const IntegerMatrix& dual = duals.at(ci);
    std::size_t block_rows = cs.reps.size();
    std::vector<std::size_t> block_cols(block_rows);
    std::iota(block_cols.begin(), block_cols.end(), offset);
    IntegerMatrix f_block(n, block_rows);
    for (std::size_t c = 0; c < block_rows; ++c)
      for (std::size_t i = 0; i < n; ++i)
        f_block.at(i, c) = f.matrix.at(i, offset + c);
    for (std::size_t d = 0; d < dual.cols(); ++d) {
      IntegerMatrix block(block_rows, n);
      for (std::size_t c = 0; c < block_rows; ++c) {
        IntVector row = inv_action_t(cs.reps[c]).apply(dual.column(d));
        for (std::size_t j = 0; j < n; ++j) block.at(c, j) = row[j];
      }
      BasisMap bm{offset, std::move(block), IntegerMatrix()};
      bm.composed = f_block * bm.block;
      basis.push_back(std::move(bm));
    }
    offset += block_rows;
  }

  IntegerMatrix system(n * n, basis.size());
  for (std::size_t b = 0; b < basis.size(); ++b)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        system.at(i * n + j, b) = basis[b].composed.at(i, j);
  IntVector rhs(n * n);
  for (std::size_t i = 0; i < n; ++i) rhs[i * n + i] = 1;

  SolveOutcome solved = solve_linear_integer_full(system, rhs);
  if (!solved.solution) return {std::nullopt, solved.obstruction};

  IntegerMatrix s(p.rank(), n);
  for (std::size_t b = 0; b < basis.size(); ++b) {
    const Int& coeff = solved.solution->x0[b];
    if (coeff == 0) continue;
    const BasisMap& bm = basis[b];
    for (std::size_t r = 0; r < bm.block.rows(); ++r)
      for (std::size_t j = 0; j < n; ++j)
        s.at(bm.offset + r, j) += coeff * bm.block.at(r, j);
  }
  return {std::move(s), std::nullopt};
}

// Entries of s as unknowns: equivariance plus the section identity, solved
// in one integer system.  Quadratic in rank(P); the structured path above
// takes over for large resolutions.
SectionOutcome generic_section(const GMap& f) {
  const GLattice& p = *f.source;
  const GLattice& m = *f.target;
  const std::size_t np = p.rank(), n = m.rank();
  const std::size_t unknowns = np * n;  // s[i][j] at i*n + j
  const std::size_t gens = m.group()->generators().size();

  IntegerMatrix system(gens * unknowns + n * n, unknowns);
  IntVector rhs(system.rows());
  std::size_t row = 0;
  for (std::size_t gi = 0; gi < gens; ++gi) {
    const IntegerMatrix& am = m.generator_action(gi);
    const IntegerMatrix& ap = p.generator_action(gi);
    for (std::size_t i = 0; i < np; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        // (s A_m - A_p s)[i][j] = 0
        for (std::size_t k = 0; k < n; ++k)
          system.at(row, i * n + k) += am.at(k, j);
        for (std::size_t k = 0; k < np; ++k)
          system.at(row, k * n + j) -= ap.at(i, k);
        ++row;
      }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < np; ++k)
        system.at(row, k * n + j) += f.matrix.at(i, k);
      rhs[row] = i == j ? 1 : 0;
      ++row;
    }

  SolveOutcome solved = solve_linear_integer_full(system, rhs);
  if (!solved.solution) return {std::nullopt, solved.obstruction};
  IntegerMatrix s(np, n);
  for (std::size_t i = 0; i < np; ++i)
    for (std::size_t j = 0; j < n; ++j)
      s.at(i, j) = solved.solution->x0[i * n + j];
  return {std::move(s), std::nullopt};
}

SectionOutcome section_matrix(const GMap& f) {
  require_surjective(f);
  SectionOutcome out = f.source->has_canonical_permutation_blocks()
                           ? frobenius_section(f)
                           : generic_section(f);
  if (out.s) {
    if (!(f.matrix * *out.s).is_identity())
      throw InternalInvariant("section identity failed after solving");
    GMap::checked(f.target, f.source, *out.s);
  }
  return out;
}

}  // namespace

std::optional<GMap> section_of_surjection(const GMap& f) {
  SectionOutcome out = section_matrix(f);
  if (!out.s) return std::nullopt;
  return GMap::unchecked(f.target, f.source, std::move(*out.s));
}

std::optional<GMap> retraction_of_inclusion(const GMap& iota) {
  const GLattice& c = *iota.source;
  const GLattice& p = *iota.target;
  {
    SmithNormalFormExt snf = smith_normal_form_ext(iota.matrix);
    bool ok = snf.rank == c.rank();
    for (std::size_t i = 0; ok && i < snf.rank; ++i) ok = snf.s.at(i, i) == 1;
    if (!ok)
      throw NotInjective("map is not injective with saturated image");
  }
  const std::size_t np = p.rank(), nc = c.rank();
  const std::size_t unknowns = nc * np;  // r[i][j] at i*np + j
  const std::size_t gens = p.group()->generators().size();

  IntegerMatrix system(gens * unknowns + nc * nc, unknowns);
  IntVector rhs(system.rows());
  std::size_t row = 0;
  for (std::size_t gi = 0; gi < gens; ++gi) {
    const IntegerMatrix& ap = p.generator_action(gi);
    const IntegerMatrix& ac = c.generator_action(gi);
    for (std::size_t i = 0; i < nc; ++i)
      for (std::size_t j = 0; j < np; ++j) {
        // (r A_p - A_c r)[i][j] = 0
        for (std::size_t k = 0; k < np; ++k)
          system.at(row, i * np + k) += ap.at(k, j);
        for (std::size_t k = 0; k < nc; ++k)
          system.at(row, k * np + j) -= ac.at(i, k);
        ++row;
      }
  }
  for (std::size_t i = 0; i < nc; ++i)
    for (std::size_t j = 0; j < nc; ++j) {
      for (std::size_t k = 0; k < np; ++k)
        system.at(row, i * np + k) += iota.matrix.at(k, j);
      rhs[row] = i == j ? 1 : 0;
      ++row;
    }

  SolveOutcome solved = solve_linear_integer_full(system, rhs);
  if (!solved.solution) return std::nullopt;
  IntegerMatrix r(nc, np);
  for (std::size_t i = 0; i < nc; ++i)
    for (std::size_t j = 0; j < np; ++j)
      r.at(i, j) = solved.solution->x0[i * np + j];
  if (!(r * iota.matrix).is_identity())
    throw InternalInvariant("retraction identity failed after solving");
  return GMap::checked(iota.target, iota.source, std::move(r));
}

// ---------------------------------------------------------------------------
// Invertibility and complements

namespace detail {

// Builds the retraction from the kernel bookkeeping once a section is known:
// id - s f projects P onto ker f = im iota, and the kernel rows of V^{-1}
// read off its iota-coordinates, so r = coords_sel - (coords_sel s) f.
// r iota = id follows from coords_sel iota = id (the SNF bookkeeping) and
// f iota = 0 (checked); small resolutions verify everything densely.
void attach_splitting(Resolution& res, IntegerMatrix s) {
  IntegerMatrix coords_sel = res.kernel_coords.rows_subset(res.kernel_cols);
  IntegerMatrix r = coords_sel - (coords_sel * s) * res.surjection.matrix;
  GMap section = GMap::unchecked(res.m, res.p, std::move(s));
  GMap retraction = GMap::unchecked(res.p, res.c, std::move(r));
  if (res.p->rank() <= kDenseVerifyLimit) {
    if (!(retraction.matrix * res.inclusion.matrix).is_identity())
      throw InternalInvariant("retraction does not split the inclusion");
    if (!retraction.is_equivariant())
      throw InternalInvariant("retraction is not equivariant");
  }
  res.splitting = Splitting{std::move(section), std::move(retraction)};
}

}  // namespace detail

InvertibilityVerdict is_invertible(const GLattice& m) {
  InvertibilityVerdict verdict;
  Resolution res = coflasque_resolution(m);
  SectionOutcome out = section_matrix(res.surjection);
  if (!out.s) {
    verdict.invertible = false;
    verdict.obstruction = out.obstruction;
    verdict.resolution = std::move(res);
    return verdict;
  }
  detail::attach_splitting(res, std::move(*out.s));
  verdict.invertible = true;
  verdict.resolution = std::move(res);
  return verdict;
}

GLattice complement_summand(const Resolution& res) {
  if (!res.splitting)
    throw MissingSplitting("complement needs a split resolution");
  const IntegerMatrix& s = res.splitting->section.matrix;

  // Idempotence of e = s f, through the factored form: e e = s (f s) f.
  if (!(res.surjection.matrix * s).is_identity())
    throw InternalInvariant("stored section no longer splits the surjection");

  // Unimodularity of the block map (s | iota): with iota = V[kernel cols],
  // V^{-1} (s | iota) = (V^{-1} s | unit columns), so Laplace expansion
  // along the unit columns leaves the minor of V^{-1} s on the image rows.
  IntegerMatrix x = res.kernel_coords * s;
  Int minor = x.rows_subset(res.image_cols).determinant();
  if (minor != 1 && minor != -1)
    throw InternalInvariant("block witness (s | iota) is not unimodular");
  if (res.p->rank() <= kDenseVerifyLimit) {
    IntegerMatrix block = IntegerMatrix::hstack(s, res.inclusion.matrix);
    if (!block.is_unimodular())
      throw InternalInvariant("dense block witness check failed");
  }
  return *res.c;
}

// ---------------------------------------------------------------------------
// Permutation recognition

PermutationVerdict is_permutation(const GLattice& m, std::size_t bound) {
  const FiniteMatrixGroup& g = *m.group();
  const auto& classes = g.subgroup_classes();
  const std::size_t nclasses = classes.size();

  std::vector<std::size_t> index(nclasses);
  std::vector<CosetSpace> spaces;
  spaces.reserve(nclasses);
  for (std::size_t ci = 0; ci < nclasses; ++ci) {
    spaces.push_back(coset_space(g, classes[ci]));
    index[ci] = spaces[ci].reps.size();
  }

  std::vector<std::size_t> target(nclasses);
  for (std::size_t ci = 0; ci < nclasses; ++ci)
    target[ci] = invariant_sublattice(m, classes[ci]).cols();

  // marks[ci][cj]: orbit count of class ci acting on the cosets of class cj;
  // for a candidate lattice these add up to its invariant ranks.
  std::vector<std::vector<std::size_t>> marks(
      nclasses, std::vector<std::size_t>(nclasses));
  for (std::size_t ci = 0; ci < nclasses; ++ci) {
    std::vector<std::size_t> gens = classes[ci].generating_set();
    for (std::size_t cj = 0; cj < nclasses; ++cj) {
      const CosetSpace& cs = spaces[cj];
      std::vector<std::vector<std::uint32_t>> images;
      for (std::size_t e : gens) {
        std::vector<std::uint32_t> img(cs.reps.size());
        for (std::size_t c = 0; c < cs.reps.size(); ++c)
          img[c] = static_cast<std::uint32_t>(
              cs.coset_of[g.product(e, cs.reps[c])]);
        images.push_back(std::move(img));
      }
      std::vector<std::size_t> orbit = point_orbits(cs.reps.size(), images);
      marks[ci][cj] =
          orbit.empty() ? 0 : 1 + *std::max_element(orbit.begin(), orbit.end());
    }
  }

  bool saw_candidate = false;
  std::vector<std::size_t> mult(nclasses, 0);
  PermutationVerdict found;

  // Depth-first over multiplicities, class by class, largest count first.
  std::function<bool(std::size_t, std::size_t)> dfs =
      [&](std::size_t ci, std::size_t remaining) -> bool {
    if (ci == nclasses) {
      if (remaining != 0) return false;
      for (std::size_t i = 0; i < nclasses; ++i) {
        std::size_t sum = 0;
        for (std::size_t j = 0; j < nclasses; ++j)
          sum += mult[j] * marks[i][j];
        if (sum != target[i]) return false;
      }
      saw_candidate = true;
      PermutationDescriptor d;
      for (std::size_t j = 0; j < nclasses; ++j)
        for (std::size_t k = 0; k < mult[j]; ++k) d.parts.push_back(j);
      GLattice candidate = permutation_lattice(m.group(), d);
      IsoVerdict iso = equivariant_isomorphic(m, candidate, bound);
      if (iso.yes()) {
        found.kind = PermutationVerdict::Kind::Yes;
        found.descriptor = candidate.descriptor();
        found.witness = std::move(iso.witness);
        return true;
      }
      return false;
    }
    for (std::size_t k = remaining / index[ci] + 1; k-- > 0;) {
      mult[ci] = k;
      if (dfs(ci + 1, remaining - k * index[ci])) return true;
    }
    mult[ci] = 0;
    return false;
  };

  if (dfs(0, m.rank())) return found;
  if (!saw_candidate)
    return {PermutationVerdict::Kind::NoCertain, std::nullopt, std::nullopt,
            "no subgroup-class multiset matches the rank and invariant ranks"};
  return {PermutationVerdict::Kind::Unknown, std::nullopt, std::nullopt,
          "candidates exist but no unimodular witness was found at bound " +
              std::to_string(bound)};
}

}  // namespace galmod
