#include "galmod/cohomology.hpp"

#include <sstream>

namespace galmod {

std::string FiniteAbelianGroup::to_string() const {
  if (invariant_factors.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < invariant_factors.size(); ++i)
    os << (i ? " x " : "") << "Z/" << invariant_factors[i];
  return os.str();
}

FiniteAbelianGroup abelian_quotient(const IntegerMatrix& basis,
                                    const IntegerMatrix& cols) {
  const std::size_t rank = basis.cols();
  if (rank == 0) {
    if (!cols.is_zero())
      throw InternalInvariant("quotient columns outside the zero lattice");
    return {};
  }
  auto coords = solve_linear_integer_many(basis, cols);
  if (!coords)
    throw InternalInvariant("quotient columns are not in the sublattice span");
  SmithNormalForm snf = smith_normal_form(*coords);
  FiniteAbelianGroup out;
  std::size_t nonzero = 0;
  for (std::size_t i = 0; i < std::min(coords->rows(), coords->cols()); ++i) {
    const Int& d = snf.s.at(i, i);
    if (d == 0) break;
    ++nonzero;
    if (d >= 2) out.invariant_factors.push_back(d);
  }
  if (nonzero < rank)
    throw InternalInvariant("quotient has a free part; expected finite");
  return out;
}

namespace {

// Local view of a subgroup: elements in BFS order over a chosen generating
// set, with BFS parents and the action of every element on m.
struct LocalSubgroup {
  std::vector<std::size_t> gens;      // parent-group element indices
  std::vector<std::size_t> elements;  // parent-group element indices
  std::vector<std::size_t> parent;    // BFS parent, local index
  std::vector<std::size_t> last_gen;  // generator from the parent
  std::vector<std::size_t> local_of;  // parent element -> local index
  std::vector<IntegerMatrix> action;
};

LocalSubgroup local_view(const GLattice& m, const Subgroup& h) {
  const FiniteMatrixGroup& g = *m.group();
  LocalSubgroup lv;
  lv.gens = h.generating_set();
  lv.local_of.assign(g.order(), static_cast<std::size_t>(-1));
  auto push = [&](std::size_t e, std::size_t par, std::size_t gi) {
    if (lv.local_of[e] != static_cast<std::size_t>(-1)) return;
    lv.local_of[e] = lv.elements.size();
    lv.elements.push_back(e);
    lv.parent.push_back(par);
    lv.last_gen.push_back(gi);
    return;
  };
  push(FiniteMatrixGroup::identity_index(), 0, 0);
  for (std::size_t cur = 0; cur < lv.elements.size(); ++cur)
    for (std::size_t gi = 0; gi < lv.gens.size(); ++gi)
      push(g.product(lv.elements[cur], lv.gens[gi]), cur, gi);
  if (lv.elements.size() != h.order())
    throw InternalInvariant("generating set does not span the subgroup");
  lv.action.reserve(lv.elements.size());
  for (std::size_t e : lv.elements) lv.action.push_back(m.element_action(e));
  return lv;
}

}  // namespace

FiniteAbelianGroup h1(const GLattice& m, const Subgroup& h) {
  if (h.parent() != m.group())
    throw InvalidInput("subgroup belongs to a different group");
  if (h.order() == 1 || m.rank() == 0) return {};

  LocalSubgroup lv = local_view(m, h);
  const std::size_t n = m.rank();
  const std::size_t k = lv.gens.size();
  const std::size_t dim = k * n;  // unknowns: c_{g_1}, ..., c_{g_k} in M

  // Cocycle value of each element as a linear map of the unknowns:
  // c(u*g) = c(u) + u.c(g), unfolded along the BFS words.
  std::vector<IntegerMatrix> w(lv.elements.size(), IntegerMatrix(n, dim));
  for (std::size_t e = 1; e < lv.elements.size(); ++e) {
    const std::size_t par = lv.parent[e];
    const std::size_t gi = lv.last_gen[e];
    w[e] = w[par];
    const IntegerMatrix& au = lv.action[par];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        w[e].at(i, gi * n + j) += au.at(i, j);
  }

  // Z^1: common kernel of the relations c(a) + a.c(b) - c(ab) = 0 for all
  // a in H and generators b; the instances with longer b follow by
  // induction on word length, so this cuts out the full cocycle lattice.
  IntegerMatrix z1 = IntegerMatrix::identity(dim);
  const FiniteMatrixGroup& g = *m.group();
  for (std::size_t a = 0; a < lv.elements.size() && z1.cols() > 0; ++a) {
    const IntegerMatrix& aa = lv.action[a];
    for (std::size_t gi = 0; gi < k && z1.cols() > 0; ++gi) {
      std::size_t ab = lv.local_of[g.product(lv.elements[a], lv.gens[gi])];
      IntegerMatrix rel = w[ab] - w[a];
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          rel.at(i, gi * n + j) -= aa.at(i, j);
      IntegerMatrix reduced = rel * z1;
      if (!reduced.is_zero()) z1 = z1 * kernel_basis(reduced);
    }
  }
  if (z1.cols() == 0) return {};

  // B^1: m -> (g_i.m - m)_i, stacked per generator.
  IntegerMatrix b1(dim, n);
  for (std::size_t gi = 0; gi < k; ++gi) {
    const IntegerMatrix& ag = lv.action[lv.local_of[lv.gens[gi]]];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        b1.at(gi * n + i, j) = ag.at(i, j) - (i == j ? 1 : 0);
  }
  FiniteAbelianGroup out = abelian_quotient(z1, b1);
  for (const Int& d : out.invariant_factors)
    if (Int(h.order()) % d != 0)
      throw InternalInvariant(
          "invariant factor does not divide the subgroup order");
  return out;
}

FiniteAbelianGroup h1_cyclic_oracle(const GLattice& m, std::size_t element) {
  const FiniteMatrixGroup& g = *m.group();
  if (element >= g.order()) throw InvalidInput("element index out of range");
  if (m.rank() == 0) return {};
  IntegerMatrix a = m.element_action(element);
  const std::size_t ord = g.element_order(element);
  IntegerMatrix norm(m.rank(), m.rank());
  IntegerMatrix power = IntegerMatrix::identity(m.rank());
  for (std::size_t i = 0; i < ord; ++i) {
    norm = norm + power;
    power = power * a;
  }
  IntegerMatrix ker = kernel_basis(norm);
  IntegerMatrix d = a - IntegerMatrix::identity(m.rank());
  return abelian_quotient(ker, d);
}

CoflabbyReport is_coflabby(const GLattice& m) {
  CoflabbyReport report;
  const auto& classes = m.group()->subgroup_classes();
  for (std::size_t ci = 0; ci < classes.size(); ++ci)
    if (!h1(m, classes[ci]).trivial()) report.failing_classes.push_back(ci);
  report.coflabby = report.failing_classes.empty();
  return report;
}

}  // namespace galmod
