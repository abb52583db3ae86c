#include "galmod/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace galmod {

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntegerMatrix IntegerMatrix::diagonal(const IntVector& d) {
  IntegerMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
  return m;
}

IntegerMatrix IntegerMatrix::from_rows(
    std::initializer_list<std::initializer_list<long long>> rows) {
  std::size_t r = rows.size();
  std::size_t c = r == 0 ? 0 : rows.begin()->size();
  IntegerMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw DimensionMismatch("ragged row list");
    std::size_t j = 0;
    for (long long v : row) m.at(i, j++) = v;
    ++i;
  }
  return m;
}

IntegerMatrix IntegerMatrix::column_vector(const IntVector& v) {
  IntegerMatrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m.at(i, 0) = v[i];
  return m;
}

bool IntegerMatrix::is_zero() const {
  for (const Int& e : entries_)
    if (e != 0) return false;
  return true;
}

bool IntegerMatrix::is_identity() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (at(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

IntegerMatrix IntegerMatrix::transpose() const {
  IntegerMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
  return m;
}

IntegerMatrix IntegerMatrix::negated() const {
  IntegerMatrix m(*this);
  for (Int& e : m.entries_) e = -e;
  return m;
}

IntegerMatrix IntegerMatrix::operator*(const IntegerMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw DimensionMismatch("matrix product shape");
  IntegerMatrix m(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int& a = at(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) {
        const Int& b = rhs.at(k, j);
        if (b != 0) m.at(i, j) += a * b;
      }
    }
  }
  return m;
}

IntegerMatrix IntegerMatrix::operator+(const IntegerMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw DimensionMismatch("matrix sum shape");
  IntegerMatrix m(*this);
  for (std::size_t i = 0; i < entries_.size(); ++i)
    m.entries_[i] += rhs.entries_[i];
  return m;
}

IntegerMatrix IntegerMatrix::operator-(const IntegerMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw DimensionMismatch("matrix difference shape");
  IntegerMatrix m(*this);
  for (std::size_t i = 0; i < entries_.size(); ++i)
    m.entries_[i] -= rhs.entries_[i];
  return m;
}

IntVector IntegerMatrix::apply(const IntVector& v) const {
  if (v.size() != cols_) throw DimensionMismatch("matrix-vector shape");
  IntVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Int acc = 0;
    for (std::size_t j = 0; j < cols_; ++j)
      if (at(i, j) != 0) acc += at(i, j) * v[j];
    out[i] = std::move(acc);
  }
  return out;
}

IntVector IntegerMatrix::row(std::size_t i) const {
  IntVector out(cols_);
  for (std::size_t j = 0; j < cols_; ++j) out[j] = at(i, j);
  return out;
}

IntVector IntegerMatrix::column(std::size_t j) const {
  IntVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = at(i, j);
  return out;
}

IntegerMatrix IntegerMatrix::columns(
    const std::vector<std::size_t>& which) const {
  IntegerMatrix m(rows_, which.size());
  for (std::size_t j = 0; j < which.size(); ++j)
    for (std::size_t i = 0; i < rows_; ++i) m.at(i, j) = at(i, which[j]);
  return m;
}

IntegerMatrix IntegerMatrix::rows_subset(
    const std::vector<std::size_t>& which) const {
  IntegerMatrix m(which.size(), cols_);
  for (std::size_t i = 0; i < which.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = at(which[i], j);
  return m;
}

IntegerMatrix IntegerMatrix::hstack(const IntegerMatrix& a,
                                    const IntegerMatrix& b) {
  if (a.rows_ != b.rows_) throw DimensionMismatch("hstack row counts");
  IntegerMatrix m(a.rows_, a.cols_ + b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t j = 0; j < a.cols_; ++j) m.at(i, j) = a.at(i, j);
    for (std::size_t j = 0; j < b.cols_; ++j) m.at(i, a.cols_ + j) = b.at(i, j);
  }
  return m;
}

IntegerMatrix IntegerMatrix::vstack(const IntegerMatrix& a,
                                    const IntegerMatrix& b) {
  if (a.cols_ != b.cols_) throw DimensionMismatch("vstack column counts");
  IntegerMatrix m(a.rows_ + b.rows_, a.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j) m.at(i, j) = a.at(i, j);
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j) m.at(a.rows_ + i, j) = b.at(i, j);
  return m;
}

Int IntegerMatrix::determinant() const {
  if (!is_square()) throw NotSquare("determinant of a non-square matrix");
  std::size_t n = rows_;
  if (n == 0) return 1;
  IntegerMatrix w(*this);
  // Bareiss: division-free up to exact divisions by the previous pivot.
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (w.at(k, k) == 0) {
      std::size_t pivot = k;
      while (pivot < n && w.at(pivot, k) == 0) ++pivot;
      if (pivot == n) return 0;
      w.swap_rows(k, pivot);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int num = w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j);
        w.at(i, j) = num / prev;  // exact by Sylvester's identity
      }
      w.at(i, k) = 0;
    }
    prev = w.at(k, k);
  }
  return sign > 0 ? w.at(n - 1, n - 1) : Int(-w.at(n - 1, n - 1));
}

bool IntegerMatrix::is_unimodular() const {
  Int d = determinant();
  return d == 1 || d == -1;
}

IntegerMatrix IntegerMatrix::unimodular_inverse() const {
  if (!is_square()) throw NotSquare("inverse of a non-square matrix");
  SmithNormalForm snf = smith_normal_form(*this);
  if (!snf.s.is_identity())
    throw InvalidInput("matrix is not unimodular, no integral inverse");
  // S = U A V = I  =>  A^{-1} = V U.
  return snf.v * snf.u;
}

void IntegerMatrix::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t c = 0; c < cols_; ++c)
    std::swap(entries_[i * cols_ + c], entries_[j * cols_ + c]);
}

void IntegerMatrix::swap_cols(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t r = 0; r < rows_; ++r)
    std::swap(entries_[r * cols_ + i], entries_[r * cols_ + j]);
}

void IntegerMatrix::negate_row(std::size_t i) {
  for (std::size_t c = 0; c < cols_; ++c) {
    Int& e = entries_[i * cols_ + c];
    e = -e;
  }
}

void IntegerMatrix::negate_col(std::size_t i) {
  for (std::size_t r = 0; r < rows_; ++r) {
    Int& e = entries_[r * cols_ + i];
    e = -e;
  }
}

void IntegerMatrix::add_row_multiple(std::size_t dst, std::size_t src,
                                     const Int& q) {
  if (q == 0) return;
  for (std::size_t c = 0; c < cols_; ++c)
    entries_[dst * cols_ + c] += q * entries_[src * cols_ + c];
}

void IntegerMatrix::add_col_multiple(std::size_t dst, std::size_t src,
                                     const Int& q) {
  if (q == 0) return;
  for (std::size_t r = 0; r < rows_; ++r)
    entries_[r * cols_ + dst] += q * entries_[r * cols_ + src];
}

std::string IntegerMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? " [" : "[");
    for (std::size_t j = 0; j < cols_; ++j)
      os << (j ? "," : "") << at(i, j);
    os << "]";
    if (i + 1 < rows_) os << "\n";
  }
  os << "]";
  return os.str();
}

namespace {

// Quotient with remainder of minimal absolute value; shrinks entries fast
// during eliminations.
Int rounded_quotient(const Int& a, const Int& b) {
  Int q = a / b;
  Int r = a - q * b;
  Int b2 = abs(b);
  if (2 * abs(r) > b2) q += (a < 0) == (b < 0) ? 1 : -1;
  return q;
}

struct SnfWorkspace {
  IntegerMatrix s, u, v, u_inv, v_inv;
  bool with_inverses;

  // Row operation L applied as S <- L S keeps S = U A V in sync with
  // U <- L U and Uinv <- Uinv L^{-1}.
  void swap_rows(std::size_t i, std::size_t j) {
    s.swap_rows(i, j);
    u.swap_rows(i, j);
    if (with_inverses) u_inv.swap_cols(i, j);
  }
  void negate_row(std::size_t i) {
    s.negate_row(i);
    u.negate_row(i);
    if (with_inverses) u_inv.negate_col(i);
  }
  void add_row_multiple(std::size_t dst, std::size_t src, const Int& q) {
    s.add_row_multiple(dst, src, q);
    u.add_row_multiple(dst, src, q);
    if (with_inverses) u_inv.add_col_multiple(src, dst, -q);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    s.swap_cols(i, j);
    v.swap_cols(i, j);
    if (with_inverses) v_inv.swap_rows(i, j);
  }
  void add_col_multiple(std::size_t dst, std::size_t src, const Int& q) {
    s.add_col_multiple(dst, src, q);
    v.add_col_multiple(dst, src, q);
    if (with_inverses) v_inv.add_row_multiple(src, dst, -q);
  }
};

SmithNormalFormExt smith_impl(const IntegerMatrix& a, bool with_inverses) {
  const std::size_t m = a.rows(), n = a.cols();
  SnfWorkspace w{a,
                 IntegerMatrix::identity(m),
                 IntegerMatrix::identity(n),
                 with_inverses ? IntegerMatrix::identity(m) : IntegerMatrix(),
                 with_inverses ? IntegerMatrix::identity(n) : IntegerMatrix(),
                 with_inverses};

  const std::size_t steps = std::min(m, n);
  std::size_t t = 0;
  for (; t < steps; ++t) {
    for (;;) {
      // Pivot: smallest nonzero absolute value in the trailing block,
      // ties broken by lowest row then column index.
      std::size_t pi = m, pj = n;
      Int best = 0;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          const Int& e = w.s.at(i, j);
          if (e == 0) continue;
          Int mag = abs(e);
          if (pi == m || mag < best) {
            best = mag;
            pi = i;
            pj = j;
          }
        }
      if (pi == m) goto done;  // trailing block is zero
      w.swap_rows(t, pi);
      w.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (w.s.at(i, t) == 0) continue;
        Int q = rounded_quotient(w.s.at(i, t), w.s.at(t, t));
        w.add_row_multiple(i, t, -q);
        if (w.s.at(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (w.s.at(t, j) == 0) continue;
        Int q = rounded_quotient(w.s.at(t, j), w.s.at(t, t));
        w.add_col_multiple(j, t, -q);
        if (w.s.at(t, j) != 0) clean = false;
      }
      if (!clean) continue;  // residues remain, re-pick a smaller pivot

      // Divisibility chain: the pivot must divide the whole trailing
      // block; fold an offending row into row t and reduce again.
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (w.s.at(i, j) % w.s.at(t, t) != 0) {
            w.add_row_multiple(t, i, Int(1));
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (w.s.at(t, t) < 0) w.negate_row(t);
  }
done:
  SmithNormalFormExt out;
  out.rank = 0;
  for (std::size_t i = 0; i < steps; ++i)
    if (w.s.at(i, i) != 0) ++out.rank;
  out.s = std::move(w.s);
  out.u = std::move(w.u);
  out.v = std::move(w.v);
  out.u_inv = std::move(w.u_inv);
  out.v_inv = std::move(w.v_inv);
  return out;
}

}  // namespace

SmithNormalForm smith_normal_form(const IntegerMatrix& a) {
  SmithNormalFormExt e = smith_impl(a, false);
  return {std::move(e.s), std::move(e.u), std::move(e.v)};
}

SmithNormalFormExt smith_normal_form_ext(const IntegerMatrix& a) {
  return smith_impl(a, true);
}

bool is_unimodular(const IntegerMatrix& a) { return a.is_unimodular(); }

Int gcd_of(const IntVector& v) {
  Int g = 0;
  for (const Int& e : v) g = boost::multiprecision::gcd(g, e);
  return g;
}

std::string SolveObstruction::to_string() const {
  std::ostringstream os;
  if (divisor == 0)
    os << "constraint " << constraint_index << ": residue " << residue
       << " outside the column span";
  else
    os << "constraint " << constraint_index << ": divisor " << divisor
       << " does not divide " << residue;
  return os.str();
}

SolveOutcome solve_linear_integer_full(const IntegerMatrix& a,
                                       const IntVector& b) {
  if (b.size() != a.rows())
    throw DimensionMismatch("right hand side length != row count");
  SmithNormalFormExt snf = smith_normal_form_ext(a);
  IntVector c = snf.u.apply(b);  // solve S y = U b
  const std::size_t n = a.cols();
  IntVector y(n);
  for (std::size_t i = 0; i < c.size(); ++i) {
    Int d = i < std::min(a.rows(), n) ? snf.s.at(i, i) : Int(0);
    if (d != 0) {
      if (c[i] % d != 0) return {std::nullopt, SolveObstruction{i, d, c[i]}};
      y[i] = c[i] / d;
    } else if (c[i] != 0) {
      return {std::nullopt, SolveObstruction{i, Int(0), c[i]}};
    }
  }
  IntegerSolution sol;
  sol.x0 = snf.v.apply(y);
  std::vector<std::size_t> free_cols;
  for (std::size_t j = snf.rank; j < n; ++j) free_cols.push_back(j);
  sol.kernel = hnf_column_basis(snf.v.columns(free_cols));
  return {std::move(sol), std::nullopt};
}

std::optional<IntegerSolution> solve_linear_integer(const IntegerMatrix& a,
                                                    const IntVector& b) {
  return solve_linear_integer_full(a, b).solution;
}

std::optional<IntegerMatrix> solve_linear_integer_many(const IntegerMatrix& a,
                                                       const IntegerMatrix& b) {
  if (b.rows() != a.rows())
    throw DimensionMismatch("right hand side rows != row count");
  SmithNormalFormExt snf = smith_normal_form_ext(a);
  IntegerMatrix c = snf.u * b;
  const std::size_t n = a.cols();
  IntegerMatrix y(n, b.cols());
  for (std::size_t i = 0; i < c.rows(); ++i) {
    Int d = i < std::min(a.rows(), n) ? snf.s.at(i, i) : Int(0);
    for (std::size_t j = 0; j < b.cols(); ++j) {
      if (d != 0) {
        if (c.at(i, j) % d != 0) return std::nullopt;
        y.at(i, j) = c.at(i, j) / d;
      } else if (c.at(i, j) != 0) {
        return std::nullopt;
      }
    }
  }
  return snf.v * y;
}

IntegerMatrix kernel_basis(const IntegerMatrix& a) {
  SmithNormalFormExt snf = smith_normal_form_ext(a);
  std::vector<std::size_t> free_cols;
  for (std::size_t j = snf.rank; j < a.cols(); ++j) free_cols.push_back(j);
  IntegerMatrix basis = hnf_column_basis(snf.v.columns(free_cols));
  for (std::size_t j = 0; j < basis.cols(); ++j) {
    if (gcd_of(basis.column(j)) != 1)
      throw InternalInvariant("kernel basis column is not primitive");
  }
  return basis;
}

KernelWithCoordinates kernel_with_coordinates(const IntegerMatrix& a) {
  SmithNormalFormExt snf = smith_normal_form_ext(a);
  KernelWithCoordinates out;
  for (std::size_t j = 0; j < a.cols(); ++j)
    (j < snf.rank ? out.image_cols : out.kernel_cols).push_back(j);
  out.basis = snf.v.columns(out.kernel_cols);
  out.coords = std::move(snf.v_inv);
  for (std::size_t i = 0; i < snf.rank; ++i) out.diag.push_back(snf.s.at(i, i));
  return out;
}

IntegerMatrix hermite_row_form(const IntegerMatrix& a) {
  IntegerMatrix h(a);
  const std::size_t m = h.rows(), n = h.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    for (;;) {
      std::size_t pivot = m;
      Int best = 0;
      for (std::size_t i = r; i < m; ++i) {
        if (h.at(i, c) == 0) continue;
        Int mag = abs(h.at(i, c));
        if (pivot == m || mag < best) {
          best = mag;
          pivot = i;
        }
      }
      if (pivot == m) break;
      h.swap_rows(r, pivot);
      bool clean = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (h.at(i, c) == 0) continue;
        Int q = rounded_quotient(h.at(i, c), h.at(r, c));
        h.add_row_multiple(i, r, -q);
        if (h.at(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (h.at(r, c) == 0) continue;
    if (h.at(r, c) < 0) h.negate_row(r);
    // Rows above the pivot reduced into [0, pivot).
    for (std::size_t i = 0; i < r; ++i) {
      Int q = h.at(i, c) / h.at(r, c);
      if (h.at(i, c) - q * h.at(r, c) < 0) q -= 1;
      h.add_row_multiple(i, r, -q);
    }
    ++r;
  }
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < r; ++i) keep.push_back(i);
  return h.rows_subset(keep);
}

IntegerMatrix hnf_column_basis(const IntegerMatrix& a) {
  return hermite_row_form(a.transpose()).transpose();
}

}  // namespace galmod
