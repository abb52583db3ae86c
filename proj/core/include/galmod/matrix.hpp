#ifndef GALMOD_MATRIX_HPP
#define GALMOD_MATRIX_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "galmod/errors.hpp"

namespace galmod {

// All arithmetic in galmod is exact.  Entries grow without bound during
// eliminations, so a fixed-width integer type is never acceptable here.
using Int = boost::multiprecision::cpp_int;
using IntVector = std::vector<Int>;

// Dense integer matrix, row major.  The universal carrier for group
// elements, lattice actions, equivariant maps and normal forms.
class IntegerMatrix {
 public:
  IntegerMatrix() : rows_(0), cols_(0) {}
  IntegerMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}

  static IntegerMatrix identity(std::size_t n);
  static IntegerMatrix diagonal(const IntVector& d);
  static IntegerMatrix from_rows(
      std::initializer_list<std::initializer_list<long long>> rows);
  static IntegerMatrix column_vector(const IntVector& v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Int& at(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  bool operator==(const IntegerMatrix& other) const = default;

  bool is_square() const { return rows_ == cols_; }
  bool is_zero() const;
  bool is_identity() const;

  IntegerMatrix transpose() const;
  IntegerMatrix negated() const;
  IntegerMatrix operator*(const IntegerMatrix& rhs) const;
  IntegerMatrix operator+(const IntegerMatrix& rhs) const;
  IntegerMatrix operator-(const IntegerMatrix& rhs) const;
  IntVector apply(const IntVector& v) const;

  IntVector row(std::size_t i) const;
  IntVector column(std::size_t j) const;
  IntegerMatrix columns(const std::vector<std::size_t>& which) const;
  IntegerMatrix rows_subset(const std::vector<std::size_t>& which) const;

  static IntegerMatrix hstack(const IntegerMatrix& a, const IntegerMatrix& b);
  static IntegerMatrix vstack(const IntegerMatrix& a, const IntegerMatrix& b);

  // Exact determinant by fraction-free (Bareiss) elimination.
  Int determinant() const;
  bool is_unimodular() const;

  // Inverse of a unimodular matrix; entries stay integral.
  IntegerMatrix unimodular_inverse() const;

  // In-place elementary operations used by the normal form routines.
  void swap_rows(std::size_t i, std::size_t j);
  void swap_cols(std::size_t i, std::size_t j);
  void negate_row(std::size_t i);
  void negate_col(std::size_t i);
  void add_row_multiple(std::size_t dst, std::size_t src, const Int& q);
  void add_col_multiple(std::size_t dst, std::size_t src, const Int& q);

  std::string to_string() const;

 private:
  std::size_t rows_, cols_;
  IntVector entries_;
};

// S = U * A * V with S diagonal, nonnegative, d1 | d2 | ..., and U, V
// unimodular.
struct SmithNormalForm {
  IntegerMatrix s, u, v;
};

// Same, with the inverses of the transforms accumulated alongside.
struct SmithNormalFormExt {
  IntegerMatrix s, u, v, u_inv, v_inv;
  std::size_t rank = 0;  // number of nonzero diagonal entries
};

SmithNormalForm smith_normal_form(const IntegerMatrix& a);
SmithNormalFormExt smith_normal_form_ext(const IntegerMatrix& a);

bool is_unimodular(const IntegerMatrix& a);

struct IntegerSolution {
  IntVector x0;           // one solution of A x = b
  IntegerMatrix kernel;   // columns: saturated basis of ker A, HNF normalized
};

// Why an integer system has no solution: the SNF pivot `divisor` at
// `constraint_index` does not divide `residue` (divisor 0 encodes a rank
// obstruction, i.e. a nonzero residue outside the column span).
struct SolveObstruction {
  std::size_t constraint_index = 0;
  Int divisor;
  Int residue;
  std::string to_string() const;
};

struct SolveOutcome {
  std::optional<IntegerSolution> solution;
  std::optional<SolveObstruction> obstruction;
};

SolveOutcome solve_linear_integer_full(const IntegerMatrix& a,
                                       const IntVector& b);
std::optional<IntegerSolution> solve_linear_integer(const IntegerMatrix& a,
                                                    const IntVector& b);

// Solve A X = B for an integer matrix X, all columns at once; absent if any
// column is unsolvable.
std::optional<IntegerMatrix> solve_linear_integer_many(const IntegerMatrix& a,
                                                       const IntegerMatrix& b);

// Columns form the canonical (HNF normalized) basis of the full integer
// kernel of A.  Integer kernels are pure sublattices, so the basis is
// automatically saturated; a primitivity assertion guards this.
IntegerMatrix kernel_basis(const IntegerMatrix& a);

// Row-style Hermite normal form: canonical basis of the row lattice of A,
// zero rows dropped.  Pivots positive, entries above a pivot reduced into
// [0, pivot).
IntegerMatrix hermite_row_form(const IntegerMatrix& a);

// Canonical basis of the lattice spanned by the columns of A.
IntegerMatrix hnf_column_basis(const IntegerMatrix& a);

// Kernel of A together with coordinates: `basis` holds the kernel columns of
// the SNF transform V, `coords` is V^{-1} (so coords * basis selects unit
// columns), and `pivot_rows` are the V^{-1} rows complementary to the kernel
// selection.  Used to express vectors of ker A in basis coordinates without
// solving anything.
struct KernelWithCoordinates {
  IntegerMatrix basis;                  // n x k
  IntegerMatrix coords;                 // n x n, = V^{-1}
  std::vector<std::size_t> kernel_cols; // selected column indices in V
  std::vector<std::size_t> image_cols;  // the complementary indices
  IntVector diag;                       // nonzero SNF diagonal entries
};

KernelWithCoordinates kernel_with_coordinates(const IntegerMatrix& a);

Int gcd_of(const IntVector& v);

}  // namespace galmod

#endif  // GALMOD_MATRIX_HPP
