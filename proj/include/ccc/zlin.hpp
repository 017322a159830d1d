#pragma once

// Exact integer linear algebra: Smith normal form, cokernels, finite abelian
// groups and their characters.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccc::zlin {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

class ZlinError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense row-major matrix with exact entries.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<long>> rows);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<T> column(std::size_t c) const;
  std::vector<T> row(std::size_t r) const;
  Matrix transpose() const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
IntVector operator*(const IntMatrix& a, const IntVector& v);
RatVector operator*(const RatMatrix& a, const RatVector& v);

IntMatrix from_columns(std::size_t rows, const std::vector<IntVector>& columns);
RatMatrix to_rational(const IntMatrix& a);
std::string to_string(const IntMatrix& a);

Integer determinant(const IntMatrix& a);
Rational determinant(const RatMatrix& a);
std::size_t rank(const RatMatrix& a);
std::size_t rank(const IntMatrix& a);
/// Throws ZlinError when singular.
RatMatrix inverse(const RatMatrix& a);
/// Basis of the rational null space {x : a x = 0}, one vector per free column.
std::vector<RatVector> null_space(const RatMatrix& a);
/// Scales a rational vector to the primitive integer vector on the same ray.
IntVector primitive(const RatVector& v);
IntVector primitive(const IntVector& v);

/// U * A * V = D with U, V unimodular and D diagonal with d1 | d2 | ...
struct SnfDecomposition {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;

  std::size_t rank() const;
  std::vector<Integer> diagonal() const;
};

/// Pivot rule: smallest nonzero absolute value in the remaining block, ties
/// broken by row-major position. Output is deterministic.
SnfDecomposition smith_normal_form(const IntMatrix& a);

class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;
  FiniteAbelianGroup(std::vector<Integer> invariant_factors, std::size_t free_rank);

  const std::vector<Integer>& invariant_factors() const { return factors_; }
  std::size_t free_rank() const { return free_rank_; }
  bool is_finite() const { return free_rank_ == 0; }
  bool is_trivial() const { return factors_.empty() && free_rank_ == 0; }
  /// Order of the torsion part; the group order when finite.
  Integer torsion_order() const;
  std::string describe() const;

  friend bool operator==(const FiniteAbelianGroup&, const FiniteAbelianGroup&) = default;

 private:
  std::vector<Integer> factors_;
  std::size_t free_rank_ = 0;
};

/// Element of a finite abelian group written in its invariant-factor basis.
struct Character {
  std::vector<Integer> components;

  friend bool operator==(const Character&, const Character&) = default;
  friend auto operator<=>(const Character& a, const Character& b) { return a.components <=> b.components; }
};

Character add(const FiniteAbelianGroup& g, const Character& a, const Character& b);
Character negate(const FiniteAbelianGroup& g, const Character& a);
Character reduce(const FiniteAbelianGroup& g, const IntVector& raw);
/// All elements of a finite group in mixed-radix order (last component fastest).
std::vector<Character> elements(const FiniteAbelianGroup& g);
std::size_t index_of(const FiniteAbelianGroup& g, const Character& c);

/// coker(A : Z^cols -> Z^rows) together with the projection Z^rows -> coker.
class Cokernel {
 public:
  explicit Cokernel(const IntMatrix& a);

  const FiniteAbelianGroup& group() const { return group_; }
  /// Image of a target vector in the cokernel. Torsion components are
  /// reduced; free components are returned verbatim after the torsion ones.
  Character project(const IntVector& target) const;

 private:
  std::size_t rows_;
  IntMatrix u_;
  std::vector<Integer> diag_;  // nonzero diagonal entries, in order
  std::size_t first_nontrivial_ = 0;
  FiniteAbelianGroup group_;
};

FiniteAbelianGroup cokernel(const IntMatrix& a);

struct CharacterQuotient {
  FiniteAbelianGroup group;
  /// representatives[i] is the canonical coset representative of
  /// elements(group)[i], reduced into the fundamental parallelepiped of the
  /// sublattice.
  std::vector<RatVector> representatives;
};

/// Quotient of the lattice spanned by the columns of superlattice_basis by the
/// finite-index sublattice spanned by the columns of sublattice_basis.
CharacterQuotient character_quotient(const RatMatrix& superlattice_basis,
                                     const RatMatrix& sublattice_basis);

/// Reduces x modulo the lattice with basis columns `basis` into the
/// half-open fundamental parallelepiped.
RatVector reduce_mod_lattice(const RatVector& x, const RatMatrix& basis);

/// Basis (as columns) of the saturation span_Q(columns) ∩ Z^rows.
IntMatrix saturated_column_basis(const IntMatrix& a);

/// Canonicalized a/b (the two-argument mpq_class constructor does not reduce).
Rational make_rational(const Integer& a, const Integer& b);

Integer floor_div(const Integer& a, const Integer& b);
Integer floor(const Rational& q);
Integer binomial(long n, long k);

}  // namespace ccc::zlin
