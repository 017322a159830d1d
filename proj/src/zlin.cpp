#include "ccc/zlin.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <utility>

namespace ccc::zlin {

template <typename T>
Matrix<T>::Matrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw ZlinError("ragged matrix literal");
    for (long v : r) data_.emplace_back(v);
  }
}

template <typename T>
Matrix<T> Matrix<T>::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

template <typename T>
std::vector<T> Matrix<T>::column(std::size_t c) const {
  std::vector<T> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

template <typename T>
std::vector<T> Matrix<T>::row(std::size_t r) const {
  return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                        data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

template <typename T>
Matrix<T> Matrix<T>::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

template <typename T>
void Matrix<T>::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

template <typename T>
void Matrix<T>::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

template class Matrix<Integer>;
template class Matrix<Rational>;

namespace {

template <typename T>
Matrix<T> multiply(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw ZlinError("matrix shape mismatch in product");
  Matrix<T> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

template <typename T>
std::vector<T> apply(const Matrix<T>& a, const std::vector<T>& v) {
  if (a.cols() != v.size()) throw ZlinError("matrix-vector shape mismatch");
  std::vector<T> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) out[i] += a(i, k) * v[k];
  return out;
}

// Row echelon form over Q; returns pivot columns.
std::vector<std::size_t> echelon(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m(p, col) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(row, p);
    Rational inv = 1 / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      Rational f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) { return multiply(a, b); }
RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) { return multiply(a, b); }
IntVector operator*(const IntMatrix& a, const IntVector& v) { return apply(a, v); }
RatVector operator*(const RatMatrix& a, const RatVector& v) { return apply(a, v); }

IntMatrix from_columns(std::size_t rows, const std::vector<IntVector>& columns) {
  IntMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw ZlinError("column length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

RatMatrix to_rational(const IntMatrix& a) {
  RatMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
  return out;
}

std::string to_string(const IntMatrix& a) {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < a.rows(); ++r) {
    if (r) os << ',';
    os << '[';
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (c) os << ',';
      os << a(r, c);
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

Rational determinant(const RatMatrix& a) {
  if (a.rows() != a.cols()) throw ZlinError("determinant of non-square matrix");
  RatMatrix m = a;
  Rational det = 1;
  const std::size_t n = m.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && m(p, col) == 0) ++p;
    if (p == n) return 0;
    if (p != col) {
      m.swap_rows(p, col);
      det = -det;
    }
    det *= m(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m(r, col) == 0) continue;
      Rational f = m(r, col) / m(col, col);
      for (std::size_t c = col; c < n; ++c) m(r, c) -= f * m(col, c);
    }
  }
  return det;
}

Integer determinant(const IntMatrix& a) {
  Rational d = determinant(to_rational(a));
  return d.get_num();
}

std::size_t rank(const RatMatrix& a) {
  RatMatrix m = a;
  return echelon(m).size();
}

std::size_t rank(const IntMatrix& a) { return rank(to_rational(a)); }

RatMatrix inverse(const RatMatrix& a) {
  if (a.rows() != a.cols()) throw ZlinError("inverse of non-square matrix");
  const std::size_t n = a.rows();
  RatMatrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
    aug(r, n + r) = 1;
  }
  auto pivots = echelon(aug);
  if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) throw ZlinError("matrix is singular");
  RatMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out(r, c) = aug(r, n + c);
  return out;
}

std::vector<RatVector> null_space(const RatMatrix& a) {
  RatMatrix m = a;
  auto pivots = echelon(m);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<RatVector> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    RatVector v(a.cols());
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

IntVector primitive(const IntVector& v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), Integer(abs(x)).get_mpz_t());
  if (g == 0) return v;
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
  return out;
}

IntVector primitive(const RatVector& v) {
  Integer l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  IntVector scaled(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rational s = v[i] * l;
    scaled[i] = s.get_num();
  }
  return primitive(scaled);
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Rational make_rational(const Integer& a, const Integer& b) {
  if (b == 0) throw ZlinError("zero denominator");
  Rational q(a, b);
  q.canonicalize();
  return q;
}

Integer floor(const Rational& q) { return floor_div(q.get_num(), q.get_den()); }

Integer binomial(long n, long k) {
  if (k < 0) return 0;
  // Polynomial continuation n(n-1)...(n-k+1)/k!, exact for negative n too.
  Integer num = 1;
  Integer den = 1;
  for (long i = 0; i < k; ++i) {
    num *= Integer(n - i);
    den *= Integer(i + 1);
  }
  return num / den;
}

// ---------------------------------------------------------------------------
// Smith normal form

std::size_t SnfDecomposition::rank() const {
  std::size_t r = 0;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i)
    if (D(i, i) != 0) ++r;
  return r;
}

std::vector<Integer> SnfDecomposition::diagonal() const {
  std::vector<Integer> d;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
  return d;
}

namespace {

struct SnfState {
  IntMatrix u, d, v;

  void row_axpy(std::size_t dst, std::size_t src, const Integer& f) {
    // row_dst -= f * row_src
    for (std::size_t c = 0; c < d.cols(); ++c) d(dst, c) -= f * d(src, c);
    for (std::size_t c = 0; c < u.cols(); ++c) u(dst, c) -= f * u(src, c);
  }
  void col_axpy(std::size_t dst, std::size_t src, const Integer& f) {
    for (std::size_t r = 0; r < d.rows(); ++r) d(r, dst) -= f * d(r, src);
    for (std::size_t r = 0; r < v.rows(); ++r) v(r, dst) -= f * v(r, src);
  }
  void swap_rows(std::size_t a, std::size_t b) {
    d.swap_rows(a, b);
    u.swap_rows(a, b);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    d.swap_cols(a, b);
    v.swap_cols(a, b);
  }
  // Smallest nonzero |entry| in the block [t.., t..], row-major tie break.
  bool find_pivot(std::size_t t, std::size_t& pr, std::size_t& pc) const {
    bool found = false;
    Integer best;
    for (std::size_t r = t; r < d.rows(); ++r)
      for (std::size_t c = t; c < d.cols(); ++c) {
        if (d(r, c) == 0) continue;
        Integer a = abs(d(r, c));
        if (!found || a < best) {
          found = true;
          best = a;
          pr = r;
          pc = c;
        }
      }
    return found;
  }
};

}  // namespace

SnfDecomposition smith_normal_form(const IntMatrix& a) {
  SnfState s{IntMatrix::identity(a.rows()), a, IntMatrix::identity(a.cols())};
  const std::size_t n = std::min(a.rows(), a.cols());
  for (std::size_t t = 0; t < n; ++t) {
    std::size_t pr = 0, pc = 0;
    if (!s.find_pivot(t, pr, pc)) break;
    for (;;) {
      s.swap_rows(t, pr);
      s.swap_cols(t, pc);
      const Integer p = s.d(t, t);
      bool clean = true;
      for (std::size_t r = t + 1; r < a.rows(); ++r) {
        if (s.d(r, t) == 0) continue;
        s.row_axpy(r, t, floor_div(s.d(r, t), p));
        if (s.d(r, t) != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < a.cols(); ++c) {
        if (s.d(t, c) == 0) continue;
        s.col_axpy(c, t, floor_div(s.d(t, c), p));
        if (s.d(t, c) != 0) clean = false;
      }
      if (clean) {
        // Divisibility: fold an offending row into the pivot row and retry.
        std::size_t bad_row = 0;
        bool divisible = true;
        for (std::size_t r = t + 1; r < a.rows() && divisible; ++r)
          for (std::size_t c = t + 1; c < a.cols(); ++c)
            if (s.d(r, c) % p != 0) {
              divisible = false;
              bad_row = r;
              break;
            }
        if (divisible) break;
        s.row_axpy(t, bad_row, Integer(-1));
      }
      s.find_pivot(t, pr, pc);
    }
    if (s.d(t, t) < 0) {
      for (std::size_t c = 0; c < s.d.cols(); ++c) s.d(t, c) = -s.d(t, c);
      for (std::size_t c = 0; c < s.u.cols(); ++c) s.u(t, c) = -s.u(t, c);
    }
  }
  return {std::move(s.u), std::move(s.d), std::move(s.v)};
}

// ---------------------------------------------------------------------------
// Finite abelian groups

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<Integer> invariant_factors, std::size_t free_rank)
    : factors_(std::move(invariant_factors)), free_rank_(free_rank) {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i] < 2) throw ZlinError("invariant factors must be >= 2");
    if (i + 1 < factors_.size() && factors_[i + 1] % factors_[i] != 0)
      throw ZlinError("invariant factors must form a divisibility chain");
  }
}

Integer FiniteAbelianGroup::torsion_order() const {
  Integer o = 1;
  for (const auto& f : factors_) o *= f;
  return o;
}

std::string FiniteAbelianGroup::describe() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& f : factors_) {
    os << (first ? "" : " x ") << "Z/" << f;
    first = false;
  }
  if (free_rank_ > 0) {
    os << (first ? "" : " x ") << "Z^" << free_rank_;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

Character reduce(const FiniteAbelianGroup& g, const IntVector& raw) {
  const auto& f = g.invariant_factors();
  if (raw.size() != f.size() + g.free_rank()) throw ZlinError("character length mismatch");
  Character c{raw};
  for (std::size_t i = 0; i < f.size(); ++i) mpz_fdiv_r(c.components[i].get_mpz_t(), raw[i].get_mpz_t(), f[i].get_mpz_t());
  return c;
}

Character add(const FiniteAbelianGroup& g, const Character& a, const Character& b) {
  IntVector s(a.components.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = a.components[i] + b.components[i];
  return reduce(g, s);
}

Character negate(const FiniteAbelianGroup& g, const Character& a) {
  IntVector s(a.components.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = -a.components[i];
  return reduce(g, s);
}

std::vector<Character> elements(const FiniteAbelianGroup& g) {
  if (!g.is_finite()) throw ZlinError("cannot enumerate an infinite group");
  const auto& f = g.invariant_factors();
  std::vector<Character> out;
  Character cur{IntVector(f.size(), Integer(0))};
  for (;;) {
    out.push_back(cur);
    std::size_t i = f.size();
    while (i > 0) {
      --i;
      cur.components[i] += 1;
      if (cur.components[i] < f[i]) break;
      cur.components[i] = 0;
      if (i == 0) return out;
    }
    if (f.empty()) return out;
  }
}

std::size_t index_of(const FiniteAbelianGroup& g, const Character& c) {
  const auto& f = g.invariant_factors();
  Integer idx = 0;
  for (std::size_t i = 0; i < f.size(); ++i) idx = idx * f[i] + c.components[i];
  return idx.get_ui();
}

Cokernel::Cokernel(const IntMatrix& a) : rows_(a.rows()) {
  auto snf = smith_normal_form(a);
  u_ = std::move(snf.U);
  std::vector<Integer> factors;
  const std::size_t r = snf.rank();
  for (std::size_t i = 0; i < r; ++i) diag_.push_back(snf.D(i, i));
  first_nontrivial_ = 0;
  while (first_nontrivial_ < r && diag_[first_nontrivial_] == 1) ++first_nontrivial_;
  for (std::size_t i = first_nontrivial_; i < r; ++i) factors.push_back(diag_[i]);
  group_ = FiniteAbelianGroup(std::move(factors), rows_ - r);
}

Character Cokernel::project(const IntVector& target) const {
  if (target.size() != rows_) throw ZlinError("cokernel projection: wrong vector length");
  IntVector y = u_ * target;
  IntVector raw;
  for (std::size_t i = first_nontrivial_; i < diag_.size(); ++i) raw.push_back(y[i]);
  for (std::size_t i = diag_.size(); i < rows_; ++i) raw.push_back(y[i]);
  return reduce(group_, raw);
}

FiniteAbelianGroup cokernel(const IntMatrix& a) { return Cokernel(a).group(); }

RatVector reduce_mod_lattice(const RatVector& x, const RatMatrix& basis) {
  RatVector coords = inverse(basis) * x;
  RatVector shift(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) shift[i] = Rational(floor(coords[i]));
  RatVector back = basis * shift;
  RatVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - back[i];
  return out;
}

CharacterQuotient character_quotient(const RatMatrix& superlattice_basis, const RatMatrix& sublattice_basis) {
  const std::size_t n = superlattice_basis.rows();
  if (superlattice_basis.cols() != n || sublattice_basis.rows() != n || sublattice_basis.cols() != n)
    throw ZlinError("character_quotient expects square bases of equal rank");
  RatMatrix t = inverse(superlattice_basis) * sublattice_basis;
  IntMatrix ti(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      if (t(r, c).get_den() != 1) throw ZlinError("sublattice is not contained in the superlattice");
      ti(r, c) = t(r, c).get_num();
    }
  if (determinant(ti) == 0)
    throw ZlinError("sublattice has infinite index: the quotient has a torsion-free direction");

  Cokernel coker(ti);
  CharacterQuotient out{coker.group(), {}};
  auto snf = smith_normal_form(ti);
  RatMatrix u_inv = inverse(to_rational(snf.U));
  std::size_t first = 0;
  while (first < n && snf.D(first, first) == 1) ++first;
  for (const auto& ch : elements(out.group)) {
    RatVector z(n);
    for (std::size_t i = 0; i < ch.components.size(); ++i) z[first + i] = Rational(ch.components[i]);
    RatVector x = superlattice_basis * (u_inv * z);
    out.representatives.push_back(reduce_mod_lattice(x, sublattice_basis));
  }
  return out;
}

IntMatrix saturated_column_basis(const IntMatrix& a) {
  auto snf = smith_normal_form(a);
  const std::size_t r = snf.rank();
  RatMatrix u_inv = inverse(to_rational(snf.U));
  IntMatrix out(a.rows(), r);
  for (std::size_t c = 0; c < r; ++c)
    for (std::size_t row = 0; row < a.rows(); ++row) out(row, c) = u_inv(row, c).get_num();
  return out;
}

}  // namespace ccc::zlin
