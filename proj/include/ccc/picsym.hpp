#pragma once

// Formal Picard-group monomials in generators L1..Ln, Ikari data, the
// monodromy of the coefficient system, and Sym-power expansions.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccc/chamber.hpp"
#include "ccc/zlin.hpp"

namespace ccc::picsym {

class PicError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PicMonomial {
 public:
  PicMonomial() = default;
  explicit PicMonomial(std::vector<long> exponents) : exps_(std::move(exponents)) {}

  static PicMonomial unit(std::size_t n) { return PicMonomial(std::vector<long>(n, 0)); }
  /// The i-th generator, 0-based.
  static PicMonomial generator(std::size_t n, std::size_t i);

  std::size_t generator_count() const { return exps_.size(); }
  const std::vector<long>& exponents() const { return exps_; }
  bool is_unit() const;

  /// "L1^2 L3^-1", "L2" for exponent 1, "1" for the unit.
  std::string to_string() const;
  /// Same with custom generator names, e.g. {"L", "M"} -> "L^-1 M".
  std::string to_string(const std::vector<std::string>& names) const;
  /// Inverse of to_string(); n fixes the generator count.
  static PicMonomial parse(const std::string& s, std::size_t n);

  friend bool operator==(const PicMonomial&, const PicMonomial&) = default;
  friend auto operator<=>(const PicMonomial& a, const PicMonomial& b) { return a.exps_ <=> b.exps_; }

 private:
  std::vector<long> exps_;
};

PicMonomial pic_mul(const PicMonomial& a, const PicMonomial& b);
PicMonomial pic_inv(const PicMonomial& a);
PicMonomial pic_pow(const PicMonomial& a, long k);
PicMonomial operator*(const PicMonomial& a, const PicMonomial& b);

/// Monomials L^a with a_i >= 0 and sum a_i <= k, graded-lex order; the
/// O-summand of E = O + L1 + ... + Ln absorbs the slack. C(n+k, n) of them.
std::vector<PicMonomial> sym_expand(std::size_t k, std::size_t n);

/// E : L^v = Z^rankL -> Pic = Z^g as a g x rankL matrix.
struct Ikari {
  zlin::IntMatrix matrix;
};

/// Ikari sending the i-th basis vector to the i-th entry of `bundles`.
Ikari ikari_from_bundles(const std::vector<PicMonomial>& bundles);

/// M -> L^v -> Pic as a g x rankN matrix, equal to (-E) * beta^T.
struct MonodromyData {
  zlin::IntMatrix matrix;
  PicMonomial apply(const zlin::IntVector& loop) const;
};

/// beta is (rank N) x (rank L).
MonodromyData monodromy(const zlin::IntMatrix& beta, const Ikari& ikari);

/// a_k * prefix * Sym^sym_power E, or zero.
struct SymbolicBundle {
  bool zero = true;
  std::size_t component = 0;  // k
  PicMonomial prefix;
  std::size_t sym_power = 0;
  std::size_t n = 0;

  /// Rank over a point base: C(n + sym_power, n), 0 when zero.
  zlin::Integer rank() const;
  std::string to_string() const;
  friend bool operator==(const SymbolicBundle&, const SymbolicBundle&) = default;
};

/// Label of a chamber in the k-th semiorthogonal component of the P^n-bundle
/// P(O + L1 + ... + Ln), 1 <= k <= n+1.
SymbolicBundle sod_label(std::size_t n, std::size_t k, const Chamber& chamber);

}  // namespace ccc::picsym
