#pragma once

// Coherent side: the category Gamma_{Lambda,H} with graded homs by lattice
// point counting, isotypic components, costandard stalks, and toric Cech
// cohomology of line bundles on P^n.

#include <cstddef>
#include <optional>
#include <vector>

#include "ccc/errors.hpp"
#include "ccc/fans.hpp"
#include "ccc/zlin.hpp"

namespace ccc::cohside {

using zlin::Character;
using zlin::Integer;
using zlin::IntMatrix;
using zlin::IntVector;
using zlin::RatVector;

/// Dimension per degree 0..bound.
struct GradedDims {
  std::vector<Integer> dims;
  /// Set when the requested character is not compatible with the stacky
  /// data (non-integral degrees); dims is then empty.
  bool incompatible = false;

  Integer total() const;
  friend bool operator==(const GradedDims&, const GradedDims&) = default;
};

/// {q in Z^rank : <q, c> >= 0 for all inequalities c}, graded by <q, weight>.
class AffineMonoid {
 public:
  AffineMonoid() = default;
  AffineMonoid(std::size_t rank, std::vector<IntVector> inequalities);

  std::size_t rank() const { return rank_; }
  const std::vector<IntVector>& inequalities() const { return ineq_; }
  const IntVector& weight() const { return weight_; }
  bool contains(const IntVector& q) const;
  Integer weight_of(const IntVector& q) const;
  /// All elements of weight <= bound, lexicographically sorted.
  std::vector<IntVector> elements_up_to(std::size_t bound) const;

 private:
  std::size_t rank_ = 0;
  std::vector<IntVector> ineq_;
  IntVector weight_;
  std::vector<Integer> box_;  // |q_i| <= box_i * bound
};

/// Objects: characters of H. hom(chi, chi') = pi^-1(chi' - chi).
struct GammaCategory {
  zlin::FiniteAbelianGroup group;
  AffineMonoid monoid;
  std::optional<zlin::Cokernel> projection;  // absent when H is trivial
  IntMatrix beta;
  bool reduced = false;  // monoid written in coordinates of L^v / sigma_hat^perp

  Character project(const IntVector& q) const;
  std::vector<Character> objects() const;
  Character zero() const;
};

/// beta: L -> N ((rank N) x (rank L)); sigma_hat a cone in L. Full-dimensional
/// sigma_hat: monoid sigma_hat^v cap L^v with pi = projection to coker(beta^T).
/// Otherwise only unimodular beta is supported (H trivial).
GammaCategory gamma_category(const IntMatrix& beta, const fans::Cone& sigma_hat);
/// Affine stacky fan (one maximal cone).
GammaCategory gamma_category(const fans::StackyFan& sf);

GradedDims hom_graded(const GammaCategory& g, const Character& chi, const Character& chi2, std::size_t bound);

/// Walks i -> i+1 (mod n) from i to j, counted per length 0..bound.
std::vector<Integer> cyclic_quiver_paths(std::size_t n, std::size_t i, std::size_t j, std::size_t bound);

GradedDims isotypic_component(const GammaCategory& g, const Character& chi, std::size_t bound);

/// Points of (sigma^v / sigma^perp) cap (chi + M) graded by <., weight>, for
/// sigma a cone in N, chi a rational point of M_R and weight in span(sigma).
GradedDims costandard_stalk(const fans::Cone& sigma, const RatVector& chi, const IntVector& weight, std::size_t bound);

struct KappaEntry {
  RatVector point;      // chi in M_{sigma,beta}/M
  Character character;  // its image in the character group of H
  GradedDims stalk;
  GradedDims isotypic;
};

struct KappaReport {
  std::vector<KappaEntry> entries;
  bool bijective = false;  // points hit every character exactly once
  bool ok() const;
};

/// Compares costandard stalks at every torsion point with the isotypic
/// components of the Gamma category, degreewise up to bound.
KappaReport kappa_check(const IntMatrix& beta, const fans::Cone& sigma_hat, std::size_t bound);

struct LineBundleCohomology {
  std::vector<Integer> h;  // h[i] = dim H^i, i = 0..n
};

/// H^*(P^n, O(d)) by characterwise Cech complexes over the standard cover.
/// Throws UnsupportedError when box_bound < |d|.
LineBundleCohomology pn_line_bundle_cohomology(std::size_t n, long d, std::size_t box_bound);

/// sum (-1)^i dim H^i(O(b - a)).
Integer euler_pairing_coherent(std::size_t n, long a, long b);

}  // namespace ccc::cohside
