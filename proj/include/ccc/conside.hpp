#pragma once

// Constructible side: representations of finite directed categories (finite
// posets and the P^n chamber orbit category), Ext via the bar complex, Cartan
// and Euler forms, Beilinson generators and the iterated-cone reduction.

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ccc/chamber.hpp"
#include "ccc/picsym.hpp"
#include "ccc/skeleton.hpp"
#include "ccc/zlin.hpp"

namespace ccc::conside {

using zlin::Integer;
using zlin::IntMatrix;
using zlin::IntVector;
using zlin::RatMatrix;

class ConsideError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when the generator system cannot reduce a class to zero.
class GenerationError : public ConsideError {
 public:
  using ConsideError::ConsideError;
};

using DimVector = IntVector;

class FinitePoset {
 public:
  FinitePoset() = default;
  /// Validates reflexivity, antisymmetry and transitivity.
  explicit FinitePoset(std::vector<std::vector<bool>> leq, std::vector<std::string> names = {});
  /// Order generated by the given relations x <= y (transitive closure).
  static FinitePoset from_relations(std::size_t size, const std::vector<std::pair<std::size_t, std::size_t>>& rel,
                                    std::vector<std::string> names = {});

  std::size_t size() const { return leq_.size(); }
  bool leq(std::size_t x, std::size_t y) const { return leq_[x][y]; }
  const std::vector<std::string>& names() const { return names_; }
  /// Covering pairs (x, y): x < y with nothing strictly between.
  std::vector<std::pair<std::size_t, std::size_t>> covers() const;
  /// Length of the longest strict chain.
  std::size_t height() const;

 private:
  std::vector<std::vector<bool>> leq_;
  std::vector<std::string> names_;
};

struct Morphism {
  std::size_t source = 0;
  std::size_t target = 0;
  IntVector translation;  // group element for orbit categories, empty otherwise
  bool identity = false;
};

/// Finite category without non-identity endomorphisms or cycles, given by
/// its full morphism list and composition table.
class DirectedCategory {
 public:
  std::size_t object_count() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<Morphism>& morphisms() const { return morphisms_; }
  std::size_t identity(std::size_t object) const { return identity_[object]; }
  /// Morphisms x -> y, identities first.
  const std::vector<std::size_t>& hom(std::size_t x, std::size_t y) const { return hom_[x][y]; }
  /// g o f for f: x -> y, g: y -> z.
  std::size_t compose(std::size_t f, std::size_t g) const;
  /// Longest chain of composable non-identity morphisms.
  std::size_t height() const;

  static DirectedCategory from_poset(const FinitePoset& p);
  /// Orbit category of the lifted chamber poset of P^n under Z^n: objects are
  /// the torus chambers by step 0..n, Hom(s, t) = {g : base_s <= base_t + g}.
  static DirectedCategory pn_chambers(std::size_t n);

 private:
  void finalize();

  std::vector<std::string> names_;
  std::vector<Morphism> morphisms_;
  std::vector<std::size_t> identity_;
  std::vector<std::vector<std::vector<std::size_t>>> hom_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> compose_;
};

/// Covariant functor to finite-dimensional Q-vector spaces: one matrix per
/// morphism, of shape dims[target] x dims[source].
struct Rep {
  std::vector<std::size_t> dims;
  std::vector<RatMatrix> maps;
};

/// Throws ConsideError on shape mismatch or failure of functoriality.
void validate_rep(const DirectedCategory& c, const Rep& r);

/// Representation of a poset from matrices on covering relations; all
/// composites are formed and squares must commute.
Rep poset_rep(const FinitePoset& p, const std::vector<std::size_t>& dims,
              const std::map<std::pair<std::size_t, std::size_t>, RatMatrix>& cover_maps);

/// k[Hom(v, -)]: supported on objects w with a morphism v -> w.
Rep corepresentable(const DirectedCategory& c, std::size_t v);
/// Dual of k[Hom(-, v)]: supported on objects w with a morphism w -> v.
Rep injective(const DirectedCategory& c, std::size_t v);
Rep direct_sum(const Rep& a, const Rep& b);
/// Pointwise change of basis by the given invertible matrices.
Rep change_basis(const DirectedCategory& c, const Rep& r, const std::vector<RatMatrix>& bases);

DimVector dimension_vector(const Rep& r);

/// dim Ext^i(M, N) for i = 0..height, from the normalized bar complex
/// C^k = prod over chains c0 -> ... -> ck of Hom(M(c0), N(ck)).
std::vector<std::size_t> rep_hom(const DirectedCategory& c, const Rep& m, const Rep& n);

/// C[x][y] = |Hom(x, y)|.
IntMatrix cartan_matrix(const DirectedCategory& c);
/// d^T C^-1 e.
Integer euler_form(const DirectedCategory& c, const DimVector& d, const DimVector& e);

struct BeilinsonGenerator {
  std::size_t k = 0;
  DimVector dims;  // per torus chamber (step 0..n)
  std::vector<std::pair<Chamber, picsym::SymbolicBundle>> decorations;  // per cube chamber
};

/// k = 1..n+1; dims are ranks of the SOD decorations, checked to be constant
/// on each torus chamber.
std::vector<BeilinsonGenerator> beilinson_generators(std::size_t n);
/// Euler form of the generators on the chamber category.
IntMatrix beilinson_gram(std::size_t n);

struct ReductionStep {
  std::size_t k = 0;
  Integer coefficient;
  DimVector remaining;
};

struct ReductionTrace {
  std::vector<ReductionStep> steps;
  bool reached_zero = false;
};

/// Subtracts generators k = n+1 down to 1, each matched on step k-1. Throws
/// GenerationError when the generators are not unitriangular.
ReductionTrace reduce_dimension_vector(std::size_t n, const DimVector& d);

struct TwistedTemplate {
  skeleton::ChamberQuiver quiver;
  std::vector<std::string> vertex_labels;  // object letter times Pic monomial
  std::vector<std::string> edge_labels;    // morphism letter times Pic monomial
};

/// Labels of a representation of the twisted chamber quiver. Objects are
/// lettered per torus chamber, edges per edge class.
TwistedTemplate twisted_rep_template(std::size_t n, const std::vector<picsym::PicMonomial>& pic,
                                     const std::vector<std::string>& names = {});

std::string to_dot(const TwistedTemplate& t);
std::string to_dot(const DirectedCategory& c);

}  // namespace ccc::conside
