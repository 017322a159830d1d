#pragma once

// FLTZ skeleton combinatorics: components, affine strata posets, chambers of
// the perturbed P^n skeleton and the chamber quiver with Pic-monomial labels.

#include <json.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ccc/chamber.hpp"
#include "ccc/errors.hpp"
#include "ccc/fans.hpp"
#include "ccc/picsym.hpp"
#include "ccc/zlin.hpp"

namespace ccc::skeleton {

using picsym::PicMonomial;
using zlin::IntVector;
using zlin::Rational;
using zlin::RatVector;

/// (-tau) x (tau^perp + chi).
struct SkeletonComponent {
  fans::Cone cone;                   // -tau, in N
  RatVector character;               // in [0,1)^n
  std::vector<RatVector> base_subspace;  // basis of tau^perp in M_R
  std::size_t cone_index = 0;        // index of tau in StackyFan::fan.cones()
  friend bool operator==(const SkeletonComponent&, const SkeletonComponent&) = default;
};

std::vector<SkeletonComponent> fltz_components(const fans::StackyFan& sf);

enum class Stratum { l, c, r };

struct AffineStrataPoset {
  std::size_t ray_count = 0;
  std::vector<std::vector<Stratum>> strata;   // {l,c,r}^rays, lexicographic (l < c < r)
  std::vector<std::vector<bool>> leq;         // product order with c < l, c < r
  // Collapse onto the quiver (. -> .)^rays: vertex = bitmask with bit i set
  // when the i-th coordinate is l or r (the target of the i-th arrow).
  std::vector<std::size_t> collapse;
  std::size_t quiver_vertex_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> quiver_arrows;
};

AffineStrataPoset strata_poset_affine(const fans::Cone& c);

/// Default perturbation 1/(2n+2).
Rational default_epsilon(std::size_t n);

/// Nonempty chambers of the unit cube cut by x_i = eps and sum x = 1..n-1,
/// sorted by (step, flags, slant). Exact rational test of each (flags, slant).
std::vector<Chamber> enumerate_chambers(std::size_t n, const std::optional<Rational>& eps = std::nullopt);

/// Closed formula: step 0: 1; 1 <= k <= n-1: C(n,k)+...+C(n,0); k = n: C(n,n)+...+C(n,1).
std::vector<zlin::Integer> chamber_step_counts(std::size_t n);

/// A vertex of the chamber quiver is a chamber piece R(k, a) of the periodic
/// arrangement {y_i = eps + Z}, {sum y in Z}:
/// eps + k_i - 1 < y_i < eps + k_i and a < sum y < a + 1.
struct QuiverVertex {
  Chamber chamber;        // the cube chamber this piece is a translate of
  IntVector lift_k;
  long lift_a = 0;
  bool duplicate = false; // lies outside the cube (n = 1 boundary copy)
  IntVector translation;  // offset from the base lift of its torus chamber
  PicMonomial label;
  friend bool operator==(const QuiverVertex&, const QuiverVertex&) = default;
};

struct QuiverEdge {
  std::size_t source = 0;  // higher step
  std::size_t target = 0;  // lower step
  std::size_t wall = 0;    // i < n: wall y_i = eps + Z; n: wall sum y in Z
  std::size_t edge_class = 0;
  PicMonomial label;
  friend bool operator==(const QuiverEdge&, const QuiverEdge&) = default;
};

struct ChamberQuiver {
  std::size_t n = 0;
  std::vector<QuiverVertex> vertices;
  std::vector<QuiverEdge> edges;
  std::vector<std::string> generator_names;  // display names for labels

  std::size_t center() const;
  friend bool operator==(const ChamberQuiver&, const ChamberQuiver&) = default;
};

/// Base lift of the torus chamber of the given step: slant 0 and S on the
/// last `step` coordinates.
IntVector base_lift(std::size_t n, std::size_t step);

/// Quiver on the cube pieces (plus the boundary duplicate for n = 1). A piece
/// translated by v from its base lift gets label rho(frame * v)^-1 where rho is
/// the monodromy of beta = id with Ikari columns `pic`. An empty pic gives the
/// untwisted quiver.
ChamberQuiver chamber_quiver_in_frame(std::size_t n, const std::vector<PicMonomial>& pic,
                                      const zlin::IntMatrix& frame);
ChamberQuiver chamber_quiver(std::size_t n, const std::vector<PicMonomial>& pic = {});

/// Labels obtained by transporting the center's unit label along every simple
/// undirected path, multiplying by the per-edge monodromy increment. Returns
/// the label of each vertex if all paths agree, std::nullopt otherwise.
std::optional<std::vector<PicMonomial>> transport_labels(const ChamberQuiver& q,
                                                         const picsym::MonodromyData& monodromy,
                                                         const zlin::IntMatrix& frame);

bool is_acyclic(const ChamberQuiver& q);
std::size_t longest_path_length(const ChamberQuiver& q);

nlohmann::json to_json(const std::vector<SkeletonComponent>& components, std::size_t rank);
std::vector<SkeletonComponent> components_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ChamberQuiver& q);
ChamberQuiver quiver_from_json(const nlohmann::json& j);
std::string to_dot(const ChamberQuiver& q);

/// SVG of the chamber pieces for n in {1, 2}; throws UnsupportedError otherwise.
std::string emit_svg(const ChamberQuiver& q);
/// SVG of skeleton components on the torus for rank 1 or 2.
std::string emit_svg(const std::vector<SkeletonComponent>& components, std::size_t rank);

}  // namespace ccc::skeleton
