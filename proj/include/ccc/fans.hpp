#pragma once

// Rational polyhedral cones, fans, stacky fans and the Cech nerve of the
// maximal-cone cover of a fan.

#include <json.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccc/zlin.hpp"

namespace ccc::fans {

using zlin::Integer;
using zlin::IntMatrix;
using zlin::IntVector;
using zlin::RatVector;

class FanError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Polyhedral cone spanned by integer vectors. Generators are stored
/// primitive, duplicate-free and sorted lexicographically; for strictly
/// convex cones they are exactly the extreme rays.
class Cone {
 public:
  Cone() = default;
  /// The zero cone in Z^ambient_rank.
  explicit Cone(std::size_t ambient_rank);
  Cone(std::size_t ambient_rank, std::vector<IntVector> generators);

  std::size_t ambient_rank() const { return ambient_; }
  const std::vector<IntVector>& generators() const { return gens_; }
  std::size_t dimension() const { return dim_; }
  bool is_zero() const { return gens_.empty(); }
  bool is_strictly_convex() const;
  bool is_full_dimensional() const { return dim_ == ambient_; }

  bool contains(const IntVector& x) const;
  bool contains(const RatVector& x) const;
  bool contains(const Cone& other) const;
  /// True if x satisfies every defining inequality strictly (relative
  /// interior of a full-dimensional cone).
  bool contains_in_interior(const RatVector& x) const;

  /// Extreme rays of the dual cone modulo its lineality space, and a lattice
  /// basis of that lineality space (the dual contains +-b for each b).
  const std::vector<IntVector>& dual_rays() const { return dual_rays_; }
  const std::vector<IntVector>& dual_lineality() const { return dual_lin_; }

  std::string to_string() const;

  friend bool operator==(const Cone& a, const Cone& b);
  /// Canonical order: dimension, then generator list.
  friend bool operator<(const Cone& a, const Cone& b);

 private:
  std::size_t ambient_ = 0;
  std::size_t dim_ = 0;
  std::vector<IntVector> gens_;
  std::vector<IntVector> dual_rays_;
  std::vector<IntVector> dual_lin_;
};

Cone dual_cone(const Cone& c);
Cone intersect(const Cone& a, const Cone& b);
bool is_face_of(const Cone& face, const Cone& c);
bool is_smooth_cone(const Cone& c);

struct FaceLattice {
  std::vector<Cone> faces;              // canonical order
  std::vector<std::vector<bool>> leq;   // leq[i][j]: faces[i] is a face of faces[j]
};

FaceLattice faces(const Cone& c);

class Fan {
 public:
  Fan() = default;
  std::size_t ambient_rank() const { return ambient_; }
  /// All cones, canonical order; the zero cone comes first.
  const std::vector<Cone>& cones() const { return cones_; }
  const std::vector<Cone>& maximal_cones() const { return maximal_; }
  std::vector<Cone> rays() const;
  bool is_smooth() const;
  /// Index of c in cones(), or cones().size() if absent.
  std::size_t index_of(const Cone& c) const;

  friend bool operator==(const Fan&, const Fan&) = default;
  friend Fan fan_from_max_cones(std::size_t ambient_rank, const std::vector<Cone>& maximal);

 private:
  std::size_t ambient_ = 0;
  std::vector<Cone> cones_;
  std::vector<Cone> maximal_;
};

/// Throws FanError naming the offending pair when two cones overlap
/// improperly or a cone is not strictly convex.
Fan fan_from_max_cones(std::size_t ambient_rank, const std::vector<Cone>& maximal);

enum class FanKind { Pn, AkGm, Point };
struct FanSpec {
  FanKind kind = FanKind::Point;
  std::size_t n = 0;  // projective dimension / ambient rank
  std::size_t k = 0;  // cone dimension for AkGm
};
Fan standard_fan(const FanSpec& spec);

struct CechSimplex {
  std::vector<std::size_t> vertices;  // indices into Fan::maximal_cones(), increasing
  Cone intersection;
};

struct CechNerve {
  std::size_t vertex_count = 0;
  std::vector<CechSimplex> simplices;  // ordered by size, then lexicographically
  std::size_t count_of_size(std::size_t k) const;
};

CechNerve cech_nerve(const Fan& f);

/// beta : L -> N as an (rank N) x (rank L) matrix. fan_hat lives in L_R,
/// fan in N_R.
struct StackyFan {
  IntMatrix beta;
  Fan fan_hat;
  Fan fan;
};

/// Builds the stacky fan whose fan is the image of fan_hat under beta.
StackyFan make_stacky(const IntMatrix& beta, const Fan& fan_hat);
/// Non-stacky fan: beta is the identity.
StackyFan trivial_stacky(const Fan& f);
bool validate_stacky(const StackyFan& sf);

Cone image_cone(const IntMatrix& beta, const Cone& c);

/// JSON fan schema {"rank": n, "max_cones": [[[v]...]...], "beta": [[...]]}.
/// max_cones are cones of fan_hat (in L); beta defaults to the identity.
StackyFan stacky_from_json(const nlohmann::json& j);
nlohmann::json to_json(const StackyFan& sf);
nlohmann::json to_json(const Cone& c);

}  // namespace ccc::fans
