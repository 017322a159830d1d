#include "ccc/fans.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace ccc::fans {

using zlin::RatMatrix;
using zlin::Rational;

namespace {

Integer dot(const IntVector& a, const IntVector& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(const IntVector& a, const RatVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool is_zero_vector(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

RatMatrix rows_matrix(std::size_t n, const std::vector<IntVector>& rows) {
  RatMatrix m(rows.size(), n);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = rows[r][c];
  return m;
}

std::size_t vector_rank(std::size_t n, const std::vector<IntVector>& vs) {
  if (vs.empty()) return 0;
  return zlin::rank(rows_matrix(n, vs));
}

// Lattice basis of {y : g.y = 0 for all g}.
std::vector<IntVector> orthogonal_lattice(std::size_t n, const std::vector<IntVector>& gens) {
  std::vector<IntVector> basis;
  if (gens.empty()) {
    for (std::size_t i = 0; i < n; ++i) {
      IntVector e(n, Integer(0));
      e[i] = 1;
      basis.push_back(e);
    }
    return basis;
  }
  auto ns = zlin::null_space(rows_matrix(n, gens));
  if (ns.empty()) return basis;
  std::vector<IntVector> cols;
  for (const auto& v : ns) cols.push_back(zlin::primitive(v));
  IntMatrix sat = zlin::saturated_column_basis(zlin::from_columns(n, cols));
  for (std::size_t c = 0; c < sat.cols(); ++c) basis.push_back(sat.column(c));
  return basis;
}

void for_each_subset(std::size_t m, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > m) return;
  for (;;) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<IntVector> canonical_set(std::vector<IntVector> vs) {
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

}  // namespace

Cone::Cone(std::size_t ambient_rank) : Cone(ambient_rank, {}) {}

Cone::Cone(std::size_t ambient_rank, std::vector<IntVector> generators) : ambient_(ambient_rank) {
  std::vector<IntVector> gens;
  for (auto& g : generators) {
    if (g.size() != ambient_) throw FanError("cone generator has wrong length");
    if (is_zero_vector(g)) continue;
    gens.push_back(zlin::primitive(g));
  }
  gens = canonical_set(std::move(gens));
  dim_ = vector_rank(ambient_, gens);

  // Dual: lineality = span(gens)^perp; pointed part inside span(gens), whose
  // extreme rays have dim-1 independent tight generators.
  dual_lin_ = orthogonal_lattice(ambient_, gens);
  std::vector<IntVector> rays;
  if (dim_ > 0) {
    for_each_subset(gens.size(), dim_ - 1, [&](const std::vector<std::size_t>& s) {
      std::vector<IntVector> eqs = dual_lin_;
      for (auto i : s) eqs.push_back(gens[i]);
      if (vector_rank(ambient_, eqs) != ambient_ - 1) return;
      auto ns = zlin::null_space(rows_matrix(ambient_, eqs));
      IntVector y = zlin::primitive(ns.at(0));
      bool pos = true, neg = true;
      for (const auto& g : gens) {
        Integer v = dot(g, y);
        if (v < 0) pos = false;
        if (v > 0) neg = false;
      }
      if (pos == neg) return;
      if (neg)
        for (auto& x : y) x = -x;
      rays.push_back(std::move(y));
    });
  }
  dual_rays_ = canonical_set(std::move(rays));

  if (is_strictly_convex()) {
    // Keep only extreme rays: tight dual rays of rank dim-1.
    std::vector<IntVector> extreme;
    for (const auto& g : gens) {
      std::vector<IntVector> tight;
      for (const auto& y : dual_rays_)
        if (dot(g, y) == 0) tight.push_back(y);
      if (vector_rank(ambient_, tight) == dim_ - 1) extreme.push_back(g);
    }
    gens = std::move(extreme);
  }
  gens_ = std::move(gens);
}

bool Cone::is_strictly_convex() const {
  std::vector<IntVector> all = dual_rays_;
  all.insert(all.end(), dual_lin_.begin(), dual_lin_.end());
  return vector_rank(ambient_, all) == ambient_;
}

bool Cone::contains(const IntVector& x) const {
  if (x.size() != ambient_) throw FanError("vector has wrong length for cone");
  for (const auto& b : dual_lin_)
    if (dot(b, x) != 0) return false;
  for (const auto& y : dual_rays_)
    if (dot(y, x) < 0) return false;
  return true;
}

bool Cone::contains(const RatVector& x) const {
  if (x.size() != ambient_) throw FanError("vector has wrong length for cone");
  for (const auto& b : dual_lin_)
    if (dot(b, x) != 0) return false;
  for (const auto& y : dual_rays_)
    if (dot(y, x) < 0) return false;
  return true;
}

bool Cone::contains(const Cone& other) const {
  if (other.ambient_ != ambient_) return false;
  return std::all_of(other.gens_.begin(), other.gens_.end(), [&](const IntVector& g) { return contains(g); });
}

bool Cone::contains_in_interior(const RatVector& x) const {
  if (!contains(x)) return false;
  for (const auto& y : dual_rays_)
    if (dot(y, x) == 0) return false;
  return true;
}

std::string Cone::to_string() const {
  std::ostringstream os;
  os << "cone(";
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (i) os << ", ";
    os << '(';
    for (std::size_t j = 0; j < gens_[i].size(); ++j) os << (j ? "," : "") << gens_[i][j];
    os << ')';
  }
  os << ")";
  return os.str();
}

bool operator==(const Cone& a, const Cone& b) {
  if (a.ambient_ != b.ambient_ || a.dim_ != b.dim_) return false;
  if (a.gens_ == b.gens_) return true;
  return a.contains(b) && b.contains(a);
}

bool operator<(const Cone& a, const Cone& b) {
  if (a.dim_ != b.dim_) return a.dim_ < b.dim_;
  return a.gens_ < b.gens_;
}

Cone dual_cone(const Cone& c) {
  std::vector<IntVector> gens = c.dual_rays();
  for (const auto& b : c.dual_lineality()) {
    gens.push_back(b);
    IntVector neg(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) neg[i] = -b[i];
    gens.push_back(neg);
  }
  return Cone(c.ambient_rank(), std::move(gens));
}

Cone intersect(const Cone& a, const Cone& b) {
  if (a.ambient_rank() != b.ambient_rank()) throw FanError("intersecting cones of different ambient rank");
  Cone da = dual_cone(a), db = dual_cone(b);
  std::vector<IntVector> gens = da.generators();
  gens.insert(gens.end(), db.generators().begin(), db.generators().end());
  return dual_cone(Cone(a.ambient_rank(), std::move(gens)));
}

bool is_face_of(const Cone& face, const Cone& c) {
  if (!c.contains(face)) return false;
  // Smallest face of c containing `face`: cut out by the dual rays that vanish on it.
  std::vector<IntVector> tight;
  for (const auto& y : c.dual_rays())
    if (std::all_of(face.generators().begin(), face.generators().end(),
                    [&](const IntVector& g) { return dot(g, y) == 0; }))
      tight.push_back(y);
  std::vector<IntVector> gens;
  for (const auto& g : c.generators())
    if (std::all_of(tight.begin(), tight.end(), [&](const IntVector& y) { return dot(g, y) == 0; }))
      gens.push_back(g);
  return Cone(c.ambient_rank(), gens) == face;
}

bool is_smooth_cone(const Cone& c) {
  if (!c.is_strictly_convex()) return false;
  if (c.generators().size() != c.dimension()) return false;
  if (c.is_zero()) return true;
  auto snf = zlin::smith_normal_form(zlin::from_columns(c.ambient_rank(), c.generators()));
  auto d = snf.diagonal();
  return std::all_of(d.begin(), d.end(), [](const Integer& x) { return x == 1; });
}

FaceLattice faces(const Cone& c) {
  const auto& rays = c.dual_rays();
  const auto& gens = c.generators();
  std::set<std::vector<std::size_t>> seen;
  FaceLattice out;
  if (rays.size() > 20) throw FanError("too many facets for face enumeration");
  for (std::size_t mask = 0; mask < (std::size_t{1} << rays.size()); ++mask) {
    std::vector<std::size_t> tight;
    for (std::size_t g = 0; g < gens.size(); ++g) {
      bool ok = true;
      for (std::size_t r = 0; r < rays.size() && ok; ++r)
        if ((mask >> r) & 1) ok = dot(gens[g], rays[r]) == 0;
      if (ok) tight.push_back(g);
    }
    if (!seen.insert(tight).second) continue;
    std::vector<IntVector> fg;
    for (auto g : tight) fg.push_back(gens[g]);
    out.faces.emplace_back(c.ambient_rank(), fg);
  }
  std::sort(out.faces.begin(), out.faces.end());
  const std::size_t n = out.faces.size();
  out.leq.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.leq[i][j] = out.faces[j].contains(out.faces[i]);
  return out;
}

// ---------------------------------------------------------------------------

std::vector<Cone> Fan::rays() const {
  std::vector<Cone> r;
  for (const auto& c : cones_)
    if (c.dimension() == 1) r.push_back(c);
  return r;
}

bool Fan::is_smooth() const {
  return std::all_of(maximal_.begin(), maximal_.end(), [](const Cone& c) { return is_smooth_cone(c); });
}

std::size_t Fan::index_of(const Cone& c) const {
  for (std::size_t i = 0; i < cones_.size(); ++i)
    if (cones_[i] == c) return i;
  return cones_.size();
}

Fan fan_from_max_cones(std::size_t ambient_rank, const std::vector<Cone>& maximal) {
  for (std::size_t i = 0; i < maximal.size(); ++i) {
    if (maximal[i].ambient_rank() != ambient_rank)
      throw FanError("cone " + std::to_string(i) + " has ambient rank " +
                     std::to_string(maximal[i].ambient_rank()) + ", expected " + std::to_string(ambient_rank));
    if (!maximal[i].is_strictly_convex())
      throw FanError("cone " + std::to_string(i) + " " + maximal[i].to_string() + " is not strictly convex");
  }
  for (std::size_t i = 0; i < maximal.size(); ++i)
    for (std::size_t j = i + 1; j < maximal.size(); ++j) {
      Cone meet = intersect(maximal[i], maximal[j]);
      if (!is_face_of(meet, maximal[i]) || !is_face_of(meet, maximal[j]))
        throw FanError("cones " + std::to_string(i) + " and " + std::to_string(j) + " (" + maximal[i].to_string() +
                       ", " + maximal[j].to_string() + ") overlap: their intersection is not a common face");
    }
  Fan f;
  f.ambient_ = ambient_rank;
  std::vector<Cone> all{Cone(ambient_rank)};
  for (const auto& m : maximal) {
    auto fl = faces(m);
    all.insert(all.end(), fl.faces.begin(), fl.faces.end());
  }
  std::sort(all.begin(), all.end());
  for (const auto& c : all)
    if (f.cones_.empty() || !(f.cones_.back() == c)) f.cones_.push_back(c);
  for (std::size_t i = 0; i < f.cones_.size(); ++i) {
    bool is_max = true;
    for (std::size_t j = 0; j < f.cones_.size() && is_max; ++j)
      if (j != i && f.cones_[j].dimension() > f.cones_[i].dimension() && f.cones_[j].contains(f.cones_[i]))
        is_max = false;
    if (is_max) f.maximal_.push_back(f.cones_[i]);
  }
  return f;
}

Fan standard_fan(const FanSpec& spec) {
  switch (spec.kind) {
    case FanKind::Point:
      return fan_from_max_cones(0, {});
    case FanKind::Pn: {
      const std::size_t n = spec.n;
      if (n == 0) throw FanError("projective space needs n >= 1");
      std::vector<IntVector> rays;
      for (std::size_t i = 0; i < n; ++i) {
        IntVector e(n, Integer(0));
        e[i] = 1;
        rays.push_back(e);
      }
      rays.push_back(IntVector(n, Integer(-1)));
      std::vector<Cone> maxes;
      for (std::size_t skip = 0; skip <= n; ++skip) {
        std::vector<IntVector> g;
        for (std::size_t i = 0; i <= n; ++i)
          if (i != skip) g.push_back(rays[i]);
        maxes.emplace_back(n, g);
      }
      return fan_from_max_cones(n, maxes);
    }
    case FanKind::AkGm: {
      if (spec.k > spec.n) throw FanError("A^k x G_m^(n-k) needs k <= n");
      std::vector<IntVector> g;
      for (std::size_t i = 0; i < spec.k; ++i) {
        IntVector e(spec.n, Integer(0));
        e[i] = 1;
        g.push_back(e);
      }
      return fan_from_max_cones(spec.n, {Cone(spec.n, g)});
    }
  }
  throw FanError("unknown fan kind");
}

std::size_t CechNerve::count_of_size(std::size_t k) const {
  return static_cast<std::size_t>(std::count_if(simplices.begin(), simplices.end(),
                                                [k](const CechSimplex& s) { return s.vertices.size() == k; }));
}

CechNerve cech_nerve(const Fan& f) {
  CechNerve nerve;
  const auto& maxes = f.maximal_cones();
  nerve.vertex_count = maxes.size();
  for (std::size_t k = 1; k <= maxes.size(); ++k)
    for_each_subset(maxes.size(), k, [&](const std::vector<std::size_t>& s) {
      Cone meet = maxes[s[0]];
      for (std::size_t i = 1; i < s.size(); ++i) meet = intersect(meet, maxes[s[i]]);
      nerve.simplices.push_back({s, meet});
    });
  return nerve;
}

// ---------------------------------------------------------------------------

Cone image_cone(const IntMatrix& beta, const Cone& c) {
  std::vector<IntVector> gens;
  for (const auto& g : c.generators()) gens.push_back(beta * g);
  return Cone(beta.rows(), gens);
}

StackyFan make_stacky(const IntMatrix& beta, const Fan& fan_hat) {
  if (beta.cols() != fan_hat.ambient_rank()) throw FanError("beta does not match the rank of the fan");
  std::vector<Cone> images;
  for (const auto& c : fan_hat.maximal_cones()) images.push_back(image_cone(beta, c));
  return {beta, fan_hat, fan_from_max_cones(beta.rows(), images)};
}

StackyFan trivial_stacky(const Fan& f) { return {IntMatrix::identity(f.ambient_rank()), f, f}; }

bool validate_stacky(const StackyFan& sf) {
  const auto& beta = sf.beta;
  if (beta.cols() != sf.fan_hat.ambient_rank() || beta.rows() != sf.fan.ambient_rank()) return false;
  if (!zlin::cokernel(beta).is_finite()) return false;
  if (sf.fan_hat.cones().size() != sf.fan.cones().size()) return false;
  std::vector<bool> hit(sf.fan.cones().size(), false);
  for (const auto& c : sf.fan_hat.cones()) {
    Cone img = image_cone(beta, c);
    if (img.dimension() != c.dimension()) return false;
    std::size_t idx = sf.fan.index_of(img);
    if (idx == sf.fan.cones().size() || hit[idx]) return false;
    hit[idx] = true;
  }
  return true;
}

// ---------------------------------------------------------------------------

namespace {

IntVector int_vector_from_json(const nlohmann::json& j, std::size_t n, const std::string& what) {
  if (!j.is_array() || j.size() != n) throw FanError(what + ": expected an array of " + std::to_string(n) + " integers");
  IntVector v;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw FanError(what + ": entries must be integers");
    v.emplace_back(x.get<long>());
  }
  return v;
}

nlohmann::json vector_to_json(const IntVector& v) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& x : v) a.push_back(x.get_si());
  return a;
}

}  // namespace

StackyFan stacky_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw FanError("fan JSON must be an object");
  if (!j.contains("rank") || !j["rank"].is_number_unsigned()) throw FanError("fan JSON needs a nonnegative integer \"rank\"");
  for (const auto& [key, value] : j.items())
    if (key != "rank" && key != "max_cones" && key != "beta") throw FanError("unknown fan JSON key \"" + key + "\"");
  const std::size_t rank = j["rank"].get<std::size_t>();
  std::vector<Cone> maxes;
  if (j.contains("max_cones")) {
    if (!j["max_cones"].is_array()) throw FanError("\"max_cones\" must be an array");
    std::size_t i = 0;
    for (const auto& c : j["max_cones"]) {
      if (!c.is_array()) throw FanError("max_cones[" + std::to_string(i) + "] must be an array of vectors");
      std::vector<IntVector> gens;
      for (const auto& v : c) gens.push_back(int_vector_from_json(v, rank, "max_cones[" + std::to_string(i) + "]"));
      maxes.emplace_back(rank, gens);
      ++i;
    }
  }
  Fan hat = fan_from_max_cones(rank, maxes);
  if (!j.contains("beta")) return trivial_stacky(hat);
  const auto& b = j["beta"];
  if (!b.is_array() || b.empty()) throw FanError("\"beta\" must be a nonempty array of rows");
  IntMatrix beta(b.size(), rank);
  for (std::size_t r = 0; r < b.size(); ++r) {
    IntVector row = int_vector_from_json(b[r], rank, "beta row " + std::to_string(r));
    for (std::size_t c = 0; c < rank; ++c) beta(r, c) = row[c];
  }
  StackyFan sf = make_stacky(beta, hat);
  if (!validate_stacky(sf)) throw FanError("beta does not define a stacky fan (infinite cokernel or cones collapse)");
  return sf;
}

nlohmann::json to_json(const Cone& c) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& g : c.generators()) a.push_back(vector_to_json(g));
  return a;
}

nlohmann::json to_json(const StackyFan& sf) {
  nlohmann::json j;
  j["rank"] = sf.fan_hat.ambient_rank();
  j["max_cones"] = nlohmann::json::array();
  for (const auto& c : sf.fan_hat.maximal_cones()) j["max_cones"].push_back(to_json(c));
  if (!(sf.beta == IntMatrix::identity(sf.fan_hat.ambient_rank()))) {
    j["beta"] = nlohmann::json::array();
    for (std::size_t r = 0; r < sf.beta.rows(); ++r) j["beta"].push_back(vector_to_json(sf.beta.row(r)));
  }
  return j;
}

}  // namespace ccc::fans
