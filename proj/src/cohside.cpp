#include "ccc/cohside.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <string>

namespace ccc::cohside {

using zlin::Rational;
using zlin::RatMatrix;

Integer GradedDims::total() const {
  Integer t = 0;
  for (const auto& d : dims) t += d;
  return t;
}

namespace {

template <typename V>
Rational pair_with(const IntVector& a, const V& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

IntVector sum_of(std::size_t rank, const std::vector<IntVector>& vs) {
  IntVector s(rank, Integer(0));
  for (const auto& v : vs)
    for (std::size_t i = 0; i < rank; ++i) s[i] += v[i];
  return s;
}

// Per-coordinate radius r_i such that every x with <x, c> >= 0 for all c and
// <x, w> <= 1 has |x_i| <= r_i: the polytope's vertices are 0 and y / <y, w>
// for the extreme rays y of the dual cone.
std::vector<Rational> unit_radius(std::size_t rank, const std::vector<IntVector>& ineq, const IntVector& w) {
  std::vector<Rational> r(rank, Rational(0));
  if (rank == 0) return r;
  fans::Cone c(rank, ineq);
  if (!c.is_full_dimensional()) throw UnsupportedError("graded piece is infinite: defining cone is not full-dimensional");
  fans::Cone dual = fans::dual_cone(c);
  for (const auto& y : dual.generators()) {
    Rational wy = pair_with(y, w);
    if (wy <= 0) throw UnsupportedError("grading weight is not positive on the monoid");
    for (std::size_t i = 0; i < rank; ++i) {
      Rational cand = Rational(abs(y[i])) / wy;
      if (cand > r[i]) r[i] = cand;
    }
  }
  return r;
}

// Lattice points q in the box |q_i + shift_i| <= radius_i.
void for_each_in_box(const std::vector<Rational>& shift, const std::vector<Rational>& radius,
                     const std::function<void(const IntVector&)>& f) {
  const std::size_t k = radius.size();
  IntVector lo(k), hi(k);
  for (std::size_t i = 0; i < k; ++i) {
    lo[i] = -zlin::floor(radius[i] + shift[i]);
    hi[i] = zlin::floor(radius[i] - shift[i]);
    if (lo[i] > hi[i]) return;
  }
  IntVector q = lo;
  for (;;) {
    f(q);
    std::size_t i = 0;
    while (i < k && q[i] == hi[i]) {
      q[i] = lo[i];
      ++i;
    }
    if (i == k) return;
    q[i] += 1;
  }
}

// Saturated basis B of span(gens) and the coordinates c with g = B c.
struct Reduction {
  IntMatrix basis;
  std::vector<IntVector> coords;
  RatMatrix left_inverse;  // (B^T B)^-1 B^T
};

Reduction reduce_to_span(std::size_t n, const std::vector<IntVector>& gens) {
  Reduction r;
  r.basis = zlin::saturated_column_basis(zlin::from_columns(n, gens));
  const std::size_t k = r.basis.cols();
  RatMatrix b = zlin::to_rational(r.basis);
  if (k > 0) r.left_inverse = zlin::inverse(b.transpose() * b) * b.transpose();
  for (const auto& g : gens) {
    RatVector gv(g.begin(), g.end());
    RatVector c = k > 0 ? r.left_inverse * gv : RatVector{};
    IntVector ci;
    for (const auto& x : c) {
      if (x.get_den() != 1) throw std::logic_error("generator not integral in saturated basis");
      ci.push_back(x.get_num());
    }
    r.coords.push_back(ci);
  }
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------

AffineMonoid::AffineMonoid(std::size_t rank, std::vector<IntVector> inequalities)
    : rank_(rank), ineq_(std::move(inequalities)) {
  weight_ = sum_of(rank_, ineq_);
  auto r = unit_radius(rank_, ineq_, weight_);
  box_.clear();
  for (const auto& x : r) box_.push_back(zlin::floor(x) + 1);
}

bool AffineMonoid::contains(const IntVector& q) const {
  return std::all_of(ineq_.begin(), ineq_.end(), [&](const IntVector& c) { return pair_with(c, q) >= 0; });
}

Integer AffineMonoid::weight_of(const IntVector& q) const { return pair_with(weight_, q).get_num(); }

std::vector<IntVector> AffineMonoid::elements_up_to(std::size_t bound) const {
  std::vector<IntVector> out;
  std::vector<Rational> radius, shift(rank_, Rational(0));
  for (const auto& b : box_) radius.push_back(Rational(b * static_cast<long>(bound)));
  for_each_in_box(shift, radius, [&](const IntVector& q) {
    if (contains(q) && weight_of(q) <= static_cast<long>(bound)) out.push_back(q);
  });
  std::sort(out.begin(), out.end());
  return out;
}

Character GammaCategory::project(const IntVector& q) const {
  if (!projection) return Character{};
  return projection->project(q);
}

std::vector<Character> GammaCategory::objects() const { return zlin::elements(group); }

Character GammaCategory::zero() const {
  return Character{IntVector(group.invariant_factors().size(), Integer(0))};
}

GammaCategory gamma_category(const IntMatrix& beta, const fans::Cone& sigma_hat) {
  if (beta.cols() != sigma_hat.ambient_rank()) throw fans::FanError("beta does not match the cone's lattice");
  if (!sigma_hat.is_strictly_convex()) throw fans::FanError("cone is not strictly convex");
  if (!zlin::cokernel(beta).is_finite()) throw fans::FanError("beta has infinite cokernel");
  if (fans::image_cone(beta, sigma_hat).dimension() != sigma_hat.dimension())
    throw fans::FanError("beta collapses the cone");
  GammaCategory g;
  g.beta = beta;
  const bool square = beta.rows() == beta.cols();
  if (!square) throw UnsupportedError("Gamma category needs rank L = rank N");
  if (sigma_hat.is_full_dimensional()) {
    g.monoid = AffineMonoid(beta.cols(), sigma_hat.generators());
    g.projection.emplace(beta.transpose());
    g.group = g.projection->group();
    return g;
  }
  if (abs(zlin::determinant(beta)) != 1)
    throw UnsupportedError("torsion characters for the non-full-dimensional cone " + sigma_hat.to_string() +
                           " are not supported");
  auto red = reduce_to_span(beta.cols(), sigma_hat.generators());
  g.monoid = AffineMonoid(red.basis.cols(), red.coords);
  g.reduced = true;
  return g;
}

GammaCategory gamma_category(const fans::StackyFan& sf) {
  if (sf.fan_hat.maximal_cones().size() != 1) throw UnsupportedError("Gamma category needs an affine stacky fan");
  return gamma_category(sf.beta, sf.fan_hat.maximal_cones().front());
}

GradedDims hom_graded(const GammaCategory& g, const Character& chi, const Character& chi2, std::size_t bound) {
  const Character target = zlin::add(g.group, chi2, zlin::negate(g.group, chi));
  GradedDims out;
  out.dims.assign(bound + 1, Integer(0));
  for (const auto& q : g.monoid.elements_up_to(bound))
    if (g.project(q) == target) out.dims[g.monoid.weight_of(q).get_ui()] += 1;
  return out;
}

std::vector<Integer> cyclic_quiver_paths(std::size_t n, std::size_t i, std::size_t j, std::size_t bound) {
  if (n == 0 || i >= n || j >= n) throw std::invalid_argument("cyclic quiver vertices must lie in [0, n)");
  std::vector<Integer> walks(n, Integer(0));
  walks[i] = 1;
  std::vector<Integer> out;
  for (std::size_t len = 0; len <= bound; ++len) {
    out.push_back(walks[j]);
    std::vector<Integer> next(n, Integer(0));
    for (std::size_t v = 0; v < n; ++v) next[(v + 1) % n] += walks[v];
    walks = std::move(next);
  }
  return out;
}

GradedDims isotypic_component(const GammaCategory& g, const Character& chi, std::size_t bound) {
  GradedDims out;
  out.dims.assign(bound + 1, Integer(0));
  for (const auto& q : g.monoid.elements_up_to(bound)) {
    if (!(g.project(q) == chi)) continue;
    out.dims[g.monoid.weight_of(q).get_ui()] += 1;
  }
  return out;
}

GradedDims costandard_stalk(const fans::Cone& sigma, const RatVector& chi, const IntVector& weight,
                            std::size_t bound) {
  const std::size_t n = sigma.ambient_rank();
  if (chi.size() != n || weight.size() != n) throw std::invalid_argument("costandard_stalk: dimension mismatch");
  GradedDims out;
  auto red = reduce_to_span(n, sigma.generators());
  const std::size_t k = red.basis.cols();
  // Coordinates on M / sigma^perp: x = B^T (chi + m).
  RatVector x0(k);
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t r = 0; r < n; ++r) x0[c] += red.basis(r, c) * chi[r];
  RatVector wv(weight.begin(), weight.end());
  RatVector wc = k > 0 ? red.left_inverse * wv : RatVector{};
  IntVector wi;
  for (const auto& x : wc) {
    if (x.get_den() != 1) throw std::invalid_argument("costandard_stalk: weight is not in the lattice span of the cone");
    wi.push_back(x.get_num());
  }
  // Degree of x0 + q differs from <x0, w> by an integer.
  if (pair_with(wi, x0).get_den() != 1) {
    out.incompatible = true;
    return out;
  }
  out.dims.assign(bound + 1, Integer(0));
  auto radius = unit_radius(k, red.coords, wi);
  for (auto& r : radius) r *= static_cast<long>(bound);
  for_each_in_box(x0, radius, [&](const IntVector& q) {
    RatVector x(k);
    for (std::size_t i = 0; i < k; ++i) x[i] = x0[i] + q[i];
    for (const auto& c : red.coords)
      if (pair_with(c, x) < 0) return;
    Rational deg = pair_with(wi, x);
    if (deg <= static_cast<long>(bound)) out.dims[deg.get_num().get_ui()] += 1;
  });
  return out;
}

bool KappaReport::ok() const {
  if (!bijective) return false;
  return std::all_of(entries.begin(), entries.end(), [](const KappaEntry& e) {
    return !e.stalk.incompatible && e.stalk == e.isotypic;
  });
}

KappaReport kappa_check(const IntMatrix& beta, const fans::Cone& sigma_hat, std::size_t bound) {
  GammaCategory g = gamma_category(beta, sigma_hat);
  fans::Cone sigma = fans::image_cone(beta, sigma_hat);
  IntVector w = beta * sum_of(beta.cols(), sigma_hat.generators());
  const std::size_t n = beta.rows();
  std::vector<RatVector> points;
  if (g.reduced) {
    points.push_back(RatVector(n));
  } else {
    RatMatrix super = zlin::inverse(zlin::to_rational(beta.transpose()));
    points = zlin::character_quotient(super, RatMatrix::identity(n)).representatives;
  }
  KappaReport report;
  std::set<Character> hit;
  RatMatrix bt = zlin::to_rational(beta.transpose());
  for (const auto& p : points) {
    KappaEntry e;
    e.point = p;
    if (g.reduced) {
      e.character = g.zero();
    } else {
      RatVector u = bt * p;
      IntVector ui;
      for (const auto& x : u) {
        if (x.get_den() != 1) throw std::logic_error("torsion point does not map into L^v");
        ui.push_back(x.get_num());
      }
      e.character = g.project(ui);
    }
    hit.insert(e.character);
    e.stalk = costandard_stalk(sigma, p, w, bound);
    e.isotypic = isotypic_component(g, e.character, bound);
    report.entries.push_back(std::move(e));
  }
  report.bijective = hit.size() == points.size() && Integer(points.size()) == g.group.torsion_order();
  return report;
}

// ---------------------------------------------------------------------------

LineBundleCohomology pn_line_bundle_cohomology(std::size_t n, long d, std::size_t box_bound) {
  if (n == 0) throw std::invalid_argument("P^n needs n >= 1");
  if (static_cast<long>(box_bound) < std::abs(d))
    throw UnsupportedError("box bound " + std::to_string(box_bound) + " truncates the characters of O(" +
                           std::to_string(d) + "); need at least " + std::to_string(std::abs(d)));
  const fans::Fan fan = fans::standard_fan({fans::FanKind::Pn, n, 0});
  const fans::CechNerve nerve = fans::cech_nerve(fan);
  const IntVector rho0(n, Integer(-1));
  // Simplices grouped by size; index lookup by vertex set.
  std::vector<std::vector<const fans::CechSimplex*>> by_size(n + 2);
  for (const auto& s : nerve.simplices) by_size[s.vertices.size()].push_back(&s);

  LineBundleCohomology out;
  out.h.assign(n + 1, Integer(0));
  const long r = static_cast<long>(box_bound);
  IntVector m(n, Integer(-r));
  for (;;) {
    // Sections of O(d D_0) over U_tau in degree m: <m, rho> >= -a_rho for rays of tau.
    auto supported = [&](const fans::CechSimplex& s) {
      for (const auto& g : s.intersection.generators()) {
        Integer pairing = 0;
        for (std::size_t i = 0; i < n; ++i) pairing += g[i] * m[i];
        const long a = g == rho0 ? d : 0;
        if (pairing < -a) return false;
      }
      return true;
    };
    std::vector<std::vector<const fans::CechSimplex*>> live(n + 2);
    for (std::size_t p = 1; p <= n + 1; ++p)
      for (auto* s : by_size[p])
        if (supported(*s)) live[p].push_back(s);
    // d^p : C^p -> C^{p+1}, C^p spanned by live simplices of size p+1.
    std::vector<std::size_t> ranks(n + 2, 0);
    for (std::size_t p = 1; p <= n; ++p) {
      const auto& src = live[p];
      const auto& dst = live[p + 1];
      if (src.empty() || dst.empty()) continue;
      RatMatrix mat(dst.size(), src.size());
      for (std::size_t a = 0; a < dst.size(); ++a) {
        const auto& verts = dst[a]->vertices;
        for (std::size_t j = 0; j < verts.size(); ++j) {
          std::vector<std::size_t> face;
          for (std::size_t t = 0; t < verts.size(); ++t)
            if (t != j) face.push_back(verts[t]);
          for (std::size_t b = 0; b < src.size(); ++b)
            if (src[b]->vertices == face) mat(a, b) = (j % 2 == 0) ? 1 : -1;
        }
      }
      ranks[p] = zlin::rank(mat);
    }
    for (std::size_t p = 0; p <= n; ++p) {
      const long dim = static_cast<long>(live[p + 1].size());
      const long outgoing = static_cast<long>(p + 1 <= n ? ranks[p + 1] : 0);
      const long incoming = static_cast<long>(p >= 1 ? ranks[p] : 0);
      out.h[p] += dim - outgoing - incoming;
    }
    std::size_t i = 0;
    while (i < n && m[i] == r) m[i++] = -r;
    if (i == n) break;
    m[i] += 1;
  }
  return out;
}

Integer euler_pairing_coherent(std::size_t n, long a, long b) {
  const long d = b - a;
  auto coh = pn_line_bundle_cohomology(n, d, static_cast<std::size_t>(std::abs(d)));
  Integer chi = 0;
  for (std::size_t i = 0; i < coh.h.size(); ++i) chi += (i % 2 == 0) ? coh.h[i] : Integer(-coh.h[i]);
  return chi;
}

}  // namespace ccc::cohside
