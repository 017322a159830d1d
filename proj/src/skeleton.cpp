#include "ccc/skeleton.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

namespace ccc::skeleton {

using zlin::Integer;
using zlin::IntMatrix;
using zlin::RatMatrix;

// ---------------------------------------------------------------------------
// Components

std::vector<SkeletonComponent> fltz_components(const fans::StackyFan& sf) {
  const auto& beta = sf.beta;
  const std::size_t n = sf.fan.ambient_rank();
  const bool square = beta.rows() == beta.cols();
  const bool unimodular = square && abs(zlin::determinant(beta)) == 1;
  std::vector<SkeletonComponent> out;
  const auto& cones = sf.fan.cones();
  for (std::size_t i = 0; i < cones.size(); ++i) {
    const auto& tau = cones[i];
    std::vector<IntVector> neg;
    for (const auto& g : tau.generators()) {
      IntVector v(g.size());
      for (std::size_t j = 0; j < g.size(); ++j) v[j] = -g[j];
      neg.push_back(v);
    }
    fans::Cone minus_tau(n, neg);

    std::vector<RatVector> base;
    if (tau.is_zero()) {
      for (std::size_t j = 0; j < n; ++j) {
        RatVector e(n);
        e[j] = 1;
        base.push_back(e);
      }
    } else {
      RatMatrix rows(tau.generators().size(), n);
      for (std::size_t r = 0; r < rows.rows(); ++r)
        for (std::size_t c = 0; c < n; ++c) rows(r, c) = tau.generators()[r][c];
      base = zlin::null_space(rows);
    }

    std::vector<RatVector> chars;
    if (tau.is_zero() || unimodular) {
      chars.push_back(RatVector(n));
    } else if (square && tau.is_full_dimensional()) {
      // M_{tau,beta} = (beta^T)^-1 L^v.
      RatMatrix super = zlin::inverse(zlin::to_rational(beta.transpose()));
      chars = zlin::character_quotient(super, RatMatrix::identity(n)).representatives;
    } else {
      throw UnsupportedError("torsion characters of the non-full-dimensional cone " + tau.to_string() +
                             " of a stacky fan are not supported");
    }
    for (auto& chi : chars) out.push_back({minus_tau, chi, base, i});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Affine strata

AffineStrataPoset strata_poset_affine(const fans::Cone& c) {
  if (!fans::is_smooth_cone(c)) throw UnsupportedError("strata poset needs a smooth cone, got " + c.to_string());
  AffineStrataPoset p;
  const std::size_t k = c.generators().size();
  p.ray_count = k;
  std::size_t total = 1;
  for (std::size_t i = 0; i < k; ++i) total *= 3;
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::vector<Stratum> s(k);
    std::size_t x = idx;
    for (std::size_t i = k; i-- > 0;) {
      s[i] = static_cast<Stratum>(x % 3);
      x /= 3;
    }
    p.strata.push_back(s);
  }
  p.leq.assign(total, std::vector<bool>(total, false));
  for (std::size_t a = 0; a < total; ++a)
    for (std::size_t b = 0; b < total; ++b) {
      bool le = true;
      for (std::size_t i = 0; i < k && le; ++i)
        le = p.strata[a][i] == p.strata[b][i] || p.strata[a][i] == Stratum::c;
      p.leq[a][b] = le;
    }
  for (const auto& s : p.strata) {
    std::size_t mask = 0;
    for (std::size_t i = 0; i < k; ++i)
      if (s[i] != Stratum::c) mask |= std::size_t{1} << i;
    p.collapse.push_back(mask);
  }
  p.quiver_vertex_count = std::size_t{1} << k;
  for (std::size_t m = 0; m < p.quiver_vertex_count; ++m)
    for (std::size_t i = 0; i < k; ++i)
      if (!((m >> i) & 1)) p.quiver_arrows.emplace_back(m, m | (std::size_t{1} << i));
  return p;
}

// ---------------------------------------------------------------------------
// Chambers

Rational default_epsilon(std::size_t n) { return zlin::make_rational(1, 2 * static_cast<long>(n) + 2); }

namespace {

bool open_overlap(const Rational& lo1, const Rational& hi1, const Rational& lo2, const Rational& hi2) {
  return std::max(lo1, lo2) < std::min(hi1, hi2);
}

}  // namespace

std::vector<Chamber> enumerate_chambers(std::size_t n, const std::optional<Rational>& eps_opt) {
  if (n == 0) throw UnsupportedError("chambers need n >= 1");
  if (n > 20) throw UnsupportedError("chamber enumeration limited to n <= 20");
  const Rational eps = eps_opt ? *eps_opt : default_epsilon(n);
  if (eps <= 0 || eps * static_cast<long>(n) >= 1) throw UnsupportedError("epsilon must satisfy 0 < n*eps < 1");
  std::vector<Chamber> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Chamber c;
    for (std::size_t i = 0; i < n; ++i) c.flags.push_back(((mask >> (n - 1 - i)) & 1) ? Flag::L : Flag::S);
    // S: 0 < x_i < eps, L: eps < x_i < 1.
    Rational lo = 0, hi = 0;
    for (Flag f : c.flags) {
      if (f == Flag::S) {
        hi += eps;
      } else {
        lo += eps;
        hi += 1;
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      if (!open_overlap(lo, hi, Rational(static_cast<long>(a)), Rational(static_cast<long>(a) + 1))) continue;
      c.slant = a;
      out.push_back(c);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Integer> chamber_step_counts(std::size_t n) {
  const long nn = static_cast<long>(n);
  std::vector<Integer> counts{1};
  for (long k = 1; k < nn; ++k) {
    Integer s = 0;
    for (long j = 0; j <= k; ++j) s += zlin::binomial(nn, j);
    counts.push_back(s);
  }
  Integer top = 0;
  for (long j = 1; j <= nn; ++j) top += zlin::binomial(nn, j);
  counts.push_back(top);
  return counts;
}

// ---------------------------------------------------------------------------
// Chamber quiver

std::size_t ChamberQuiver::center() const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i].chamber.step() == 0 && !vertices[i].duplicate) return i;
  throw std::logic_error("chamber quiver without center");
}

IntVector base_lift(std::size_t n, std::size_t step) {
  IntVector k(n, Integer(1));
  for (std::size_t i = n - step; i < n; ++i) k[i] = 0;
  return k;
}

namespace {

struct Box {
  std::vector<Rational> lo, hi;
};

long sum_k(const IntVector& k) {
  long s = 0;
  for (const auto& x : k) s += x.get_si();
  return s;
}

std::size_t step_of(const IntVector& k, long a) { return static_cast<std::size_t>(static_cast<long>(k.size()) - (sum_k(k) - a)); }

// Coordinate box of a vertex, clipped to the cube for cube pieces.
Box vertex_box(const QuiverVertex& v, const Rational& eps) {
  Box b;
  for (const auto& ki : v.lift_k) {
    Rational lo = eps + ki - 1, hi = eps + ki;
    if (!v.duplicate) {
      lo = std::max(lo, Rational(0));
      hi = std::min(hi, Rational(1));
    }
    b.lo.push_back(lo);
    b.hi.push_back(hi);
  }
  if (v.duplicate) {
    // The n = 1 boundary copy: (1, 1 + eps).
    b.lo[0] = 1;
  }
  return b;
}

// Shared facet of two regions with the given boxes and slabs, across the
// coordinate wall `wall` (or the slab wall when wall == n).
bool share_facet(const Box& a, long slab_a, const Box& b, long slab_b, std::size_t wall) {
  const std::size_t n = a.lo.size();
  if (wall < n) {
    if (slab_a != slab_b || a.hi[wall] != b.lo[wall]) return false;
    Rational lo = a.hi[wall], hi = a.hi[wall];
    for (std::size_t j = 0; j < n; ++j) {
      if (j == wall) continue;
      Rational l = std::max(a.lo[j], b.lo[j]), h = std::min(a.hi[j], b.hi[j]);
      if (l >= h) return false;
      lo += l;
      hi += h;
    }
    if (n == 1) return slab_a < lo && lo < slab_a + 1;
    return open_overlap(lo, hi, Rational(slab_a), Rational(slab_a + 1));
  }
  // Slab wall sum y = slab_a, with slab_b = slab_a - 1.
  if (slab_b != slab_a - 1) return false;
  Rational lo = 0, hi = 0;
  for (std::size_t j = 0; j < n; ++j) {
    Rational l = std::max(a.lo[j], b.lo[j]), h = std::min(a.hi[j], b.hi[j]);
    if (n == 1) {
      // Regions on either side of the point y = slab_a.
      return a.lo[0] == Rational(slab_a) && b.hi[0] == Rational(slab_a);
    }
    if (l >= h) return false;
    lo += l;
    hi += h;
  }
  return lo < slab_a && slab_a < hi;
}

PicMonomial label_for(const picsym::MonodromyData& md, const IntMatrix& frame, const IntVector& v) {
  return picsym::pic_inv(md.apply(frame * v));
}

IntVector diff(const IntVector& a, const IntVector& b) {
  IntVector d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return d;
}

picsym::MonodromyData monodromy_for(std::size_t n, const std::vector<PicMonomial>& pic) {
  std::vector<PicMonomial> bundles = pic;
  if (bundles.empty()) bundles.assign(n, PicMonomial::unit(n));
  if (bundles.size() != n) throw picsym::PicError("need exactly n Pic generators for the chamber quiver");
  return picsym::monodromy(IntMatrix::identity(n), picsym::ikari_from_bundles(bundles));
}

}  // namespace

ChamberQuiver chamber_quiver_in_frame(std::size_t n, const std::vector<PicMonomial>& pic, const IntMatrix& frame) {
  if (frame.rows() != n || frame.cols() != n) throw std::invalid_argument("frame must be n x n");
  const auto md = monodromy_for(n, pic);
  const Rational eps = default_epsilon(n);
  ChamberQuiver q;
  q.n = n;
  for (std::size_t i = 0; i < md.matrix.rows(); ++i) q.generator_names.push_back("L" + std::to_string(i + 1));

  auto add_vertex = [&](const Chamber& c, IntVector k, long a, bool dup) {
    QuiverVertex v;
    v.chamber = c;
    v.lift_k = std::move(k);
    v.lift_a = a;
    v.duplicate = dup;
    v.translation = diff(v.lift_k, base_lift(n, step_of(v.lift_k, a)));
    v.label = label_for(md, frame, v.translation);
    q.vertices.push_back(std::move(v));
  };
  for (const auto& c : enumerate_chambers(n)) {
    IntVector k;
    for (Flag f : c.flags) k.emplace_back(f == Flag::L ? 1 : 0);
    add_vertex(c, k, static_cast<long>(c.slant), false);
  }
  if (n == 1) add_vertex(Chamber::parse("S", 0), IntVector{1}, 1, true);

  std::vector<Box> boxes;
  for (const auto& v : q.vertices) boxes.push_back(vertex_box(v, eps));
  // Edge from A (higher step) to B: B = A + e_i, or B has slant one less.
  for (std::size_t a = 0; a < q.vertices.size(); ++a)
    for (std::size_t b = 0; b < q.vertices.size(); ++b) {
      const auto& va = q.vertices[a];
      const auto& vb = q.vertices[b];
      IntVector d = diff(vb.lift_k, va.lift_k);
      std::size_t nonzero = 0, pos = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (d[i] != 0) {
          ++nonzero;
          pos = i;
        }
      std::size_t wall = n + 1;
      if (va.lift_a == vb.lift_a && nonzero == 1 && d[pos] == 1) wall = pos;
      if (nonzero == 0 && vb.lift_a == va.lift_a - 1) wall = n;
      if (wall > n || !share_facet(boxes[a], va.lift_a, boxes[b], vb.lift_a, wall)) continue;
      q.edges.push_back({a, b, wall, 0, PicMonomial()});
    }

  // Edge classes modulo translation: (source step, wall).
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> classes;
  for (std::size_t e = 0; e < q.edges.size(); ++e)
    classes[{q.vertices[q.edges[e].source].chamber.step(), q.edges[e].wall}].push_back(e);
  std::size_t class_id = 0;
  for (auto& [key, members] : classes) {
    auto is_zero = [](const IntVector& v) {
      return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
    };
    std::size_t base = members.front();
    auto by_source = std::find_if(members.begin(), members.end(),
                                  [&](std::size_t e) { return is_zero(q.vertices[q.edges[e].source].translation); });
    auto by_target = std::find_if(members.begin(), members.end(),
                                  [&](std::size_t e) { return is_zero(q.vertices[q.edges[e].target].translation); });
    if (by_source != members.end())
      base = *by_source;
    else if (by_target != members.end())
      base = *by_target;
    const IntVector& base_v = q.vertices[q.edges[base].source].translation;
    for (std::size_t e : members) {
      q.edges[e].edge_class = class_id;
      q.edges[e].label = label_for(md, frame, diff(q.vertices[q.edges[e].source].translation, base_v));
    }
    ++class_id;
  }
  std::sort(q.edges.begin(), q.edges.end(), [](const QuiverEdge& x, const QuiverEdge& y) {
    return std::tie(x.source, x.target) < std::tie(y.source, y.target);
  });
  return q;
}

ChamberQuiver chamber_quiver(std::size_t n, const std::vector<PicMonomial>& pic) {
  return chamber_quiver_in_frame(n, pic, IntMatrix::identity(n));
}

std::optional<std::vector<PicMonomial>> transport_labels(const ChamberQuiver& q, const picsym::MonodromyData& md,
                                                         const IntMatrix& frame) {
  const std::size_t nv = q.vertices.size();
  const std::size_t n = q.n;
  // Undirected adjacency with the label increment for moving along it.
  std::vector<std::vector<std::pair<std::size_t, PicMonomial>>> adj(nv);
  for (const auto& e : q.edges) {
    const auto& s = q.vertices[e.source];
    const auto& t = q.vertices[e.target];
    IntVector delta = diff(diff(t.lift_k, s.lift_k),
                           diff(base_lift(n, t.chamber.step()), base_lift(n, s.chamber.step())));
    PicMonomial inc = label_for(md, frame, delta);
    adj[e.source].emplace_back(e.target, inc);
    adj[e.target].emplace_back(e.source, picsym::pic_inv(inc));
  }
  std::vector<std::optional<PicMonomial>> seen(nv);
  bool consistent = true;
  std::vector<bool> on_path(nv, false);
  std::function<void(std::size_t, const PicMonomial&)> dfs = [&](std::size_t v, const PicMonomial& label) {
    if (!consistent) return;
    if (seen[v] && !(*seen[v] == label)) {
      consistent = false;
      return;
    }
    seen[v] = label;
    on_path[v] = true;
    for (const auto& [w, inc] : adj[v])
      if (!on_path[w]) dfs(w, label * inc);
    on_path[v] = false;
  };
  const std::size_t c = q.center();
  dfs(c, PicMonomial::unit(md.matrix.rows()));
  if (!consistent) return std::nullopt;
  std::vector<PicMonomial> out;
  for (auto& s : seen) {
    if (!s) return std::nullopt;
    out.push_back(*s);
  }
  return out;
}

bool is_acyclic(const ChamberQuiver& q) {
  std::vector<std::size_t> indeg(q.vertices.size(), 0);
  for (const auto& e : q.edges) ++indeg[e.target];
  std::vector<std::size_t> stack;
  for (std::size_t v = 0; v < indeg.size(); ++v)
    if (indeg[v] == 0) stack.push_back(v);
  std::size_t visited = 0;
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    ++visited;
    for (const auto& e : q.edges)
      if (e.source == v && --indeg[e.target] == 0) stack.push_back(e.target);
  }
  return visited == q.vertices.size();
}

std::size_t longest_path_length(const ChamberQuiver& q) {
  std::vector<std::size_t> best(q.vertices.size(), 0);
  // Steps strictly decrease along edges; relax in order of increasing step.
  std::vector<std::size_t> order(q.vertices.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return q.vertices[a].chamber.step() < q.vertices[b].chamber.step();
  });
  std::size_t longest = 0;
  for (std::size_t v : order) {
    for (const auto& e : q.edges)
      if (e.source == v) best[v] = std::max(best[v], best[e.target] + 1);
    longest = std::max(longest, best[v]);
  }
  return longest;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

nlohmann::json ints(const IntVector& v) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& x : v) a.push_back(x.get_si());
  return a;
}

IntVector ints_from(const nlohmann::json& j) {
  IntVector v;
  for (const auto& x : j) v.emplace_back(x.get<long>());
  return v;
}

std::string rat(const Rational& q) { return q.get_str(); }

RatVector rats_from(const nlohmann::json& j) {
  RatVector v;
  for (const auto& x : j) {
    Rational q(x.get<std::string>());
    q.canonicalize();
    v.push_back(q);
  }
  return v;
}

nlohmann::json rats(const RatVector& v) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& x : v) a.push_back(rat(x));
  return a;
}

}  // namespace

nlohmann::json to_json(const std::vector<SkeletonComponent>& components, std::size_t rank) {
  nlohmann::json j;
  j["rank"] = rank;
  j["components"] = nlohmann::json::array();
  for (const auto& c : components) {
    nlohmann::json e;
    e["cone"] = nlohmann::json::array();
    for (const auto& g : c.cone.generators()) e["cone"].push_back(ints(g));
    e["character"] = rats(c.character);
    e["base_subspace"] = nlohmann::json::array();
    for (const auto& b : c.base_subspace) e["base_subspace"].push_back(rats(b));
    e["cone_index"] = c.cone_index;
    j["components"].push_back(e);
  }
  return j;
}

std::vector<SkeletonComponent> components_from_json(const nlohmann::json& j) {
  const std::size_t rank = j.at("rank").get<std::size_t>();
  std::vector<SkeletonComponent> out;
  for (const auto& e : j.at("components")) {
    SkeletonComponent c;
    std::vector<IntVector> gens;
    for (const auto& g : e.at("cone")) {
      gens.push_back(ints_from(g));
      if (gens.back().size() != rank) throw std::invalid_argument("cone generator has the wrong length");
    }
    c.cone = fans::Cone(rank, gens);
    c.character = rats_from(e.at("character"));
    if (c.character.size() != rank) throw std::invalid_argument("character has the wrong length");
    for (const auto& b : e.at("base_subspace")) c.base_subspace.push_back(rats_from(b));
    c.cone_index = e.at("cone_index").get<std::size_t>();
    out.push_back(std::move(c));
  }
  return out;
}

nlohmann::json to_json(const ChamberQuiver& q) {
  nlohmann::json j;
  j["n"] = q.n;
  j["generators"] = q.generator_names;
  j["chambers"] = nlohmann::json::array();
  for (const auto& v : q.vertices) {
    nlohmann::json c;
    c["flags"] = v.chamber.flag_string();
    c["slant"] = v.chamber.slant;
    c["step"] = v.chamber.step();
    c["label"] = v.label.to_string();
    c["lift"] = {{"k", ints(v.lift_k)}, {"a", v.lift_a}};
    c["translation"] = ints(v.translation);
    c["duplicate"] = v.duplicate;
    j["chambers"].push_back(c);
  }
  j["edges"] = nlohmann::json::array();
  j["edge_info"] = nlohmann::json::array();
  for (const auto& e : q.edges) {
    j["edges"].push_back({e.source, e.target});
    j["edge_info"].push_back({{"wall", e.wall}, {"class", e.edge_class}, {"label", e.label.to_string()}});
  }
  return j;
}

ChamberQuiver quiver_from_json(const nlohmann::json& j) {
  ChamberQuiver q;
  q.n = j.at("n").get<std::size_t>();
  q.generator_names = j.at("generators").get<std::vector<std::string>>();
  const std::size_t g = q.generator_names.size();
  for (const auto& c : j.at("chambers")) {
    QuiverVertex v;
    v.chamber = Chamber::parse(c.at("flags").get<std::string>(), c.at("slant").get<std::size_t>());
    if (v.chamber.step() != c.at("step").get<std::size_t>()) throw std::invalid_argument("chamber step mismatch");
    v.label = PicMonomial::parse(c.at("label").get<std::string>(), g);
    v.lift_k = ints_from(c.at("lift").at("k"));
    v.lift_a = c.at("lift").at("a").get<long>();
    v.translation = ints_from(c.at("translation"));
    v.duplicate = c.at("duplicate").get<bool>();
    q.vertices.push_back(std::move(v));
  }
  const auto& edges = j.at("edges");
  const auto& info = j.at("edge_info");
  if (edges.size() != info.size()) throw std::invalid_argument("edges and edge_info differ in length");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    QuiverEdge e;
    e.source = edges[i].at(0).get<std::size_t>();
    e.target = edges[i].at(1).get<std::size_t>();
    if (e.source >= q.vertices.size() || e.target >= q.vertices.size())
      throw std::invalid_argument("edge endpoint out of range");
    e.wall = info[i].at("wall").get<std::size_t>();
    e.edge_class = info[i].at("class").get<std::size_t>();
    e.label = PicMonomial::parse(info[i].at("label").get<std::string>(), g);
    q.edges.push_back(std::move(e));
  }
  return q;
}

std::string to_dot(const ChamberQuiver& q) {
  std::ostringstream os;
  os << "digraph chamber_quiver {\n  rankdir=LR;\n";
  for (std::size_t i = 0; i < q.vertices.size(); ++i) {
    const auto& v = q.vertices[i];
    os << "  v" << i << " [label=\"" << v.chamber.to_string() << (v.duplicate ? "'" : "") << "\\n"
       << v.label.to_string(q.generator_names) << "\", step=" << v.chamber.step() << ", pic=\""
       << v.label.to_string() << "\"];\n";
  }
  for (const auto& e : q.edges)
    os << "  v" << e.source << " -> v" << e.target << " [label=\"" << e.label.to_string(q.generator_names)
       << "\", wall=" << e.wall << ", class=" << e.edge_class << "];\n";
  os << "}\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// SVG

namespace {

constexpr double kScale = 400.0;
constexpr double kMargin = 40.0;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

double px(const Rational& x) { return kMargin + kScale * x.get_d(); }
double py(const Rational& y) { return kMargin + kScale * (1 - y.get_d()); }

using Point = std::pair<Rational, Rational>;

// Keep the part of the polygon with a*x + b*y <= c.
std::vector<Point> clip(const std::vector<Point>& poly, const Rational& a, const Rational& b, const Rational& c) {
  std::vector<Point> out;
  auto val = [&](const Point& p) -> Rational { return a * p.first + b * p.second - c; };
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % poly.size()];
    Rational vp = val(p), vq = val(q);
    if (vp <= 0) out.push_back(p);
    if ((vp < 0 && vq > 0) || (vp > 0 && vq < 0)) {
      Rational t = vp / (vp - vq);
      out.emplace_back(p.first + t * (q.first - p.first), p.second + t * (q.second - p.second));
    }
  }
  return out;
}

std::string svg_header(double w, double h) {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         num(w) + "\" height=\"" + num(h) + "\" viewBox=\"0 0 " + num(w) + " " + num(h) + "\">\n";
}

}  // namespace

std::string emit_svg(const ChamberQuiver& q) {
  if (q.n == 0 || q.n > 2) throw UnsupportedError("SVG output supports n = 1 or 2 only");
  const Rational eps = default_epsilon(q.n);
  std::ostringstream os;
  if (q.n == 1) {
    const double w = 2 * kMargin + kScale * 1.5, h = 2 * kMargin + 80;
    os << svg_header(w, h);
    const double y = kMargin + 40;
    os << "  <line x1=\"" << num(px(0)) << "\" y1=\"" << num(y) << "\" x2=\"" << num(px(1)) << "\" y2=\"" << num(y)
       << "\" stroke=\"black\"/>\n";
    os << "  <line x1=\"" << num(px(1)) << "\" y1=\"" << num(y) << "\" x2=\"" << num(px(Rational(3, 2))) << "\" y2=\""
       << num(y) << "\" stroke=\"gray\" stroke-dasharray=\"4 4\"/>\n";
    for (const Rational& wall : std::vector<Rational>{eps, Rational(1), Rational(1) + eps})
      os << "  <line class=\"wall\" x1=\"" << num(px(wall)) << "\" y1=\"" << num(y - 15) << "\" x2=\"" << num(px(wall))
         << "\" y2=\"" << num(y + 15) << "\" stroke=\"red\"/>\n";
    for (std::size_t i = 0; i < q.vertices.size(); ++i) {
      Box b = vertex_box(q.vertices[i], eps);
      Rational mid = (b.lo[0] + b.hi[0]) / 2;
      os << "  <text class=\"chamber\" x=\"" << num(px(mid)) << "\" y=\"" << num(y - 20)
         << "\" font-size=\"10\" text-anchor=\"middle\">" << q.vertices[i].chamber.to_string() << " "
         << q.vertices[i].label.to_string(q.generator_names) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
  }
  const double side = 2 * kMargin + kScale;
  os << svg_header(side, side);
  os << "  <rect x=\"" << num(px(0)) << "\" y=\"" << num(py(1)) << "\" width=\"" << num(kScale) << "\" height=\""
     << num(kScale) << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (std::size_t i = 0; i < q.vertices.size(); ++i) {
    const auto& v = q.vertices[i];
    Box b = vertex_box(v, eps);
    std::vector<Point> poly{{b.lo[0], b.lo[1]}, {b.hi[0], b.lo[1]}, {b.hi[0], b.hi[1]}, {b.lo[0], b.hi[1]}};
    poly = clip(poly, 1, 1, Rational(v.lift_a + 1));
    poly = clip(poly, -1, -1, Rational(-v.lift_a));
    os << "  <polygon class=\"chamber\" points=\"";
    Rational cx = 0, cy = 0;
    for (std::size_t p = 0; p < poly.size(); ++p) {
      os << (p ? " " : "") << num(px(poly[p].first)) << "," << num(py(poly[p].second));
      cx += poly[p].first;
      cy += poly[p].second;
    }
    os << "\" fill=\"#eef\" stroke=\"none\"/>\n";
    cx /= static_cast<long>(poly.size());
    cy /= static_cast<long>(poly.size());
    os << "  <text x=\"" << num(px(cx)) << "\" y=\"" << num(py(cy)) << "\" font-size=\"9\" text-anchor=\"middle\">"
       << v.chamber.to_string() << " " << v.label.to_string(q.generator_names) << "</text>\n";
  }
  // Walls with conormal hair ticks on the side of the S region.
  auto wall = [&](const Point& a, const Point& b, double hx, double hy) {
    os << "  <line class=\"wall\" x1=\"" << num(px(a.first)) << "\" y1=\"" << num(py(a.second)) << "\" x2=\""
       << num(px(b.first)) << "\" y2=\"" << num(py(b.second)) << "\" stroke=\"red\"/>\n";
    for (int t = 1; t < 8; ++t) {
      Rational s = zlin::make_rational(t, 8);
      Rational x = a.first + s * (b.first - a.first), y = a.second + s * (b.second - a.second);
      os << "  <line class=\"hair\" x1=\"" << num(px(x)) << "\" y1=\"" << num(py(y)) << "\" x2=\""
         << num(px(x) + hx) << "\" y2=\"" << num(py(y) + hy) << "\" stroke=\"red\" stroke-width=\"0.5\"/>\n";
    }
  };
  wall({eps, 0}, {eps, 1}, -6, 0);
  wall({0, eps}, {1, eps}, 0, 6);
  wall({0, 1}, {1, 0}, 4, 4);
  os << "</svg>\n";
  return os.str();
}

std::string emit_svg(const std::vector<SkeletonComponent>& components, std::size_t rank) {
  if (rank == 0 || rank > 2) throw UnsupportedError("SVG output supports rank 1 or 2 only");
  std::ostringstream os;
  if (rank == 1) {
    const double side = 2 * kMargin + kScale;
    const double c = side / 2, r = kScale / 3;
    os << svg_header(side, side);
    for (const auto& comp : components) {
      if (comp.cone.is_zero()) {
        os << "  <circle class=\"zero-section\" cx=\"" << num(c) << "\" cy=\"" << num(c) << "\" r=\"" << num(r)
           << "\" fill=\"none\" stroke=\"black\"/>\n";
        continue;
      }
      const double angle = 2 * 3.14159265358979323846 * comp.character[0].get_d();
      const double dx = std::cos(angle), dy = -std::sin(angle);
      const double dir = comp.cone.generators()[0][0] > 0 ? 1.0 : -1.0;
      const double x0 = c + r * dx, y0 = c + r * dy;
      os << "  <circle class=\"character\" cx=\"" << num(x0) << "\" cy=\"" << num(y0)
         << "\" r=\"4\" fill=\"black\"/>\n";
      os << "  <line class=\"hair\" x1=\"" << num(x0) << "\" y1=\"" << num(y0) << "\" x2=\""
         << num(x0 + dir * 50 * dx) << "\" y2=\"" << num(y0 + dir * 50 * dy) << "\" stroke=\"blue\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
  }
  const double side = 2 * kMargin + kScale;
  os << svg_header(side, side);
  os << "  <rect x=\"" << num(px(0)) << "\" y=\"" << num(py(1)) << "\" width=\"" << num(kScale) << "\" height=\""
     << num(kScale) << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (const auto& comp : components) {
    const auto dim = comp.cone.dimension();
    if (dim == 0) {
      os << "  <rect class=\"zero-section\" x=\"" << num(px(0)) << "\" y=\"" << num(py(1)) << "\" width=\""
         << num(kScale) << "\" height=\"" << num(kScale) << "\" fill=\"#f4f4f4\" stroke=\"none\"/>\n";
    } else if (dim == 1) {
      // Closed geodesic chi + t d, t in [0,1], cut where it crosses the square's edges.
      IntVector d = zlin::primitive(comp.base_subspace.at(0));
      std::vector<Rational> cuts{0, 1};
      for (std::size_t i = 0; i < 2; ++i) {
        if (d[i] == 0) continue;
        const long m = Integer(abs(d[i])).get_si();
        // chi_i + t d_i is an integer
        for (long z = -m - 1; z <= m + 1; ++z) {
          Rational t = (Rational(z) - comp.character[i]) / Rational(d[i]);
          if (t > 0 && t < 1) cuts.push_back(t);
        }
      }
      std::sort(cuts.begin(), cuts.end());
      cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
      for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        Rational mid = (cuts[s] + cuts[s + 1]) / 2;
        Point m{comp.character[0] + mid * d[0], comp.character[1] + mid * d[1]};
        Rational sx = zlin::floor(m.first), sy = zlin::floor(m.second);
        Point a{comp.character[0] + cuts[s] * d[0] - sx, comp.character[1] + cuts[s] * d[1] - sy};
        Point b{comp.character[0] + cuts[s + 1] * d[0] - sx, comp.character[1] + cuts[s + 1] * d[1] - sy};
        os << "  <line class=\"component\" x1=\"" << num(px(a.first)) << "\" y1=\"" << num(py(a.second))
           << "\" x2=\"" << num(px(b.first)) << "\" y2=\"" << num(py(b.second)) << "\" stroke=\"black\"/>\n";
        const auto& g = comp.cone.generators()[0];
        Point h{(a.first + b.first) / 2, (a.second + b.second) / 2};
        os << "  <line class=\"hair\" x1=\"" << num(px(h.first)) << "\" y1=\"" << num(py(h.second)) << "\" x2=\""
           << num(px(h.first) + 8 * g[0].get_d()) << "\" y2=\"" << num(py(h.second) - 8 * g[1].get_d())
           << "\" stroke=\"blue\"/>\n";
      }
    } else {
      const Point chi{comp.character[0], comp.character[1]};
      os << "  <circle class=\"character\" cx=\"" << num(px(chi.first)) << "\" cy=\"" << num(py(chi.second))
         << "\" r=\"4\" fill=\"black\"/>\n";
      for (const auto& g : comp.cone.generators())
        os << "  <line class=\"hair\" x1=\"" << num(px(chi.first)) << "\" y1=\"" << num(py(chi.second))
           << "\" x2=\"" << num(px(chi.first) + 12 * g[0].get_d()) << "\" y2=\""
           << num(py(chi.second) - 12 * g[1].get_d()) << "\" stroke=\"blue\"/>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace ccc::skeleton
