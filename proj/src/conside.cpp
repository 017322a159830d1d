#include "ccc/conside.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

namespace ccc::conside {

using zlin::Rational;

// ---------------------------------------------------------------------------
// Posets

FinitePoset::FinitePoset(std::vector<std::vector<bool>> leq, std::vector<std::string> names)
    : leq_(std::move(leq)), names_(std::move(names)) {
  const std::size_t n = leq_.size();
  for (const auto& row : leq_)
    if (row.size() != n) throw ConsideError("order relation must be square");
  if (names_.empty())
    for (std::size_t i = 0; i < n; ++i) names_.push_back(std::to_string(i));
  if (names_.size() != n) throw ConsideError("one name per element required");
  for (std::size_t x = 0; x < n; ++x) {
    if (!leq_[x][x]) throw ConsideError("order is not reflexive at " + names_[x]);
    for (std::size_t y = 0; y < n; ++y) {
      if (x != y && leq_[x][y] && leq_[y][x])
        throw ConsideError("order is not antisymmetric: " + names_[x] + " and " + names_[y]);
      for (std::size_t z = 0; z < n; ++z)
        if (leq_[x][y] && leq_[y][z] && !leq_[x][z])
          throw ConsideError("order is not transitive: " + names_[x] + " <= " + names_[y] + " <= " + names_[z]);
    }
  }
}

FinitePoset FinitePoset::from_relations(std::size_t size, const std::vector<std::pair<std::size_t, std::size_t>>& rel,
                                        std::vector<std::string> names) {
  std::vector<std::vector<bool>> leq(size, std::vector<bool>(size, false));
  for (std::size_t i = 0; i < size; ++i) leq[i][i] = true;
  for (auto [x, y] : rel) {
    if (x >= size || y >= size) throw ConsideError("relation refers to a missing element");
    leq[x][y] = true;
  }
  for (std::size_t k = 0; k < size; ++k)
    for (std::size_t i = 0; i < size; ++i)
      if (leq[i][k])
        for (std::size_t j = 0; j < size; ++j)
          if (leq[k][j]) leq[i][j] = true;
  return FinitePoset(std::move(leq), std::move(names));
}

std::vector<std::pair<std::size_t, std::size_t>> FinitePoset::covers() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t n = size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y || !leq_[x][y]) continue;
      bool between = false;
      for (std::size_t z = 0; z < n && !between; ++z)
        between = z != x && z != y && leq_[x][z] && leq_[z][y];
      if (!between) out.emplace_back(x, y);
    }
  return out;
}

std::size_t FinitePoset::height() const {
  return DirectedCategory::from_poset(*this).height();
}

// ---------------------------------------------------------------------------
// Directed categories

std::size_t DirectedCategory::compose(std::size_t f, std::size_t g) const {
  auto it = compose_.find({f, g});
  if (it == compose_.end()) throw ConsideError("morphisms are not composable");
  return it->second;
}

std::size_t DirectedCategory::height() const {
  // Longest path in the DAG of objects. Composition makes the successor sets
  // nested, so sorting by successor count is a topological order.
  const std::size_t n = object_count();
  std::vector<std::size_t> longest(n, 0);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::size_t> reach(n, 0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (x != y && !hom_[x][y].empty()) ++reach[x];
  // Sinks first: objects with fewer successors cannot precede their targets.
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return reach[a] < reach[b]; });
  std::size_t best = 0;
  for (std::size_t x : order) {
    for (std::size_t y = 0; y < n; ++y)
      if (x != y && !hom_[x][y].empty()) longest[x] = std::max(longest[x], longest[y] + 1);
    best = std::max(best, longest[x]);
  }
  return best;
}

void DirectedCategory::finalize() {
  const std::size_t n = names_.size();
  hom_.assign(n, std::vector<std::vector<std::size_t>>(n));
  identity_.assign(n, morphisms_.size());
  for (std::size_t f = 0; f < morphisms_.size(); ++f) {
    const auto& m = morphisms_[f];
    if (m.identity) {
      if (m.source != m.target) throw ConsideError("identity with distinct endpoints");
      identity_[m.source] = f;
    } else if (m.source == m.target) {
      throw ConsideError("non-identity endomorphism of " + names_[m.source]);
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (identity_[x] == morphisms_.size()) throw ConsideError("missing identity of " + names_[x]);
    hom_[x][x].push_back(identity_[x]);
  }
  for (std::size_t f = 0; f < morphisms_.size(); ++f)
    if (!morphisms_[f].identity) hom_[morphisms_[f].source][morphisms_[f].target].push_back(f);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (x != y && !hom_[x][y].empty() && !hom_[y][x].empty())
        throw ConsideError("category is not directed: " + names_[x] + " and " + names_[y]);
  for (std::size_t f = 0; f < morphisms_.size(); ++f) {
    compose_[{identity_[morphisms_[f].source], f}] = f;
    compose_[{f, identity_[morphisms_[f].target]}] = f;
  }
  // Completeness and associativity on all composable triples.
  for (std::size_t f = 0; f < morphisms_.size(); ++f)
    for (std::size_t g = 0; g < morphisms_.size(); ++g) {
      if (morphisms_[f].target != morphisms_[g].source) continue;
      if (!compose_.count({f, g})) throw ConsideError("composition table is incomplete");
      const std::size_t gf = compose_.at({f, g});
      for (std::size_t h = 0; h < morphisms_.size(); ++h) {
        if (morphisms_[g].target != morphisms_[h].source) continue;
        if (compose_.at({gf, h}) != compose_.at({f, compose_.at({g, h})}))
          throw ConsideError("composition is not associative");
      }
    }
}

DirectedCategory DirectedCategory::from_poset(const FinitePoset& p) {
  DirectedCategory c;
  c.names_ = p.names();
  const std::size_t n = p.size();
  std::vector<std::vector<std::size_t>> index(n, std::vector<std::size_t>(n, 0));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (p.leq(x, y)) {
        index[x][y] = c.morphisms_.size();
        c.morphisms_.push_back({x, y, {}, x == y});
      }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (p.leq(x, y) && p.leq(y, z)) c.compose_[{index[x][y], index[y][z]}] = index[x][z];
  c.finalize();
  return c;
}

namespace {

// Lifted chamber R(k, a) lies below R(k', a') in the chamber order iff it is
// reached by raising coordinates of k and lowering a, one wall at a time:
// every such step crosses a facet and stays nonempty.
bool lifted_leq(const IntVector& k, long a, const IntVector& k2, long a2) {
  for (std::size_t i = 0; i < k.size(); ++i)
    if (k2[i] < k[i]) return false;
  return a2 <= a;
}

}  // namespace

DirectedCategory DirectedCategory::pn_chambers(std::size_t n) {
  if (n == 0) throw ConsideError("P^n needs n >= 1");
  DirectedCategory c;
  for (std::size_t s = 0; s <= n; ++s) c.names_.push_back("step" + std::to_string(s));
  std::map<std::tuple<std::size_t, std::size_t, IntVector>, std::size_t> index;
  for (std::size_t s = 0; s <= n; ++s)
    for (std::size_t t = 0; t <= n; ++t) {
      if (t > s) continue;
      const IntVector bs = skeleton::base_lift(n, s), bt = skeleton::base_lift(n, t);
      const long span = static_cast<long>(s - t);
      // Translations g with base_s <= base_t + g lie in [-1, s - t]^n.
      IntVector g(n, Integer(-1));
      for (;;) {
        IntVector k2(n);
        Integer sum = 0;
        for (std::size_t i = 0; i < n; ++i) {
          k2[i] = bt[i] + g[i];
          sum += g[i];
        }
        if (lifted_leq(bs, 0, k2, sum.get_si())) {
          index[{s, t, g}] = c.morphisms_.size();
          c.morphisms_.push_back({s, t, g, s == t});
        }
        std::size_t i = 0;
        while (i < n && g[i] == span) g[i++] = -1;
        if (i == n) break;
        g[i] += 1;
      }
    }
  for (std::size_t f = 0; f < c.morphisms_.size(); ++f)
    for (std::size_t h = 0; h < c.morphisms_.size(); ++h) {
      const auto& mf = c.morphisms_[f];
      const auto& mh = c.morphisms_[h];
      if (mf.target != mh.source) continue;
      IntVector sum(n);
      for (std::size_t i = 0; i < n; ++i) sum[i] = mf.translation[i] + mh.translation[i];
      auto it = index.find({mf.source, mh.target, sum});
      if (it == index.end()) throw std::logic_error("chamber category is not closed under composition");
      c.compose_[{f, h}] = it->second;
    }
  c.finalize();
  return c;
}

// ---------------------------------------------------------------------------
// Representations

namespace {

RatMatrix zero_matrix(std::size_t r, std::size_t c) { return RatMatrix(r, c); }

std::string shape(const RatMatrix& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }

}  // namespace

void validate_rep(const DirectedCategory& c, const Rep& r) {
  if (r.dims.size() != c.object_count()) throw ConsideError("representation has the wrong number of objects");
  if (r.maps.size() != c.morphisms().size()) throw ConsideError("representation has the wrong number of maps");
  for (std::size_t f = 0; f < r.maps.size(); ++f) {
    const auto& m = c.morphisms()[f];
    const auto& a = r.maps[f];
    if (a.rows() != r.dims[m.target] || a.cols() != r.dims[m.source])
      throw ConsideError("map " + std::to_string(f) + " has shape " + shape(a) + ", expected " +
                         std::to_string(r.dims[m.target]) + "x" + std::to_string(r.dims[m.source]));
    if (m.identity && !(a == RatMatrix::identity(r.dims[m.source])))
      throw ConsideError("identity of " + c.names()[m.source] + " is not sent to the identity");
  }
  for (std::size_t f = 0; f < r.maps.size(); ++f)
    for (std::size_t g = 0; g < r.maps.size(); ++g) {
      if (c.morphisms()[f].target != c.morphisms()[g].source) continue;
      if (!(r.maps[g] * r.maps[f] == r.maps[c.compose(f, g)]))
        throw ConsideError("representation is not functorial (a square does not commute)");
    }
}

Rep poset_rep(const FinitePoset& p, const std::vector<std::size_t>& dims,
              const std::map<std::pair<std::size_t, std::size_t>, RatMatrix>& cover_maps) {
  if (dims.size() != p.size()) throw ConsideError("one dimension per poset element required");
  DirectedCategory c = DirectedCategory::from_poset(p);
  const auto covers = p.covers();
  for (const auto& [xy, m] : cover_maps)
    if (std::find(covers.begin(), covers.end(), xy) == covers.end())
      throw ConsideError("map given on a non-covering pair");
  Rep r;
  r.dims = dims;
  r.maps.resize(c.morphisms().size());
  std::vector<bool> done(c.morphisms().size(), false);
  for (std::size_t x = 0; x < p.size(); ++x) {
    r.maps[c.identity(x)] = RatMatrix::identity(dims[x]);
    done[c.identity(x)] = true;
  }
  for (auto [x, y] : covers) {
    auto it = cover_maps.find({x, y});
    const std::size_t f = c.hom(x, y).front();
    r.maps[f] = it == cover_maps.end() ? zero_matrix(dims[y], dims[x]) : it->second;
    if (r.maps[f].rows() != dims[y] || r.maps[f].cols() != dims[x])
      throw ConsideError("map " + p.names()[x] + " -> " + p.names()[y] + " has shape " + shape(r.maps[f]));
    done[f] = true;
  }
  // Fill longer relations by composing a cover with an already known part;
  // validate_rep then checks that every other factorization agrees.
  bool progress = true;
  while (progress) {
    progress = false;
    for (auto [x, y] : covers)
      for (std::size_t z = 0; z < p.size(); ++z) {
        if (!p.leq(y, z) || y == z) continue;
        const std::size_t xz = c.hom(x, z).front();
        const std::size_t yz = c.hom(y, z).front();
        if (done[xz] || !done[yz]) continue;
        r.maps[xz] = r.maps[yz] * r.maps[c.hom(x, y).front()];
        done[xz] = true;
        progress = true;
      }
  }
  validate_rep(c, r);
  return r;
}

Rep corepresentable(const DirectedCategory& c, std::size_t v) {
  Rep r;
  for (std::size_t w = 0; w < c.object_count(); ++w) r.dims.push_back(c.hom(v, w).size());
  for (std::size_t f = 0; f < c.morphisms().size(); ++f) {
    const auto& m = c.morphisms()[f];
    RatMatrix a(r.dims[m.target], r.dims[m.source]);
    const auto& src = c.hom(v, m.source);
    const auto& dst = c.hom(v, m.target);
    for (std::size_t j = 0; j < src.size(); ++j) {
      const std::size_t composite = c.compose(src[j], f);
      const std::size_t i = static_cast<std::size_t>(std::find(dst.begin(), dst.end(), composite) - dst.begin());
      a(i, j) = 1;
    }
    r.maps.push_back(std::move(a));
  }
  return r;
}

Rep injective(const DirectedCategory& c, std::size_t v) {
  // Basis of the dual of k[Hom(w, v)]; f: w -> w' acts by precomposition,
  // transposed.
  Rep r;
  for (std::size_t w = 0; w < c.object_count(); ++w) r.dims.push_back(c.hom(w, v).size());
  for (std::size_t f = 0; f < c.morphisms().size(); ++f) {
    const auto& m = c.morphisms()[f];
    RatMatrix a(r.dims[m.target], r.dims[m.source]);
    const auto& src = c.hom(m.source, v);
    const auto& dst = c.hom(m.target, v);
    for (std::size_t i = 0; i < dst.size(); ++i) {
      const std::size_t composite = c.compose(f, dst[i]);
      const std::size_t j = static_cast<std::size_t>(std::find(src.begin(), src.end(), composite) - src.begin());
      a(i, j) = 1;
    }
    r.maps.push_back(std::move(a));
  }
  return r;
}

Rep direct_sum(const Rep& a, const Rep& b) {
  if (a.dims.size() != b.dims.size() || a.maps.size() != b.maps.size())
    throw ConsideError("direct sum of representations of different categories");
  Rep r;
  for (std::size_t x = 0; x < a.dims.size(); ++x) r.dims.push_back(a.dims[x] + b.dims[x]);
  for (std::size_t f = 0; f < a.maps.size(); ++f) {
    const auto& ma = a.maps[f];
    const auto& mb = b.maps[f];
    RatMatrix m(ma.rows() + mb.rows(), ma.cols() + mb.cols());
    for (std::size_t i = 0; i < ma.rows(); ++i)
      for (std::size_t j = 0; j < ma.cols(); ++j) m(i, j) = ma(i, j);
    for (std::size_t i = 0; i < mb.rows(); ++i)
      for (std::size_t j = 0; j < mb.cols(); ++j) m(ma.rows() + i, ma.cols() + j) = mb(i, j);
    r.maps.push_back(std::move(m));
  }
  return r;
}

Rep change_basis(const DirectedCategory& c, const Rep& r, const std::vector<RatMatrix>& bases) {
  if (bases.size() != r.dims.size()) throw ConsideError("one basis change per object required");
  std::vector<RatMatrix> inv;
  for (std::size_t x = 0; x < bases.size(); ++x) {
    if (bases[x].rows() != r.dims[x] || bases[x].cols() != r.dims[x]) throw ConsideError("basis change has wrong shape");
    inv.push_back(r.dims[x] == 0 ? RatMatrix() : zlin::inverse(bases[x]));
  }
  Rep out = r;
  for (std::size_t f = 0; f < r.maps.size(); ++f) {
    const auto& m = c.morphisms()[f];
    if (r.dims[m.target] == 0 || r.dims[m.source] == 0) continue;
    out.maps[f] = bases[m.target] * r.maps[f] * inv[m.source];
  }
  return out;
}

DimVector dimension_vector(const Rep& r) {
  DimVector d;
  for (auto x : r.dims) d.emplace_back(static_cast<unsigned long>(x));
  return d;
}

// ---------------------------------------------------------------------------
// Ext via the normalized bar complex

namespace {

// Chains [c0, f1, ..., fk] of composable non-identity morphisms.
std::vector<std::vector<std::vector<std::size_t>>> enumerate_chains(const DirectedCategory& c, std::size_t max_len) {
  std::vector<std::vector<std::vector<std::size_t>>> by_len(max_len + 1);
  std::vector<std::vector<std::size_t>> out_of(c.object_count());
  for (std::size_t f = 0; f < c.morphisms().size(); ++f)
    if (!c.morphisms()[f].identity) out_of[c.morphisms()[f].source].push_back(f);
  std::function<void(std::vector<std::size_t>&, std::size_t)> grow = [&](std::vector<std::size_t>& chain,
                                                                         std::size_t end) {
    by_len[chain.size() - 1].push_back(chain);
    if (chain.size() - 1 == max_len) return;
    for (std::size_t f : out_of[end]) {
      chain.push_back(f);
      grow(chain, c.morphisms()[f].target);
      chain.pop_back();
    }
  };
  for (std::size_t x = 0; x < c.object_count(); ++x) {
    std::vector<std::size_t> chain{x};
    grow(chain, x);
  }
  return by_len;
}

std::size_t chain_end(const DirectedCategory& c, const std::vector<std::size_t>& chain) {
  return chain.size() == 1 ? chain[0] : c.morphisms()[chain.back()].target;
}

}  // namespace

std::vector<std::size_t> rep_hom(const DirectedCategory& c, const Rep& m, const Rep& n) {
  validate_rep(c, m);
  validate_rep(c, n);
  const std::size_t top = c.height();
  const auto chains = enumerate_chains(c, top + 1);

  // Offsets of each chain's block Hom(M(c0), N(ck)), stored row-major.
  std::vector<std::map<std::vector<std::size_t>, std::size_t>> offset(top + 2);
  std::vector<std::size_t> total(top + 2, 0);
  for (std::size_t k = 0; k <= top + 1; ++k)
    for (const auto& ch : chains[k]) {
      offset[k][ch] = total[k];
      total[k] += n.dims[chain_end(c, ch)] * m.dims[ch[0]];
    }

  std::vector<std::size_t> ranks(top + 2, 0);
  for (std::size_t k = 0; k <= top; ++k) {
    if (total[k] == 0 || total[k + 1] == 0) continue;
    RatMatrix d(total[k + 1], total[k]);
    for (const auto& ch : chains[k + 1]) {
      const std::size_t row0 = offset[k + 1].at(ch);
      const std::size_t c0 = ch[0];
      const std::size_t cend = chain_end(c, ch);
      const std::size_t dm0 = m.dims[c0];
      // N(f_{k+1}) phi(f_1..f_k)
      {
        std::vector<std::size_t> face(ch.begin(), ch.end() - 1);
        const std::size_t col0 = offset[k].at(face);
        const auto& nf = n.maps[ch.back()];
        const std::size_t mid = n.dims[chain_end(c, face)];
        for (std::size_t a = 0; a < n.dims[cend]; ++a)
          for (std::size_t b = 0; b < dm0; ++b)
            for (std::size_t r = 0; r < mid; ++r)
              if (nf(a, r) != 0) d(row0 + a * dm0 + b, col0 + r * dm0 + b) += nf(a, r);
      }
      // Inner faces with sign (-1)^(k+1+i).
      for (std::size_t i = 1; i <= k; ++i) {
        std::vector<std::size_t> face(ch.begin(), ch.begin() + i);
        face.push_back(c.compose(ch[i], ch[i + 1]));
        face.insert(face.end(), ch.begin() + i + 2, ch.end());
        const std::size_t col0 = offset[k].at(face);
        const long sign = ((k + 1 + i) % 2 == 0) ? 1 : -1;
        for (std::size_t e = 0; e < n.dims[cend] * dm0; ++e) d(row0 + e, col0 + e) += sign;
      }
      // (-1)^{k+1} phi(f_2..f_{k+1}) M(f_1)
      {
        std::vector<std::size_t> face;
        face.push_back(c.morphisms()[ch[1]].target);
        face.insert(face.end(), ch.begin() + 2, ch.end());
        const std::size_t col0 = offset[k].at(face);
        const auto& mf = m.maps[ch[1]];
        const std::size_t mid = m.dims[face[0]];
        const long sign = ((k + 1) % 2 == 0) ? 1 : -1;
        for (std::size_t a = 0; a < n.dims[cend]; ++a)
          for (std::size_t b = 0; b < dm0; ++b)
            for (std::size_t r = 0; r < mid; ++r)
              if (mf(r, b) != 0) d(row0 + a * dm0 + b, col0 + a * mid + r) += sign * mf(r, b);
      }
    }
    ranks[k] = zlin::rank(d);
  }
  std::vector<std::size_t> ext(top + 1, 0);
  for (std::size_t k = 0; k <= top; ++k) ext[k] = total[k] - ranks[k] - (k > 0 ? ranks[k - 1] : 0);
  return ext;
}

IntMatrix cartan_matrix(const DirectedCategory& c) {
  const std::size_t n = c.object_count();
  IntMatrix m(n, n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) m(x, y) = static_cast<unsigned long>(c.hom(x, y).size());
  return m;
}

Integer euler_form(const DirectedCategory& c, const DimVector& d, const DimVector& e) {
  const std::size_t n = c.object_count();
  if (d.size() != n || e.size() != n) throw ConsideError("dimension vector has the wrong length");
  RatMatrix inv = zlin::inverse(zlin::to_rational(cartan_matrix(c)));
  Rational s = 0;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) s += d[x] * inv(x, y) * e[y];
  if (s.get_den() != 1) throw std::logic_error("Euler form is not integral");
  return s.get_num();
}

// ---------------------------------------------------------------------------
// Generators

std::vector<BeilinsonGenerator> beilinson_generators(std::size_t n) {
  if (n == 0) throw ConsideError("P^n needs n >= 1");
  const auto chambers = skeleton::enumerate_chambers(n);
  std::vector<BeilinsonGenerator> out;
  for (std::size_t k = 1; k <= n + 1; ++k) {
    BeilinsonGenerator g;
    g.k = k;
    g.dims.assign(n + 1, Integer(0));
    std::vector<bool> seen(n + 1, false);
    for (const auto& ch : chambers) {
      auto label = picsym::sod_label(n, k, ch);
      const std::size_t s = ch.step();
      const Integer r = label.rank();
      if (seen[s] && g.dims[s] != r)
        throw std::logic_error("SOD ranks differ on chambers of step " + std::to_string(s));
      g.dims[s] = r;
      seen[s] = true;
      g.decorations.emplace_back(ch, std::move(label));
    }
    out.push_back(std::move(g));
  }
  return out;
}

IntMatrix beilinson_gram(std::size_t n) {
  const auto gens = beilinson_generators(n);
  const auto cat = DirectedCategory::pn_chambers(n);
  IntMatrix g(n + 1, n + 1);
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = 0; j <= n; ++j) g(i, j) = euler_form(cat, gens[i].dims, gens[j].dims);
  return g;
}

ReductionTrace reduce_dimension_vector(std::size_t n, const DimVector& d) {
  if (d.size() != n + 1) throw ConsideError("dimension vector must have one entry per torus chamber (" +
                                            std::to_string(n + 1) + ")");
  const auto gens = beilinson_generators(n);
  for (const auto& g : gens) {
    const std::size_t lead = g.k - 1;
    if (abs(g.dims[lead]) != 1) throw GenerationError("generator " + std::to_string(g.k) + " is not unimodular");
    for (std::size_t s = lead + 1; s <= n; ++s)
      if (g.dims[s] != 0) throw GenerationError("generators are not triangular");
  }
  ReductionTrace trace;
  DimVector rem = d;
  for (std::size_t k = n + 1; k >= 1; --k) {
    const auto& g = gens[k - 1];
    ReductionStep st;
    st.k = k;
    st.coefficient = rem[k - 1] * g.dims[k - 1];  // lead entry is +-1
    for (std::size_t s = 0; s <= n; ++s) rem[s] -= st.coefficient * g.dims[s];
    st.remaining = rem;
    trace.steps.push_back(std::move(st));
  }
  trace.reached_zero = std::all_of(rem.begin(), rem.end(), [](const Integer& x) { return x == 0; });
  if (!trace.reached_zero) throw GenerationError("reduction did not reach zero in n+1 steps");
  return trace;
}

// ---------------------------------------------------------------------------
// Twisted template

namespace {

std::string object_letter(std::size_t n, std::size_t step) {
  if (n == 1) return step == 0 ? "a" : "b";
  if (n == 2) return std::string(1, static_cast<char>('z' - step));
  return "c" + std::to_string(step);
}

std::string edge_letter(std::size_t i) {
  if (i < 21) return std::string(1, static_cast<char>('f' + i));
  return "e" + std::to_string(i);
}

std::string decorate(const std::string& letter, const picsym::PicMonomial& m, const std::vector<std::string>& names) {
  return m.is_unit() ? letter : letter + m.to_string(names);
}

}  // namespace

TwistedTemplate twisted_rep_template(std::size_t n, const std::vector<picsym::PicMonomial>& pic,
                                     const std::vector<std::string>& names) {
  if (n == 0) throw ConsideError("P^n needs n >= 1");
  // Frame e_i -> e_n - e_i (i < n), e_n -> e_n.
  IntMatrix frame(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    frame(n - 1, i) = 1;
    if (i + 1 < n) frame(i, i) = -1;
  }
  TwistedTemplate t;
  t.quiver = skeleton::chamber_quiver_in_frame(n, pic, frame);
  if (!names.empty()) {
    if (names.size() != t.quiver.generator_names.size()) throw ConsideError("one name per Pic generator required");
    t.quiver.generator_names = names;
  }
  const auto& gn = t.quiver.generator_names;
  for (const auto& v : t.quiver.vertices)
    t.vertex_labels.push_back(decorate(object_letter(n, v.chamber.step()), v.label, gn));
  // Letters per edge class, deepest source step first.
  std::map<std::size_t, std::size_t> class_step;
  for (const auto& e : t.quiver.edges) class_step[e.edge_class] = t.quiver.vertices[e.source].chamber.step();
  std::vector<std::size_t> classes;
  for (const auto& [cls, step] : class_step) classes.push_back(cls);
  std::stable_sort(classes.begin(), classes.end(),
                   [&](std::size_t a, std::size_t b) { return class_step[a] > class_step[b]; });
  std::map<std::size_t, std::string> letter;
  for (std::size_t i = 0; i < classes.size(); ++i) letter[classes[i]] = edge_letter(i);
  for (const auto& e : t.quiver.edges) t.edge_labels.push_back(decorate(letter[e.edge_class], e.label, gn));
  return t;
}

std::string to_dot(const TwistedTemplate& t) {
  std::ostringstream os;
  os << "digraph twisted_rep {\n  rankdir=LR;\n";
  for (std::size_t i = 0; i < t.quiver.vertices.size(); ++i) {
    const auto& v = t.quiver.vertices[i];
    os << "  v" << i << " [label=\"" << t.vertex_labels[i] << "\", chamber=\"" << v.chamber.to_string()
       << (v.duplicate ? "'" : "") << "\", pic=\"" << v.label.to_string() << "\"];\n";
  }
  for (std::size_t i = 0; i < t.quiver.edges.size(); ++i) {
    const auto& e = t.quiver.edges[i];
    os << "  v" << e.source << " -> v" << e.target << " [label=\"" << t.edge_labels[i] << "\", pic=\""
       << e.label.to_string() << "\", class=" << e.edge_class << "];\n";
  }
  os << "}\n";
  return os.str();
}

std::string to_dot(const DirectedCategory& c) {
  std::ostringstream os;
  os << "digraph category {\n";
  for (std::size_t x = 0; x < c.object_count(); ++x) os << "  o" << x << " [label=\"" << c.names()[x] << "\"];\n";
  for (std::size_t x = 0; x < c.object_count(); ++x)
    for (std::size_t y = 0; y < c.object_count(); ++y)
      if (x != y && !c.hom(x, y).empty())
        os << "  o" << x << " -> o" << y << " [label=\"" << c.hom(x, y).size() << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace ccc::conside
