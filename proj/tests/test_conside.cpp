#include "test_main.hpp"

#include <algorithm>
#include <set>

#include "ccc/cohside.hpp"
#include "ccc/conside.hpp"
#include "random.hpp"

using namespace ccc::conside;
using ccc::zlin::Rational;

namespace {

std::vector<Integer> ints(std::initializer_list<long> xs) {
  std::vector<Integer> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

FinitePoset chain2() { return FinitePoset::from_relations(2, {{0, 1}}, {"a", "b"}); }
FinitePoset square() { return FinitePoset::from_relations(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}); }

Rep simple(const DirectedCategory& c, std::size_t v) {
  Rep r;
  for (std::size_t x = 0; x < c.object_count(); ++x) r.dims.push_back(x == v ? 1 : 0);
  for (const auto& m : c.morphisms()) r.maps.push_back(RatMatrix(r.dims[m.target], r.dims[m.source]));
  for (std::size_t x = 0; x < c.object_count(); ++x) r.maps[c.identity(x)] = RatMatrix::identity(r.dims[x]);
  return r;
}

// dim of natural transformations M -> N by solving N(f) phi_x = phi_y M(f).
std::size_t brute_hom(const DirectedCategory& c, const Rep& m, const Rep& n) {
  std::vector<std::size_t> off;
  std::size_t total = 0;
  for (std::size_t x = 0; x < c.object_count(); ++x) {
    off.push_back(total);
    total += n.dims[x] * m.dims[x];
  }
  std::vector<std::vector<Rational>> rows;
  for (std::size_t f = 0; f < c.morphisms().size(); ++f) {
    const auto& mo = c.morphisms()[f];
    if (mo.identity) continue;
    const std::size_t x = mo.source, y = mo.target;
    for (std::size_t a = 0; a < n.dims[y]; ++a)
      for (std::size_t b = 0; b < m.dims[x]; ++b) {
        std::vector<Rational> row(total);
        for (std::size_t r = 0; r < n.dims[x]; ++r) row[off[x] + r * m.dims[x] + b] += n.maps[f](a, r);
        for (std::size_t r = 0; r < m.dims[y]; ++r) row[off[y] + a * m.dims[y] + r] -= m.maps[f](r, b);
        rows.push_back(row);
      }
  }
  if (total == 0) return 0;
  RatMatrix sys(rows.size(), total);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < total; ++j) sys(i, j) = rows[i][j];
  return total - (rows.empty() ? 0 : ccc::zlin::rank(sys));
}

FinitePoset random_poset(ccc_test::Rng& rng, std::size_t size) {
  std::vector<std::pair<std::size_t, std::size_t>> rel;
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = i + 1; j < size; ++j)
      if (rng.uniform(0, 2) == 0) rel.emplace_back(i, j);
  return FinitePoset::from_relations(size, rel);
}

RatMatrix random_invertible(ccc_test::Rng& rng, std::size_t d) {
  for (;;) {
    RatMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) m(i, j) = rng.uniform(-2, 2);
    if (d == 0 || ccc::zlin::determinant(m) != 0) return m;
  }
}

long alternating(const std::vector<std::size_t>& ext) {
  long s = 0;
  for (std::size_t i = 0; i < ext.size(); ++i) s += (i % 2 == 0 ? 1 : -1) * static_cast<long>(ext[i]);
  return s;
}

}  // namespace

TEST_CASE("poset validation") {
  CHECK_THROWS_AS(FinitePoset({{true, true}, {true, true}}), ConsideError);
  CHECK_THROWS_AS(FinitePoset(std::vector<std::vector<bool>>{{false}}), ConsideError);
  CHECK_THROWS_AS(FinitePoset({{true, true, false}, {false, true, true}, {false, false, true}}), ConsideError);
  CHECK_THROWS_AS(FinitePoset::from_relations(2, {{0, 1}, {1, 0}}), ConsideError);
  auto sq = square();
  CHECK(sq.covers().size() == 4);
  CHECK(sq.height() == 2);
  CHECK(chain2().height() == 1);
}

TEST_CASE("corepresentables on small posets") {
  auto c = DirectedCategory::from_poset(chain2());
  auto ca = corepresentable(c, 0);
  CHECK(ca.dims == std::vector<std::size_t>{1, 1});
  CHECK(ca.maps[c.hom(0, 1).front()] == RatMatrix{{1}});
  CHECK(corepresentable(c, 1).dims == std::vector<std::size_t>{0, 1});
  auto sq = DirectedCategory::from_poset(square());
  CHECK(corepresentable(sq, 0).dims == std::vector<std::size_t>{1, 1, 1, 1});
  CHECK(injective(sq, 3).dims == std::vector<std::size_t>{1, 1, 1, 1});
  CHECK(injective(sq, 1).dims == std::vector<std::size_t>{1, 1, 0, 0});
}

TEST_CASE("poset representations: commutativity and shapes are validated") {
  auto p = square();
  std::map<std::pair<std::size_t, std::size_t>, RatMatrix> ok{
      {{0, 1}, RatMatrix{{1}}}, {{0, 2}, RatMatrix{{2}}}, {{1, 3}, RatMatrix{{2}}}, {{2, 3}, RatMatrix{{1}}}};
  auto r = poset_rep(p, {1, 1, 1, 1}, ok);
  CHECK(dimension_vector(r) == ints({1, 1, 1, 1}));
  auto bad = ok;
  bad[{2, 3}] = RatMatrix{{3}};
  CHECK_THROWS_AS(poset_rep(p, {1, 1, 1, 1}, bad), ConsideError);
  auto wrong_shape = ok;
  wrong_shape[{0, 1}] = RatMatrix{{1, 0}};
  CHECK_THROWS_AS(poset_rep(p, {1, 1, 1, 1}, wrong_shape), ConsideError);
  CHECK_THROWS_AS(poset_rep(p, {1, 1, 1, 1}, {{{0, 3}, RatMatrix{{1}}}}), ConsideError);
}

TEST_CASE("Ext by hand") {
  auto c = DirectedCategory::from_poset(chain2());
  auto ca = corepresentable(c, 0), cb = corepresentable(c, 1);
  CHECK(rep_hom(c, ca, ca) == std::vector<std::size_t>{1, 0});
  // Covariant convention: Hom(k[Hom(v,-)], N) = N(v).
  CHECK(rep_hom(c, cb, ca) == std::vector<std::size_t>{1, 0});
  CHECK(rep_hom(c, ca, cb) == std::vector<std::size_t>{0, 0});
  // The nonsplit extension 0 -> S_b -> P_a -> S_a -> 0.
  CHECK(rep_hom(c, simple(c, 0), simple(c, 1)) == std::vector<std::size_t>{0, 1});
  CHECK(rep_hom(c, simple(c, 1), simple(c, 0)) == std::vector<std::size_t>{0, 0});
  // Commutative square: minimal projective resolution of S_0 has length 2.
  auto sq = DirectedCategory::from_poset(square());
  CHECK(rep_hom(sq, simple(sq, 0), simple(sq, 3)) == std::vector<std::size_t>{0, 0, 1});
  CHECK(rep_hom(sq, simple(sq, 0), simple(sq, 1)) == std::vector<std::size_t>{0, 1, 0});
  // Antichain: identity Cartan matrix, Euler form is the dot product.
  auto anti = DirectedCategory::from_poset(FinitePoset::from_relations(2, {}));
  CHECK(cartan_matrix(anti) == IntMatrix::identity(2));
  CHECK(euler_form(anti, ints({2, 3}), ints({5, 7})) == 31);
  CHECK(cartan_matrix(c) == IntMatrix{{1, 1}, {0, 1}});
}

TEST_CASE("Yoneda and Euler consistency on random posets") {
  ccc_test::Rng rng;
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t size = static_cast<std::size_t>(rng.uniform(1, 9));
    auto p = random_poset(rng, size);
    auto c = DirectedCategory::from_poset(p);
    CAPTURE(size);
    std::vector<Rep> coreps, injs;
    for (std::size_t v = 0; v < size; ++v) {
      coreps.push_back(corepresentable(c, v));
      injs.push_back(injective(c, v));
    }
    // Random N: sum of a corepresentable and an injective in scrambled bases.
    for (int k = 0; k < 3; ++k) {
      Rep n = direct_sum(coreps[rng.uniform(0, size - 1)], injs[rng.uniform(0, size - 1)]);
      std::vector<RatMatrix> bases;
      for (auto d : n.dims) bases.push_back(random_invertible(rng, d));
      n = change_basis(c, n, bases);
      validate_rep(c, n);
      for (std::size_t v = 0; v < size; ++v) {
        auto ext = rep_hom(c, coreps[v], n);
        CHECK(ext[0] == n.dims[v]);
        for (std::size_t i = 1; i < ext.size(); ++i) CHECK(ext[i] == 0);
        CHECK(brute_hom(c, coreps[v], n) == ext[0]);
      }
    }
    if (size > 6) continue;
    std::vector<Rep> all = coreps;
    all.insert(all.end(), injs.begin(), injs.end());
    for (std::size_t v = 0; v < size; ++v) all.push_back(simple(c, v));
    for (const auto& m : all)
      for (const auto& n : all) {
        auto ext = rep_hom(c, m, n);
        CHECK(ext.size() == p.height() + 1);
        CHECK(ext[0] == brute_hom(c, m, n));
        CHECK(euler_form(c, dimension_vector(m), dimension_vector(n)) == alternating(ext));
      }
  }
}

TEST_CASE("Euler form on all corepresentable pairs, posets up to 9 elements") {
  ccc_test::Rng rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    auto p = random_poset(rng, static_cast<std::size_t>(rng.uniform(1, 9)));
    auto c = DirectedCategory::from_poset(p);
    for (std::size_t x = 0; x < p.size(); ++x)
      for (std::size_t y = 0; y < p.size(); ++y) {
        auto m = corepresentable(c, x), n = corepresentable(c, y);
        auto ext = rep_hom(c, m, n);
        CHECK(euler_form(c, dimension_vector(m), dimension_vector(n)) == alternating(ext));
        CHECK(ext[0] == (p.leq(y, x) ? 1u : 0u));
      }
  }
}

TEST_CASE("chamber category: hom counts") {
  for (std::size_t n = 1; n <= 4; ++n) {
    auto c = DirectedCategory::pn_chambers(n);
    CHECK(c.object_count() == n + 1);
    CHECK(c.height() == n);
    for (std::size_t s = 0; s <= n; ++s)
      for (std::size_t t = 0; t <= n; ++t)
        CHECK(c.hom(s, t).size() == ccc::zlin::binomial(static_cast<long>(n + s) - static_cast<long>(t), n));
  }
}

TEST_CASE("chamber category agrees with the geometric chamber quiver") {
  for (std::size_t n = 1; n <= 4; ++n) {
    CAPTURE(n);
    auto c = DirectedCategory::pn_chambers(n);
    auto q = ccc::skeleton::chamber_quiver(n);
    for (std::size_t s = 1; s <= n; ++s) {
      std::set<IntVector> geometric, categorical;
      for (const auto& e : q.edges) {
        const auto& u = q.vertices[e.source];
        const auto& v = q.vertices[e.target];
        if (u.chamber.step() != s) continue;
        IntVector g(n);
        for (std::size_t i = 0; i < n; ++i) g[i] = v.translation[i] - u.translation[i];
        geometric.insert(g);
      }
      for (std::size_t f : c.hom(s, s - 1)) categorical.insert(c.morphisms()[f].translation);
      CHECK(geometric == categorical);
    }
    // Every morphism is a composite of one-step morphisms.
    std::set<std::size_t> generated;
    for (std::size_t x = 0; x <= n; ++x) generated.insert(c.identity(x));
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::size_t f : std::set<std::size_t>(generated))
        for (std::size_t s = 1; s <= n; ++s)
          for (std::size_t g : c.hom(s, s - 1))
            if (c.morphisms()[g].source == c.morphisms()[f].target && generated.insert(c.compose(f, g)).second)
              grew = true;
    }
    CHECK(generated.size() == c.morphisms().size());
  }
}

TEST_CASE("Beilinson generators") {
  auto g2 = beilinson_generators(2);
  REQUIRE(g2.size() == 3);
  CHECK(g2[0].dims == ints({1, 0, 0}));
  CHECK(g2[1].dims == ints({3, 1, 0}));
  CHECK(g2[2].dims == ints({6, 3, 1}));
  CHECK(g2[0].decorations.size() == 7);
  for (std::size_t n = 1; n <= 4; ++n) {
    auto c = DirectedCategory::pn_chambers(n);
    auto gens = beilinson_generators(n);
    for (const auto& g : gens) CHECK(g.dims == dimension_vector(corepresentable(c, g.k - 1)));
  }
}

TEST_CASE("Beilinson Gram matrices") {
  CHECK(beilinson_gram(2) == IntMatrix{{1, 3, 6}, {0, 1, 3}, {0, 0, 1}});
  for (std::size_t n = 1; n <= 3; ++n) {
    auto g = beilinson_gram(n);
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t j = 0; j <= n; ++j) {
        if (i == j) CHECK(g(i, j) == 1);
        if (j < i) CHECK(g(i, j) == 0);
        CHECK(g(i, j) == ccc::cohside::euler_pairing_coherent(n, static_cast<long>(i), static_cast<long>(j)));
      }
    CHECK(ccc::zlin::determinant(g) == 1);
  }
  // Ext of the generators, computed by the bar complex.
  for (std::size_t n = 1; n <= 2; ++n) {
    auto c = DirectedCategory::pn_chambers(n);
    auto g = beilinson_gram(n);
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t j = 0; j <= n; ++j) {
        auto ext = rep_hom(c, corepresentable(c, i), corepresentable(c, j));
        CHECK(alternating(ext) == g(i, j));
        for (std::size_t k = 1; k < ext.size(); ++k) CHECK(ext[k] == 0);
      }
  }
  auto c1 = DirectedCategory::pn_chambers(1);
  CHECK(rep_hom(c1, corepresentable(c1, 0), corepresentable(c1, 1))[0] == 2);
}

TEST_CASE("dimension vector reduction") {
  auto one = reduce_dimension_vector(2, beilinson_generators(2)[0].dims);
  CHECK(one.reached_zero);
  CHECK(one.steps.size() == 3);
  CHECK(one.steps[0].coefficient == 0);
  CHECK(one.steps[2].coefficient == 1);
  auto all = reduce_dimension_vector(2, ints({10, 4, 1}));
  for (const auto& st : all.steps) CHECK(st.coefficient == 1);
  CHECK_THROWS_AS(reduce_dimension_vector(2, ints({1, 2})), ConsideError);

  ccc_test::Rng rng;
  for (std::size_t n = 1; n <= 3; ++n) {
    auto gens = beilinson_generators(n);
    for (int t = 0; t < 100; ++t) {
      DimVector d;
      for (std::size_t i = 0; i <= n; ++i) d.emplace_back(rng.uniform(-5, 5));
      auto tr = reduce_dimension_vector(n, d);
      CHECK(tr.reached_zero);
      CHECK(tr.steps.size() == n + 1);
      DimVector back(n + 1, Integer(0));
      for (const auto& st : tr.steps)
        for (std::size_t i = 0; i <= n; ++i) back[i] += st.coefficient * gens[st.k - 1].dims[i];
      CHECK(back == d);
    }
  }
}

TEST_CASE("twisted representation template") {
  using ccc::picsym::PicMonomial;
  auto t = twisted_rep_template(2, {PicMonomial::generator(2, 0), PicMonomial::generator(2, 1)}, {"L", "M"});
  std::multiset<std::string> vertices(t.vertex_labels.begin(), t.vertex_labels.end());
  CHECK(vertices == std::multiset<std::string>{"x", "xM", "xL^-1 M", "y", "yL", "yM", "z"});
  std::set<std::pair<std::string, std::string>> edges;
  for (std::size_t i = 0; i < t.quiver.edges.size(); ++i) {
    const auto& e = t.quiver.edges[i];
    edges.insert({t.vertex_labels[e.source] + ">" + t.vertex_labels[e.target], t.edge_labels[i]});
  }
  for (const auto& expected : std::vector<std::pair<std::string, std::string>>{{"x>y", "f"},
                                                                                {"xM>yM", "fM"},
                                                                                {"x>yL", "g"},
                                                                                {"xL^-1 M>yM", "gL^-1 M"},
                                                                                {"xL^-1 M>y", "h"},
                                                                                {"xM>yL", "hL"}})
    CHECK(edges.count(expected) == 1);

  auto t1 = twisted_rep_template(1, {PicMonomial::generator(1, 0)}, {"L"});
  std::multiset<std::string> v1(t1.vertex_labels.begin(), t1.vertex_labels.end());
  CHECK(v1 == std::multiset<std::string>{"a", "b", "bL"});
  for (const auto& e : t1.quiver.edges) CHECK(t1.vertex_labels[e.target] == "a");

  auto flat = twisted_rep_template(2, {PicMonomial::unit(2), PicMonomial::unit(2)});
  for (const auto& l : flat.vertex_labels) CHECK(l.size() == 1);
  for (const auto& l : flat.edge_labels) CHECK(l.size() == 1);
  CHECK(to_dot(t).find("xL^-1 M") != std::string::npos);
}
