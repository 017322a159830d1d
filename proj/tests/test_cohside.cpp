#include "test_main.hpp"

#include <algorithm>
#include <map>

#include "ccc/cohside.hpp"
#include "random.hpp"

using namespace ccc::cohside;
using ccc::fans::Cone;
using ccc::zlin::Rational;
using ccc::zlin::RatMatrix;

namespace {

IntVector v(std::initializer_list<long> xs) {
  IntVector out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

std::vector<Integer> ints(std::initializer_list<long> xs) {
  std::vector<Integer> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

Cone orthant(std::size_t n, std::size_t k) {
  std::vector<IntVector> gens;
  for (std::size_t i = 0; i < k; ++i) {
    IntVector e(n, Integer(0));
    e[i] = 1;
    gens.push_back(e);
  }
  return Cone(n, gens);
}

GammaCategory cyclic(long n) { return gamma_category(IntMatrix{{n}}, orthant(1, 1)); }

// Signed binomial oracle for H^i(P^n, O(d)).
std::vector<Integer> pn_oracle(std::size_t n, long d) {
  std::vector<Integer> h(n + 1, Integer(0));
  const long nn = static_cast<long>(n);
  if (d >= 0) h[0] = ccc::zlin::binomial(nn + d, nn);
  if (d <= -nn - 1) h[n] = ccc::zlin::binomial(-d - 1, nn);
  return h;
}

}  // namespace

TEST_CASE("cyclic quotient: group, projection and hom examples") {
  auto g = cyclic(3);
  CHECK(g.group.describe() == "Z/3");
  CHECK(g.group.torsion_order() == 3);
  for (long i = 0; i < 6; ++i) CHECK(g.project(v({i})).components == ints({i % 3}));
  // hom(0, 1) lives in weights 1, 4, 7 (u = 3 * m for m in {1/3, 4/3, 7/3}).
  auto h = hom_graded(g, g.project(v({0})), g.project(v({1})), 8);
  CHECK(h.dims == ints({0, 1, 0, 0, 1, 0, 0, 1, 0}));
  for (const auto& chi : g.objects()) CHECK(hom_graded(g, chi, chi, 0).dims == ints({1}));
}

TEST_CASE("trivial stacky data: monoid counts") {
  auto line = gamma_category(IntMatrix{{1}}, orthant(1, 1));
  CHECK(line.group.is_trivial());
  CHECK(hom_graded(line, line.zero(), line.zero(), 4).dims == ints({1, 1, 1, 1, 1}));
  auto plane = gamma_category(IntMatrix::identity(2), orthant(2, 2));
  CHECK(hom_graded(plane, plane.zero(), plane.zero(), 3).dims == ints({1, 2, 3, 4}));
}

TEST_CASE("cyclic quiver paths") {
  CHECK(cyclic_quiver_paths(3, 0, 1, 7) == ints({0, 1, 0, 0, 1, 0, 0, 1}));
  CHECK(cyclic_quiver_paths(2, 0, 0, 6) == ints({1, 0, 1, 0, 1, 0, 1}));
  CHECK(cyclic_quiver_paths(5, 3, 3, 0) == ints({1}));
  CHECK_THROWS_AS(cyclic_quiver_paths(3, 3, 0, 2), std::invalid_argument);
}

TEST_CASE("hom_graded on the cyclic quotient equals walk counts") {
  for (long n = 1; n <= 6; ++n) {
    auto g = cyclic(n);
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) {
        auto h = hom_graded(g, g.project(v({i})), g.project(v({j})), 12);
        CHECK(h.dims == cyclic_quiver_paths(n, i, j, 12));
      }
  }
}

TEST_CASE("isotypic components partition the monoid algebra") {
  std::vector<std::pair<IntMatrix, Cone>> cases = {
      {IntMatrix{{3}}, orthant(1, 1)},
      {IntMatrix{{1, 1}, {-1, 1}}, orthant(2, 2)},
      {IntMatrix{{2, 0}, {0, 2}}, orthant(2, 2)},
      {IntMatrix{{1, 0}, {1, 3}}, orthant(2, 2)},
      {IntMatrix{{1, 0}, {0, 1}}, Cone(2, {v({1, 0}), v({1, 2})})},
  };
  for (const auto& [beta, cone] : cases) {
    auto g = gamma_category(beta, cone);
    for (std::size_t bound = 0; bound <= 6; ++bound) {
      std::vector<Integer> sum(bound + 1, Integer(0));
      for (const auto& chi : g.objects()) {
        auto d = isotypic_component(g, chi, bound);
        for (std::size_t k = 0; k <= bound; ++k) sum[k] += d.dims[k];
      }
      std::vector<Integer> all(bound + 1, Integer(0));
      for (const auto& q : g.monoid.elements_up_to(bound)) all[g.monoid.weight_of(q).get_ui()] += 1;
      CHECK(sum == all);
    }
  }
}

TEST_CASE("isotypic components: cyclic and product examples") {
  auto g = cyclic(3);
  CHECK(isotypic_component(g, g.zero(), 6).dims == ints({1, 0, 0, 1, 0, 0, 1}));
  // chi = 2 is supported on m in {2/3, 5/3, 8/3}, i.e. weights 2, 5, 8.
  CHECK(isotypic_component(g, g.project(v({2})), 8).dims == ints({0, 0, 1, 0, 0, 1, 0, 0, 1}));

  // [A^1/mu_2]^2: each component is the degreewise convolution of two 1D answers.
  auto one = cyclic(2);
  const std::size_t bound = 8;
  std::vector<std::vector<Integer>> oned;
  for (const auto& chi : one.objects()) oned.push_back(isotypic_component(one, chi, bound).dims);
  std::vector<std::vector<Integer>> expected;
  for (const auto& a : oned)
    for (const auto& b : oned) {
      std::vector<Integer> c(bound + 1, Integer(0));
      for (std::size_t i = 0; i <= bound; ++i)
        for (std::size_t j = 0; i + j <= bound; ++j) c[i + j] += a[i] * b[j];
      expected.push_back(c);
    }
  auto prod = gamma_category(IntMatrix{{2, 0}, {0, 2}}, orthant(2, 2));
  std::vector<std::vector<Integer>> got;
  for (const auto& chi : prod.objects()) got.push_back(isotypic_component(prod, chi, bound).dims);
  std::sort(expected.begin(), expected.end());
  std::sort(got.begin(), got.end());
  CHECK(got == expected);
}

TEST_CASE("composition lands in the right hom set and weights add") {
  auto g = gamma_category(IntMatrix{{1, 1}, {-1, 1}}, orthant(2, 2));
  CHECK(g.group.describe() == "Z/2");
  auto elems = g.monoid.elements_up_to(5);
  for (const auto& m1 : elems)
    for (const auto& m2 : elems) {
      IntVector s(2);
      for (std::size_t i = 0; i < 2; ++i) s[i] = m1[i] + m2[i];
      CHECK(g.monoid.contains(s));
      CHECK(g.monoid.weight_of(s) == g.monoid.weight_of(m1) + g.monoid.weight_of(m2));
      CHECK(g.project(s) == ccc::zlin::add(g.group, g.project(m1), g.project(m2)));
    }
}

TEST_CASE("index-2 quotient: monoid matches brute force over the character cosets") {
  // [A^2/mu_2]: points of sigma^v cap (r + Z^2) for each coset r of M in M_{sigma,beta}.
  IntMatrix beta{{1, 1}, {-1, 1}};
  Cone sigma_hat = orthant(2, 2);
  auto g = gamma_category(beta, sigma_hat);
  RatMatrix super = ccc::zlin::inverse(ccc::zlin::to_rational(beta.transpose()));
  auto cq = ccc::zlin::character_quotient(super, RatMatrix::identity(2));
  REQUIRE(cq.representatives.size() == 2);
  const long bound = 6;
  // sigma = cone((1,-1), (1,1)); weight w = beta * (1,1) = (2, 0).
  std::map<std::pair<std::size_t, long>, long> brute;
  for (std::size_t c = 0; c < cq.representatives.size(); ++c) {
    const auto& r = cq.representatives[c];
    for (long a = -bound; a <= bound; ++a)
      for (long b = -bound; b <= bound; ++b) {
        Rational x = r[0] + a, y = r[1] + b;
        if (x - y < 0 || x + y < 0) continue;
        Rational deg = 2 * x;
        if (deg > bound) continue;
        REQUIRE(deg.get_den() == 1);
        brute[{c, deg.get_num().get_si()}] += 1;
      }
  }
  // Match the cosets to characters through beta^T r.
  for (std::size_t c = 0; c < cq.representatives.size(); ++c) {
    RatVector u = ccc::zlin::to_rational(beta.transpose()) * cq.representatives[c];
    IntVector ui{u[0].get_num(), u[1].get_num()};
    auto dims = isotypic_component(g, g.project(ui), bound);
    for (long d = 0; d <= bound; ++d) CHECK(dims.dims[d] == brute[{c, d}]);
  }
}

TEST_CASE("non-full-dimensional cones") {
  auto g = gamma_category(IntMatrix::identity(3), orthant(3, 2));
  CHECK(g.reduced);
  CHECK(isotypic_component(g, g.zero(), 3).dims == ints({1, 2, 3, 4}));
  CHECK_THROWS_AS(gamma_category(IntMatrix{{2, 0}, {0, 1}}, orthant(2, 1)), ccc::UnsupportedError);
}

TEST_CASE("costandard stalks") {
  // sigma = R>=0, chi = 0 matches the untwisted component of A^1.
  auto line = gamma_category(IntMatrix{{1}}, orthant(1, 1));
  CHECK(costandard_stalk(orthant(1, 1), RatVector{Rational(0)}, v({1}), 5) ==
        isotypic_component(line, line.zero(), 5));
  // sigma = {0}: one point in degree 0.
  auto zero = costandard_stalk(Cone(2), RatVector(2), v({0, 0}), 3);
  CHECK(zero.dims == ints({1, 0, 0, 0}));
  // Cosets i/3 + Z partition (1/3)Z>=0 (weight 3 on the image ray).
  std::vector<Integer> sum(10, Integer(0));
  for (long i = 0; i < 3; ++i) {
    auto s = costandard_stalk(orthant(1, 1), RatVector{ccc::zlin::make_rational(i, 3)}, v({3}), 9);
    for (std::size_t k = 0; k < 10; ++k) {
      CHECK(s.dims[k] <= 1);
      if (s.dims[k] == 1) CHECK(static_cast<long>(k) % 3 == i);
      sum[k] += s.dims[k];
    }
  }
  CHECK(sum == std::vector<Integer>(10, Integer(1)));
  // A point that is not a torsion point of the stacky data is flagged.
  auto bad = costandard_stalk(orthant(1, 1), RatVector{ccc::zlin::make_rational(1, 2)}, v({3}), 4);
  CHECK(bad.incompatible);
  CHECK(bad.dims.empty());
}

TEST_CASE("kappa identification") {
  for (long n = 1; n <= 6; ++n) {
    auto rep = kappa_check(IntMatrix{{n}}, orthant(1, 1), 12);
    CHECK(rep.entries.size() == static_cast<std::size_t>(n));
    CHECK(rep.ok());
  }
  for (std::size_t n = 1; n <= 3; ++n)
    for (std::size_t k = 0; k <= n; ++k) {
      auto rep = kappa_check(IntMatrix::identity(n), orthant(n, k), 10);
      CHECK(rep.ok());
    }
  CHECK(kappa_check(IntMatrix{{1, 1}, {-1, 1}}, orthant(2, 2), 8).ok());
  CHECK(kappa_check(IntMatrix{{1, 0}, {1, 3}}, orthant(2, 2), 8).ok());
}

TEST_CASE("line bundle cohomology on projective space") {
  CHECK(pn_line_bundle_cohomology(1, 2, 2).h == ints({3, 0}));
  CHECK(pn_line_bundle_cohomology(2, 0, 0).h == ints({1, 0, 0}));
  CHECK(pn_line_bundle_cohomology(1, -2, 2).h == ints({0, 1}));
  CHECK_THROWS_AS(pn_line_bundle_cohomology(2, 3, 2), ccc::UnsupportedError);
  for (std::size_t n = 1; n <= 3; ++n)
    for (long d = -6; d <= 4; ++d) {
      const std::size_t box = static_cast<std::size_t>(std::abs(d));
      auto h = pn_line_bundle_cohomology(n, d, box);
      CHECK(h.h == pn_oracle(n, d));
      // A larger box must not change the answer.
      if (n <= 2) CHECK(pn_line_bundle_cohomology(n, d, box + 2).h == h.h);
      auto dual = pn_line_bundle_cohomology(n, -d - static_cast<long>(n) - 1,
                                            static_cast<std::size_t>(std::abs(d + static_cast<long>(n) + 1)));
      CHECK(h.h[n] == dual.h[0]);
    }
}

TEST_CASE("coherent Euler pairing") {
  CHECK(euler_pairing_coherent(2, 0, 1) == 3);
  CHECK(euler_pairing_coherent(3, 4, 4) == 1);
  CHECK(euler_pairing_coherent(1, 0, -2) == -1);
  for (std::size_t n = 1; n <= 3; ++n)
    for (long a = -3; a <= 3; ++a)
      for (long b = -3; b <= 3; ++b)
        CHECK(euler_pairing_coherent(n, a, b) == ccc::zlin::binomial(static_cast<long>(n) + b - a, n));
}
