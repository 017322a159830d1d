#include "test_main.hpp"

#include <map>
#include <set>

#include "ccc/skeleton.hpp"

using namespace ccc;
using namespace ccc::skeleton;
using ccc::zlin::Integer;

namespace {

// Sample the open cube on a grid of spacing <= eps/4 and record the sign
// vector of every sample point that avoids the walls.
std::set<std::pair<std::string, std::size_t>> grid_chambers(std::size_t n, const Rational& eps) {
  const long p = eps.get_num().get_si(), q = eps.get_den().get_si();
  const long grid = 4 * (q / p + 1);
  // Sample x_i = (2 j_i + 1) / (2 grid); compare in units of 1 / (2 grid q).
  const long eps_units = 2 * grid * p;
  const long one = 2 * grid * q;
  std::set<std::pair<std::string, std::size_t>> seen;
  std::vector<long> j(n, 0);
  std::string flags(n, 'S');
  for (;;) {
    long sum = 0;
    bool on_wall = false;
    for (std::size_t i = 0; i < n; ++i) {
      const long x = (2 * j[i] + 1) * q;
      if (x == eps_units) on_wall = true;
      flags[i] = x < eps_units ? 'S' : 'L';
      sum += x;
    }
    if (sum % one == 0) on_wall = true;
    if (!on_wall) seen.insert({flags, static_cast<std::size_t>(sum / one)});
    std::size_t i = 0;
    while (i < n && j[i] == grid - 1) j[i++] = 0;
    if (i == n) break;
    ++j[i];
  }
  return seen;
}

std::map<std::string, std::string> labels_by_chamber(const ChamberQuiver& q, const std::vector<std::string>& names) {
  std::map<std::string, std::string> m;
  for (const auto& v : q.vertices)
    m[v.chamber.to_string() + (v.duplicate ? "'" : "")] = v.label.to_string(names);
  return m;
}

std::vector<PicMonomial> pic_LM() { return {PicMonomial::generator(2, 0), PicMonomial::generator(2, 1)}; }

}  // namespace

TEST_CASE("chamber enumeration matches the grid oracle and the closed formula") {
  for (std::size_t n = 1; n <= 4; ++n) {
    CAPTURE(n);
    auto chambers = enumerate_chambers(n);
    std::set<std::pair<std::string, std::size_t>> exact;
    for (const auto& c : chambers) exact.insert({c.flag_string(), c.slant});
    CHECK(exact.size() == chambers.size());
    CHECK(exact == grid_chambers(n, default_epsilon(n)));

    auto formula = chamber_step_counts(n);
    std::vector<Integer> hist(n + 1, Integer(0));
    for (const auto& c : chambers) hist.at(c.step()) += 1;
    CHECK(hist == formula);

    auto other = enumerate_chambers(n, zlin::make_rational(1, 4 * static_cast<long>(n) + 4));
    CHECK(other == chambers);
  }
  CHECK(chamber_step_counts(1) == std::vector<Integer>{1, 1});
  CHECK(chamber_step_counts(2) == std::vector<Integer>{1, 3, 3});
  CHECK(chamber_step_counts(3) == std::vector<Integer>{1, 4, 7, 7});
  CHECK(chamber_step_counts(4)[2] == 11);
  CHECK(enumerate_chambers(2).size() == 7);
  CHECK(enumerate_chambers(3).size() == 19);
}

TEST_CASE("untwisted chamber quiver for P^2") {
  auto q = chamber_quiver(2);
  CHECK(q.vertices.size() == 7);
  CHECK(q.edges.size() == 9);
  for (const auto& v : q.vertices) CHECK(v.label.is_unit());
  std::set<std::pair<std::string, std::string>> arrows;
  for (const auto& e : q.edges)
    arrows.insert({q.vertices[e.source].chamber.to_string(), q.vertices[e.target].chamber.to_string()});
  std::set<std::pair<std::string, std::string>> expected{
      {"(S,S,0)", "(L,S,0)"}, {"(S,S,0)", "(S,L,0)"}, {"(S,L,1)", "(L,L,1)"},
      {"(L,S,1)", "(L,L,1)"}, {"(L,S,1)", "(L,S,0)"}, {"(S,L,1)", "(S,L,0)"},
      {"(L,S,0)", "(L,L,0)"}, {"(S,L,0)", "(L,L,0)"}, {"(L,L,1)", "(L,L,0)"}};
  CHECK(arrows == expected);
}

TEST_CASE("chamber quiver invariants") {
  for (std::size_t n = 1; n <= 4; ++n) {
    CAPTURE(n);
    auto q = chamber_quiver(n);
    CHECK(is_acyclic(q));
    CHECK(longest_path_length(q) == n);
    std::vector<bool> has_out(q.vertices.size(), false);
    for (const auto& e : q.edges) {
      CHECK(q.vertices[e.source].chamber.step() == q.vertices[e.target].chamber.step() + 1);
      has_out[e.source] = true;
    }
    for (std::size_t v = 0; v < q.vertices.size(); ++v)
      CHECK(has_out[v] == (q.vertices[v].chamber.step() != 0));
    CHECK(q.vertices[q.center()].label.is_unit());
  }
}

TEST_CASE("twisted labels for P^2 reproduce the comparison figure") {
  auto q = chamber_quiver(2, pic_LM());
  auto m = labels_by_chamber(q, {"L", "M"});
  CHECK(m["(S,S,0)"] == "1");       // a
  CHECK(m["(L,S,1)"] == "L");       // aL
  CHECK(m["(S,L,1)"] == "M");       // aM
  CHECK(m["(L,S,0)"] == "1");       // b
  CHECK(m["(L,L,1)"] == "M");       // bM
  CHECK(m["(S,L,0)"] == "L^-1 M");  // bL^-1M
  CHECK(m["(L,L,0)"] == "1");       // c
}

TEST_CASE("P^1 quiver with the boundary copy") {
  auto q = chamber_quiver(1, {PicMonomial::generator(1, 0)});
  REQUIRE(q.vertices.size() == 3);
  CHECK(q.edges.size() == 2);
  auto m = labels_by_chamber(q, {"L"});
  CHECK(m["(L,0)"] == "1");
  CHECK(m["(S,0)"] == "1");
  CHECK(m["(S,0)'"] == "L");
  for (const auto& e : q.edges) CHECK(e.target == q.center());
}

TEST_CASE("edge labels are translation compatible") {
  for (std::size_t n = 1; n <= 3; ++n) {
    std::vector<PicMonomial> pic;
    for (std::size_t i = 0; i < n; ++i) pic.push_back(PicMonomial::generator(n, i));
    auto q = chamber_quiver(n, pic);
    // label(source) / edge label and label(target) / edge label are constant per class.
    std::map<std::size_t, std::pair<PicMonomial, PicMonomial>> ref;
    for (const auto& e : q.edges) {
      PicMonomial s = q.vertices[e.source].label * picsym::pic_inv(e.label);
      PicMonomial t = q.vertices[e.target].label * picsym::pic_inv(e.label);
      auto [it, fresh] = ref.emplace(e.edge_class, std::make_pair(s, t));
      if (!fresh) {
        CHECK(it->second.first == s);
        CHECK(it->second.second == t);
      }
    }
  }
}

TEST_CASE("labels are path independent under monodromy transport") {
  for (std::size_t n = 1; n <= 3; ++n) {
    std::vector<PicMonomial> pic;
    for (std::size_t i = 0; i < n; ++i) pic.push_back(PicMonomial::generator(n, i));
    auto q = chamber_quiver(n, pic);
    auto md = picsym::monodromy(zlin::IntMatrix::identity(n), picsym::ikari_from_bundles(pic));
    auto t = transport_labels(q, md, zlin::IntMatrix::identity(n));
    REQUIRE(t.has_value());
    for (std::size_t v = 0; v < q.vertices.size(); ++v) CHECK((*t)[v] == q.vertices[v].label);
  }
}

TEST_CASE("fltz components") {
  auto p1 = fltz_components(fans::trivial_stacky(fans::standard_fan({fans::FanKind::Pn, 1, 0})));
  REQUIRE(p1.size() == 3);
  for (const auto& c : p1) CHECK(c.character == RatVector{0});
  CHECK(p1[0].base_subspace.size() == 1);
  CHECK(p1[1].base_subspace.empty());

  auto p2f = fans::standard_fan({fans::FanKind::Pn, 2, 0});
  CHECK(fltz_components(fans::trivial_stacky(p2f)).size() == p2f.cones().size());

  fans::Fan half = fans::fan_from_max_cones(1, {fans::Cone(1, {{1}})});
  for (long n = 1; n <= 5; ++n) {
    auto comps = fltz_components(fans::make_stacky(zlin::IntMatrix{{n}}, half));
    REQUIRE(comps.size() == static_cast<std::size_t>(n) + 1);
    std::set<Rational> chars;
    for (std::size_t i = 1; i < comps.size(); ++i) chars.insert(comps[i].character[0]);
    std::set<Rational> expected;
    for (long i = 0; i < n; ++i) expected.insert(zlin::make_rational(i, n));
    CHECK(chars == expected);
  }
  // Non-full-dimensional cone of a genuinely stacky fan.
  fans::Fan ray2 = fans::fan_from_max_cones(2, {fans::Cone(2, {{1, 0}})});
  CHECK_THROWS_AS(fltz_components(fans::make_stacky(zlin::IntMatrix{{2, 0}, {0, 1}}, ray2)), UnsupportedError);
}

TEST_CASE("affine strata posets") {
  auto p1 = strata_poset_affine(fans::Cone(1, {{1}}));
  CHECK(p1.strata.size() == 3);
  CHECK(p1.quiver_vertex_count == 2);
  CHECK(p1.quiver_arrows.size() == 1);
  // c is below l and r, l and r incomparable.
  CHECK(p1.leq[1][0]);
  CHECK(p1.leq[1][2]);
  CHECK_FALSE(p1.leq[0][2]);
  CHECK(p1.collapse == std::vector<std::size_t>{1, 0, 1});

  auto p0 = strata_poset_affine(fans::Cone(2));
  CHECK(p0.strata.size() == 1);
  CHECK(p0.quiver_vertex_count == 1);

  auto p2 = strata_poset_affine(fans::Cone(2, {{1, 0}, {0, 1}}));
  CHECK(p2.strata.size() == 9);
  CHECK(p2.quiver_vertex_count == 4);
  CHECK(p2.quiver_arrows.size() == 4);
  // Collapse is order preserving.
  for (std::size_t a = 0; a < 9; ++a)
    for (std::size_t b = 0; b < 9; ++b)
      if (p2.leq[a][b]) CHECK((p2.collapse[a] & ~p2.collapse[b]) == 0);

  CHECK_THROWS_AS(strata_poset_affine(fans::Cone(2, {{0, 1}, {2, -1}})), UnsupportedError);
}

TEST_CASE("serialization") {
  auto q = chamber_quiver(2, pic_LM());
  auto j = to_json(q);
  CHECK(j["chambers"].size() == 7);
  CHECK(j["edges"].size() == 9);
  auto back = quiver_from_json(j);
  CHECK(back == q);
  CHECK(to_json(back) == j);
  auto q1 = chamber_quiver(1);
  CHECK(quiver_from_json(to_json(q1)) == q1);

  auto mu3 = fltz_components(fans::make_stacky(zlin::IntMatrix{{3}}, fans::standard_fan({fans::FanKind::AkGm, 1, 1})));
  auto cj = to_json(mu3, 1);
  CHECK(components_from_json(cj) == mu3);
  CHECK(to_json(components_from_json(cj), 1) == cj);

  auto dot = to_dot(q);
  CHECK(dot.find("digraph") == 0);
  std::size_t arrows = 0;
  for (std::size_t p = dot.find("->"); p != std::string::npos; p = dot.find("->", p + 1)) ++arrows;
  CHECK(arrows == 9);

  auto svg = emit_svg(q);
  std::size_t polys = 0;
  for (std::size_t p = svg.find("class=\"chamber\""); p != std::string::npos; p = svg.find("class=\"chamber\"", p + 1))
    ++polys;
  CHECK(polys == 7);
  CHECK(svg == emit_svg(chamber_quiver(2, pic_LM())));
  CHECK_THROWS_AS(emit_svg(chamber_quiver(3)), UnsupportedError);

  auto p1 = fltz_components(fans::trivial_stacky(fans::standard_fan({fans::FanKind::Pn, 1, 0})));
  auto s1 = emit_svg(p1, 1);
  auto count = [](const std::string& s, const std::string& needle) {
    std::size_t c = 0;
    for (std::size_t p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++c;
    return c;
  };
  CHECK(count(s1, "class=\"zero-section\"") == 1);
  CHECK(count(s1, "class=\"hair\"") == 2);
  fans::Fan half = fans::fan_from_max_cones(1, {fans::Cone(1, {{1}})});
  auto s3 = emit_svg(fltz_components(fans::make_stacky(zlin::IntMatrix{{3}}, half)), 1);
  CHECK(count(s3, "class=\"character\"") == 3);
}
