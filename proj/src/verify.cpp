#include "ccc/verify.hpp"

#include <map>
#include <random>
#include <sstream>

#include "ccc/cohside.hpp"
#include "ccc/conside.hpp"
#include "ccc/skeleton.hpp"

namespace ccc::verify {

using zlin::Integer;
using zlin::IntMatrix;
using zlin::IntVector;

void CheckResult::expect(bool ok, const std::string& diff) {
  ++comparisons;
  if (!ok) {
    passed = false;
    diffs.push_back(diff);
  }
}

bool VerifyReport::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

std::string VerifyReport::to_text() const {
  std::ostringstream os;
  os << title << ": " << (passed() ? "PASS" : "FAIL") << "\n";
  for (const auto& c : checks) {
    os << "  " << (c.passed ? "PASS" : "FAIL") << " " << c.name << " (" << c.comparisons << " comparisons)\n";
    for (const auto& d : c.diffs) os << "    " << d << "\n";
  }
  return os.str();
}

nlohmann::json VerifyReport::to_json() const {
  nlohmann::json j;
  j["title"] = title;
  j["passed"] = passed();
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks)
    j["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"comparisons", c.comparisons}, {"diffs", c.diffs}});
  return j;
}

namespace {

std::string str(const std::vector<Integer>& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

IntVector one(long x) { return IntVector{Integer(x)}; }

}  // namespace

VerifyReport verify_cyclic(std::size_t n, std::size_t bound) {
  VerifyReport r;
  r.title = "cyclic quotient [A^1/mu_" + std::to_string(n) + "], bound " + std::to_string(bound);
  CheckResult c;
  c.name = "hom_graded == cyclic quiver walks";
  auto g = cohside::gamma_category(IntMatrix{{static_cast<long>(n)}}, fans::Cone(1, {one(1)}));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto h = cohside::hom_graded(g, g.project(one(static_cast<long>(i))), g.project(one(static_cast<long>(j))), bound);
      auto w = cohside::cyclic_quiver_paths(n, i, j, bound);
      c.expect(h.dims == w, "(" + std::to_string(i) + "," + std::to_string(j) + "): hom " + str(h.dims) + " vs walks " +
                                str(w));
    }
  r.checks.push_back(std::move(c));
  return r;
}

VerifyReport verify_ccc(std::size_t n) {
  VerifyReport r;
  r.title = "coherent/constructible comparison on P^" + std::to_string(n);
  const long nn = static_cast<long>(n);

  CheckResult h0;
  h0.name = "H^0(O(d)) = C(n+d,n), H^i = 0 otherwise, 0 <= d <= 4";
  for (long d = 0; d <= 4; ++d) {
    auto h = cohside::pn_line_bundle_cohomology(n, d, static_cast<std::size_t>(d));
    std::vector<Integer> want(n + 1, Integer(0));
    want[0] = zlin::binomial(nn + d, nn);
    h0.expect(h.h == want, "d=" + std::to_string(d) + ": " + str(h.h) + " vs " + str(want));
  }
  r.checks.push_back(std::move(h0));

  CheckResult hn;
  hn.name = "H^n(O(d)) = C(-d-1,n), H^i = 0 otherwise, d <= -n-1";
  for (long d = -nn - 5; d <= -nn - 1; ++d) {
    auto h = cohside::pn_line_bundle_cohomology(n, d, static_cast<std::size_t>(-d));
    std::vector<Integer> want(n + 1, Integer(0));
    want[n] = zlin::binomial(-d - 1, nn);
    hn.expect(h.h == want, "d=" + std::to_string(d) + ": " + str(h.h) + " vs " + str(want));
  }
  r.checks.push_back(std::move(hn));

  CheckResult chi;
  chi.name = "coherent Euler pairing = C(n+b-a,n) (signed continuation)";
  for (long a = -3; a <= 3; ++a)
    for (long b = -3; b <= 3; ++b) {
      Integer got = cohside::euler_pairing_coherent(n, a, b);
      Integer want = zlin::binomial(nn + b - a, nn);
      chi.expect(got == want, "(a,b)=(" + std::to_string(a) + "," + std::to_string(b) + "): " + got.get_str() +
                                  " vs " + want.get_str());
    }
  r.checks.push_back(std::move(chi));

  CheckResult gram;
  gram.name = "Euler form of Beilinson generators = coherent Euler pairing chi(O(i),O(j))";
  auto g = conside::beilinson_gram(n);
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = 0; j <= n; ++j) {
      Integer coh = cohside::euler_pairing_coherent(n, static_cast<long>(i), static_cast<long>(j));
      gram.expect(g(i, j) == coh, "entry (" + std::to_string(i) + "," + std::to_string(j) + "): constructible " +
                                      g(i, j).get_str() + " vs coherent " + coh.get_str());
    }
  r.checks.push_back(std::move(gram));

  if (n <= 2) {
    CheckResult ext;
    ext.name = "Ext between generators (bar complex) = H^*(O(j-i))";
    auto cat = conside::DirectedCategory::pn_chambers(n);
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t j = 0; j <= n; ++j) {
        auto e = conside::rep_hom(cat, conside::corepresentable(cat, i), conside::corepresentable(cat, j));
        const long d = static_cast<long>(j) - static_cast<long>(i);
        auto h = cohside::pn_line_bundle_cohomology(n, d, static_cast<std::size_t>(std::abs(d)));
        std::vector<Integer> got;
        for (auto x : e) got.emplace_back(static_cast<unsigned long>(x));
        got.resize(n + 1, Integer(0));
        ext.expect(got == h.h, "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "): Ext " + str(got) +
                                   " vs H " + str(h.h));
      }
    r.checks.push_back(std::move(ext));
  }
  return r;
}

VerifyReport verify_chambers(std::size_t n) {
  VerifyReport r;
  r.title = "chamber counts on P^" + std::to_string(n);
  const auto formula = skeleton::chamber_step_counts(n);
  const std::vector<zlin::Rational> eps{skeleton::default_epsilon(n),
                                        zlin::make_rational(1, 5 * static_cast<long>(n) + 7)};
  for (const auto& e : eps) {
    CheckResult c;
    c.name = "geometry vs formula, eps = " + e.get_str();
    std::vector<Integer> counts(n + 1, Integer(0));
    for (const auto& ch : skeleton::enumerate_chambers(n, e)) counts[ch.step()] += 1;
    c.expect(counts == formula, "geometry " + str(counts) + " vs formula " + str(formula));
    r.checks.push_back(std::move(c));
  }
  return r;
}

VerifyReport verify_kappa(const IntMatrix& beta, const fans::Cone& sigma_hat, std::size_t bound) {
  VerifyReport r;
  r.title = "kappa: beta = " + zlin::to_string(beta) + ", cone " + sigma_hat.to_string() + ", bound " +
            std::to_string(bound);
  auto rep = cohside::kappa_check(beta, sigma_hat, bound);
  CheckResult bij;
  bij.name = "torsion points <-> characters";
  bij.expect(rep.bijective, "torsion points do not hit every character exactly once");
  r.checks.push_back(std::move(bij));
  CheckResult c;
  c.name = "costandard stalk == isotypic component";
  for (const auto& e : rep.entries) {
    std::ostringstream pt;
    for (std::size_t i = 0; i < e.point.size(); ++i) pt << (i ? "," : "") << e.point[i];
    c.expect(!e.stalk.incompatible && e.stalk == e.isotypic,
             "point (" + pt.str() + "): stalk " + (e.stalk.incompatible ? "incompatible" : str(e.stalk.dims)) +
                 " vs isotypic " + str(e.isotypic.dims));
  }
  r.checks.push_back(std::move(c));
  return r;
}

VerifyReport verify_monodromy(std::size_t n) {
  VerifyReport r;
  r.title = "monodromy labels on P^" + std::to_string(n);
  std::vector<picsym::PicMonomial> pic;
  for (std::size_t i = 0; i < n; ++i) pic.push_back(picsym::PicMonomial::generator(n, i));
  const auto md = picsym::monodromy(IntMatrix::identity(n), picsym::ikari_from_bundles(pic));
  IntMatrix typical(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    typical(n - 1, i) = 1;
    if (i + 1 < n) typical(i, i) = -1;
  }
  for (const auto& [frame_name, frame] :
       std::vector<std::pair<std::string, IntMatrix>>{{"identity frame", IntMatrix::identity(n)},
                                                      {"template frame", typical}}) {
    auto q = skeleton::chamber_quiver_in_frame(n, pic, frame);
    CheckResult c;
    c.name = "path-independent transport, " + frame_name;
    auto t = skeleton::transport_labels(q, md, frame);
    c.expect(t.has_value(), "transport along two paths disagrees");
    if (t)
      for (std::size_t v = 0; v < q.vertices.size(); ++v)
        c.expect((*t)[v] == q.vertices[v].label, "vertex " + q.vertices[v].chamber.to_string() + ": transported " +
                                                      (*t)[v].to_string() + " vs stored " +
                                                      q.vertices[v].label.to_string());
    r.checks.push_back(std::move(c));

    CheckResult e;
    e.name = "edge labels constant up to translation, " + frame_name;
    std::map<std::size_t, std::pair<picsym::PicMonomial, picsym::PicMonomial>> ref;
    for (const auto& ed : q.edges) {
      auto s = picsym::pic_mul(q.vertices[ed.source].label, picsym::pic_inv(ed.label));
      auto tt = picsym::pic_mul(q.vertices[ed.target].label, picsym::pic_inv(ed.label));
      auto [it, fresh] = ref.emplace(ed.edge_class, std::make_pair(s, tt));
      if (!fresh)
        e.expect(it->second.first == s && it->second.second == tt,
                 "class " + std::to_string(ed.edge_class) + " is not a single translation orbit");
      else
        e.expect(true, "");
    }
    r.checks.push_back(std::move(e));
  }
  return r;
}

VerifyReport verify_generation(std::size_t n, std::uint64_t seed, std::size_t samples) {
  VerifyReport r;
  r.title = "generation on P^" + std::to_string(n) + ", seed " + std::to_string(seed);
  CheckResult tri;
  tri.name = "Beilinson Gram matrix is unitriangular";
  auto g = conside::beilinson_gram(n);
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const long want = i == j ? 1 : 0;
      tri.expect(g(i, j) == want, "entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " + g(i, j).get_str());
    }
  tri.expect(zlin::determinant(g) == 1, "determinant " + zlin::determinant(g).get_str());
  r.checks.push_back(std::move(tri));

  CheckResult red;
  red.name = std::to_string(samples) + " random classes reduce to zero in n+1 steps";
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> dist(-5, 5);
  const auto gens = conside::beilinson_generators(n);
  for (std::size_t s = 0; s < samples; ++s) {
    conside::DimVector d;
    for (std::size_t i = 0; i <= n; ++i) d.emplace_back(dist(rng));
    try {
      auto tr = conside::reduce_dimension_vector(n, d);
      conside::DimVector back(n + 1, Integer(0));
      for (const auto& st : tr.steps)
        for (std::size_t i = 0; i <= n; ++i) back[i] += st.coefficient * gens[st.k - 1].dims[i];
      red.expect(tr.reached_zero && tr.steps.size() == n + 1 && back == d,
                 str(d) + ": trace does not reassemble the class");
    } catch (const conside::GenerationError& e) {
      red.expect(false, str(d) + ": " + e.what());
    }
  }
  r.checks.push_back(std::move(red));
  return r;
}

}  // namespace ccc::verify
