#include "ccc/picsym.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace ccc::picsym {

PicMonomial PicMonomial::generator(std::size_t n, std::size_t i) {
  if (i >= n) throw PicError("generator index out of range");
  std::vector<long> e(n, 0);
  e[i] = 1;
  return PicMonomial(std::move(e));
}

bool PicMonomial::is_unit() const {
  return std::all_of(exps_.begin(), exps_.end(), [](long e) { return e == 0; });
}

std::string PicMonomial::to_string() const {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < exps_.size(); ++i) names.push_back("L" + std::to_string(i + 1));
  return to_string(names);
}

std::string PicMonomial::to_string(const std::vector<std::string>& names) const {
  if (names.size() != exps_.size()) throw PicError("name count does not match generator count");
  std::string out;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] == 0) continue;
    if (!out.empty()) out += ' ';
    out += names[i];
    if (exps_[i] != 1) out += "^" + std::to_string(exps_[i]);
  }
  return out.empty() ? "1" : out;
}

PicMonomial PicMonomial::parse(const std::string& s, std::size_t n) {
  std::istringstream in(s);
  std::string tok;
  std::vector<long> e(n, 0);
  bool any = false;
  while (in >> tok) {
    any = true;
    if (tok == "1") continue;
    auto fail = [&]() { return PicError("cannot parse Pic monomial token '" + tok + "' in '" + s + "'"); };
    if (tok.size() < 2 || tok[0] != 'L') throw fail();
    std::size_t pos = 1;
    std::size_t idx = 0;
    while (pos < tok.size() && std::isdigit(static_cast<unsigned char>(tok[pos]))) idx = idx * 10 + (tok[pos++] - '0');
    if (pos == 1 || idx == 0 || idx > n) throw fail();
    long power = 1;
    if (pos < tok.size()) {
      if (tok[pos] != '^' || pos + 1 == tok.size()) throw fail();
      try {
        std::size_t used = 0;
        power = std::stol(tok.substr(pos + 1), &used);
        if (used != tok.size() - pos - 1) throw fail();
      } catch (const std::logic_error&) {
        throw fail();
      }
    }
    e[idx - 1] += power;
  }
  if (!any) throw PicError("empty Pic monomial");
  return PicMonomial(std::move(e));
}

PicMonomial pic_mul(const PicMonomial& a, const PicMonomial& b) {
  if (a.generator_count() != b.generator_count()) throw PicError("Pic monomials have different generator counts");
  std::vector<long> e(a.exponents());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += b.exponents()[i];
  return PicMonomial(std::move(e));
}

PicMonomial pic_inv(const PicMonomial& a) { return pic_pow(a, -1); }

PicMonomial pic_pow(const PicMonomial& a, long k) {
  std::vector<long> e(a.exponents());
  for (auto& x : e) x *= k;
  return PicMonomial(std::move(e));
}

PicMonomial operator*(const PicMonomial& a, const PicMonomial& b) { return pic_mul(a, b); }

std::vector<PicMonomial> sym_expand(std::size_t k, std::size_t n) {
  std::vector<PicMonomial> out;
  std::vector<long> e(n, 0);
  // Exponent vectors of total degree d in descending lexicographic order.
  std::function<void(std::size_t, long)> rec = [&](std::size_t i, long remaining) {
    if (i + 1 >= n) {
      if (n > 0) e[n - 1] = remaining;
      if (n > 0 || remaining == 0) out.emplace_back(e);
      return;
    }
    for (long x = remaining; x >= 0; --x) {
      e[i] = x;
      rec(i + 1, remaining - x);
    }
  };
  for (std::size_t d = 0; d <= k; ++d) rec(0, static_cast<long>(d));
  return out;
}

Ikari ikari_from_bundles(const std::vector<PicMonomial>& bundles) {
  if (bundles.empty()) return {zlin::IntMatrix(0, 0)};
  const std::size_t g = bundles.front().generator_count();
  zlin::IntMatrix m(g, bundles.size());
  for (std::size_t c = 0; c < bundles.size(); ++c) {
    if (bundles[c].generator_count() != g) throw PicError("Ikari bundles have different generator counts");
    for (std::size_t r = 0; r < g; ++r) m(r, c) = bundles[c].exponents()[r];
  }
  return {m};
}

PicMonomial MonodromyData::apply(const zlin::IntVector& loop) const {
  if (loop.size() != matrix.cols()) throw PicError("loop has wrong length for monodromy");
  zlin::IntVector img = matrix * loop;
  std::vector<long> e;
  for (const auto& x : img) e.push_back(x.get_si());
  return PicMonomial(std::move(e));
}

MonodromyData monodromy(const zlin::IntMatrix& beta, const Ikari& ikari) {
  if (ikari.matrix.cols() != beta.cols())
    throw PicError("Ikari domain rank " + std::to_string(ikari.matrix.cols()) + " does not match rank L = " +
                   std::to_string(beta.cols()));
  zlin::IntMatrix m = ikari.matrix * beta.transpose();
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = -m(r, c);
  return {m};
}

zlin::Integer SymbolicBundle::rank() const {
  if (zero) return 0;
  return zlin::binomial(static_cast<long>(n + sym_power), static_cast<long>(n));
}

std::string SymbolicBundle::to_string() const {
  if (zero) return "0";
  std::string s = "a" + std::to_string(component);
  if (!prefix.is_unit()) s += " " + prefix.to_string();
  if (sym_power == 1) s += " E";
  if (sym_power > 1) s += " Sym^" + std::to_string(sym_power) + " E";
  return s;
}

SymbolicBundle sod_label(std::size_t n, std::size_t k, const Chamber& chamber) {
  if (k < 1 || k > n + 1) throw PicError("SOD component index must lie in 1..n+1");
  if (chamber.dimension() != n) throw PicError("chamber dimension does not match n");
  SymbolicBundle b;
  b.component = k;
  b.n = n;
  b.prefix = PicMonomial::unit(n);
  const std::size_t step = chamber.step();
  if (step >= k) return b;
  b.zero = false;
  b.sym_power = k - step - 1;
  if (step == 0) return b;
  if (k == 2) {
    // Second component: S at position m (1-based) carries L_{m-1} with
    // L_0 = O, and (L,...,L,1) carries L_n.
    if (chamber.slant == 1) {
      b.prefix = PicMonomial::generator(n, n - 1);
    } else {
      auto it = std::find(chamber.flags.begin(), chamber.flags.end(), Flag::S);
      std::size_t m = static_cast<std::size_t>(it - chamber.flags.begin()) + 1;
      if (m >= 2) b.prefix = PicMonomial::generator(n, m - 2);
    }
    return b;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (chamber.flags[i] == Flag::S) b.prefix = b.prefix * PicMonomial::generator(n, i);
  return b;
}

}  // namespace ccc::picsym
