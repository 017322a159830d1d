#pragma once

// Comparison suites shared by the `verify` subcommand and the acceptance
// runner. Each check compares two independent computations exactly and keeps
// a human-readable diff for every mismatch.

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ccc/fans.hpp"
#include "ccc/zlin.hpp"

namespace ccc::verify {

constexpr std::uint64_t kDefaultSeed = 0x5eed2024;

struct CheckResult {
  std::string name;
  bool passed = true;
  std::vector<std::string> diffs;
  std::size_t comparisons = 0;

  /// Records one comparison; a mismatch appends `diff`.
  void expect(bool ok, const std::string& diff);
};

struct VerifyReport {
  std::string title;
  std::vector<CheckResult> checks;

  bool passed() const;
  std::string to_text() const;
  nlohmann::json to_json() const;
};

/// hom_graded on [A^1/mu_n] against walk counts on the cyclic quiver.
VerifyReport verify_cyclic(std::size_t n, std::size_t bound);
/// Line bundle cohomology against binomials, and the coherent Euler pairing
/// against the Gram matrix of the Beilinson generators (and, for n <= 2,
/// against Ext computed by the bar complex).
VerifyReport verify_ccc(std::size_t n);
/// Geometric chamber counts against the closed formula, for two epsilons.
VerifyReport verify_chambers(std::size_t n);
/// Costandard stalks against isotypic components for every torsion point.
VerifyReport verify_kappa(const zlin::IntMatrix& beta, const fans::Cone& sigma_hat, std::size_t bound);
/// Monodromy transport is path independent and edge labels are compatible
/// with translation, for the identity frame and the twisted template frame.
VerifyReport verify_monodromy(std::size_t n);
/// Random dimension vectors reduce to zero; the Gram matrix is unitriangular.
VerifyReport verify_generation(std::size_t n, std::uint64_t seed, std::size_t samples = 100);

}  // namespace ccc::verify
