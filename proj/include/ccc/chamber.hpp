#pragma once

// A chamber of the perturbed P^n skeleton inside the unit cube: a flag per
// coordinate (S: x_i < eps, L: x_i > eps) and a slant a with a < sum x < a+1.

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace ccc {

enum class Flag { S, L };

struct Chamber {
  std::vector<Flag> flags;
  std::size_t slant = 0;

  std::size_t dimension() const { return flags.size(); }
  std::size_t small_count() const;
  /// Number of walls separating the chamber from the center: #S + slant.
  std::size_t step() const { return small_count() + slant; }
  std::string flag_string() const;
  std::string to_string() const;  // e.g. "(S,L,0)"

  static Chamber parse(const std::string& flags, std::size_t slant);

  friend bool operator==(const Chamber&, const Chamber&) = default;
  friend std::strong_ordering operator<=>(const Chamber& a, const Chamber& b);
};

}  // namespace ccc
