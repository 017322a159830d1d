#include "ccc/chamber.hpp"

#include <algorithm>
#include <stdexcept>

namespace ccc {

std::size_t Chamber::small_count() const {
  return static_cast<std::size_t>(std::count(flags.begin(), flags.end(), Flag::S));
}

std::string Chamber::flag_string() const {
  std::string s;
  for (Flag f : flags) s.push_back(f == Flag::S ? 'S' : 'L');
  return s;
}

std::string Chamber::to_string() const {
  std::string s = "(";
  for (Flag f : flags) {
    s.push_back(f == Flag::S ? 'S' : 'L');
    s.push_back(',');
  }
  return s + std::to_string(slant) + ")";
}

Chamber Chamber::parse(const std::string& flags, std::size_t slant) {
  Chamber c;
  for (char ch : flags) {
    if (ch == 'S')
      c.flags.push_back(Flag::S);
    else if (ch == 'L')
      c.flags.push_back(Flag::L);
    else
      throw std::invalid_argument("chamber flags must be S or L, got '" + flags + "'");
  }
  c.slant = slant;
  return c;
}

std::strong_ordering operator<=>(const Chamber& a, const Chamber& b) {
  if (auto c = a.step() <=> b.step(); c != 0) return c;
  if (auto c = a.flag_string() <=> b.flag_string(); c != 0) return c;
  return a.slant <=> b.slant;
}

}  // namespace ccc
