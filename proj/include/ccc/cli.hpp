#pragma once

// Command-line surface: a parsed RunConfig is executed against the library
// and reports through the given streams. Exit codes: 0 pass, 1 verification
// failure, 2 input error.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "ccc/picsym.hpp"
#include "ccc/verify.hpp"

namespace ccc::cli {

enum ExitCode : int { kPass = 0, kVerificationFailure = 1, kInputError = 2 };

struct RunConfig {
  std::string subcommand;   // fan-info | skeleton | hom | verify | quiver
  std::string input_path;   // fan JSON file
  std::string inline_json;  // fan JSON given on the command line
  std::size_t bound = 10;
  std::string output_path;  // stdout when empty
  std::string format;       // json | dot | svg | text; empty picks the subcommand default
  std::size_t n = 2;
  std::string side = "coh";  // hom: coh | con
  std::string from = "0";
  std::string to = "0";
  std::string what;  // verify: ccc | kappa | chambers | monodromy | generation
  std::uint64_t seed = verify::kDefaultSeed;
  std::string pic;  // quiver: comma-separated names, "1" for the unit
  bool template_labels = false;
};

/// Throws std::invalid_argument describing the first problem.
void validate(const RunConfig& cfg);

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// "L,M" -> bundles over the free group on the distinct names; "1" is the unit.
std::pair<std::vector<picsym::PicMonomial>, std::vector<std::string>> parse_pic(const std::string& spec,
                                                                               std::size_t n);

/// Writes via a temporary file in the same directory and a rename.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace ccc::cli
