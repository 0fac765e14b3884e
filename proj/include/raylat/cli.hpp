#pragma once

#include "raylat/interval.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace raylat {

enum ExitCode : int { kPass = 0, kVerificationFailure = 1, kInputError = 2 };

enum class Method { Lattice, Oracle, Both };
enum class Format { Tsv, Json };

struct RunConfig {
  std::string field_path;
  std::string modulus = "unit";
  std::string class_spec = "all";  // "all" or an ideal "p:i:e,..." in the target class
  std::vector<Int> xs;
  Method method = Method::Both;
  PrecisionPolicy policy;
  int jobs = 1;
  Format format = Format::Tsv;
  std::string output;  // empty writes to stdout
};

/// Parses "10,100,1000"; every entry must be a positive integer.
std::vector<Int> parse_grid(const std::string& text);

int cmd_validate(const RunConfig& config, std::ostream& out);
int cmd_constants(const RunConfig& config, std::ostream& out);
int cmd_count(const RunConfig& config, std::ostream& out);
int cmd_verify(const RunConfig& config, std::ostream& out);
int cmd_census(const RunConfig& config, std::ostream& out);

/// Full command line including the subcommand. Errors go to err with their
/// module-qualified code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace raylat
