#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lrcw/field.hpp"
#include "lrcw/gsd.hpp"
#include "lrcw/io.hpp"
#include "lrcw/lrc.hpp"

namespace lrcw::cli {

enum class Mode { Auto, Exhaustive, Sampled };

struct DesignSpec {
  std::string family;  // ag, pg, sg, cyclotomic; empty when read from a file
  std::uint32_t q1 = 0;
  unsigned beta = 2;
  std::vector<std::uint32_t> prime_powers;
  std::uint32_t e = 0;
  std::string file;
};

struct RunConfig {
  std::string command;
  std::string subcommand;
  std::vector<std::string> targets;

  std::uint32_t p = 0;
  std::uint32_t m = 1;
  std::optional<LrcParams> params;
  DesignSpec design;
  std::optional<std::vector<Elem>> S;

  std::optional<std::uint64_t> seed;
  Mode mode = Mode::Auto;
  std::size_t samples = 10'000;
  std::uint64_t exhaustive_limit = 1'000'000;
  unsigned workers = 1;

  std::string in = "-";
  std::string out = "-";
  std::string layout;
  std::string matrix;
  std::string matrix_out;
  std::string pattern;
  std::string received;
  std::string array;
  std::string goppa;

  // erasure
  std::optional<std::size_t> weight;
  std::string shape = "weight";
  std::size_t max_heavy = 2;
  std::string method = "auto";
  std::size_t d_max = 0;
  bool distance = false;
  std::optional<std::size_t> expect_d;
  std::size_t local_weight = 0;

  // gsd
  unsigned construction = 2;
  std::size_t y = 0;
  std::size_t gamma = 0;
  bool all_columns = false;
  std::size_t rows = 0;
  std::size_t data_cols = 0;
  std::size_t d = 0;
  GsdParamsInput gsd;

  // goppa
  std::size_t t = 1;
  bool splitting = false;

  // bounds
  std::int64_t n = 0, k = 0, r = 0, delta = 0, h = 0, q = 0, a = 0, bound_d = 0;

  /// Throws Error(InvalidParameter) for inconsistent combinations.
  void validate() const;
};

/// Parses argv. Usage problems are reported on `err`; the returned exit code
/// is set when the process should stop (help, usage error).
struct Parsed {
  RunConfig config;
  std::optional<int> exit_code;
};
Parsed parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Runs one command: JSON report or artifact on `out`, human summary on `err`.
/// 0 when every assertion holds, 1 on failure, 2 on configuration errors.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Bundled regression suites; each report carries "ok" and a list of checks.
json fixture_example1(unsigned workers);
json fixture_example2(unsigned workers);
json fixture_example3(unsigned workers, std::uint64_t seed);

inline constexpr std::uint64_t kFixtureSeed = 1;

}  // namespace lrcw::cli
