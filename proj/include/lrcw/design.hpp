#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace lrcw {

/// Point set {0..num_points-1} with a list of blocks. Every block is sorted
/// ascending. `labels` optionally maps each point to its algebraic description.
struct Design {
  std::size_t num_points = 0;
  unsigned tau = 2;
  unsigned block_size = 0;
  std::vector<std::vector<std::size_t>> blocks;
  std::optional<std::size_t> regularity;  // advertised replication number
  bool steiner = false;                   // advertised exact cover
  std::vector<std::string> labels;
};

struct DesignReport {
  bool well_formed = false;  // blocks have block_size distinct in-range points
  bool is_packing = false;
  bool is_steiner = false;
  std::optional<std::size_t> regularity;  // nullopt = not regular
  bool sampled = false;
  std::uint64_t seed = 0;
  std::uint64_t subsets_checked = 0;
};

/// (2, q1, q1^beta) Steiner system: points of AG(beta, q1), blocks its lines.
Design ag_steiner(std::uint32_t q1, unsigned beta);
/// (2, q1+1, (q1^{beta+1}-1)/(q1-1)) Steiner system from PG(beta, q1).
Design pg_steiner(std::uint32_t q1, unsigned beta);
/// (3, q1+1, q1^beta+1) Steiner system: images of the subline F_{q1} u {inf}
/// under the Moebius group of F_{q1^beta}. Point q1^beta is infinity.
Design sg_steiner(std::uint32_t q1, unsigned beta);
/// Regular 2-(e*n2, e, 1) packing from cyclotomic classes over a product of
/// fields F_{q_1} x .. x F_{q_u}. Point (j, eps) has label j*n2 + mixed-radix(eps).
Design cyclotomic_packing(const std::vector<std::uint32_t>& prime_powers, std::uint32_t e);

/// Exhaustive when the tau-subsets inside blocks number at most `exhaustive_limit`;
/// otherwise samples `samples` random tau-subsets of points with the given seed.
DesignReport verify_design(const Design& d, std::uint64_t exhaustive_limit = 1'000'000,
                           std::uint64_t samples = 100'000, std::uint64_t seed = 1);

/// Nested-floor Johnson bound on the block count of a (tau+1)-(n1, t, 1) packing.
std::uint64_t johnson_bound(std::uint64_t n1, std::uint64_t t, std::uint64_t tau);

/// Saturates at 2^64-1.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

// Text format: "n tau t" then one block per line.
void write_design(std::ostream& os, const Design& d);
Design read_design(std::istream& is);

}  // namespace lrcw
