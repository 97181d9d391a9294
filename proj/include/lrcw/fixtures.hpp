#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "lrcw/goppa.hpp"
#include "lrcw/lrc.hpp"
#include "lrcw/matrix.hpp"

namespace lrcw::fixtures {

/// FNV-1a, 64 bit.
std::uint64_t fnv1a(std::string_view bytes);

inline constexpr std::uint64_t kExample1Checksum = 0x8a5a7a32d7722fa1ull;
inline constexpr std::uint64_t kExample2Checksum = 0x801396374b3f8e07ull;

/// Verbatim printed parity-check matrices (matrix text format).
std::string_view example1_text();
std::string_view example2_text();

/// Parsed after checking the stored checksum (Parse error on mismatch).
Matrix example1_H();
Matrix example2_H();

/// Sets {3,6,5}+i over Z_7 inside F_11, r = delta = 2, h = 3.
EvaluationLayout example1_layout(std::vector<Elem> S = {7, 8, 9});
/// AG(2,3) lines embedded in F_13, r = delta = 2, v = 2, h = 4: a [40,24] code.
EvaluationLayout ag13_layout();
/// PG(2,8) lines embedded in F_79, r = 7, delta = 3, v = 1, h = 6: a [657,505] code.
EvaluationLayout example3_layout();

/// F_16, G1 = x, G2 the first irreducible x^2 + x + c, S_1 = {1,2,3}, S_2 = {4,5,6},
/// and S_last = {7,8} when with_last: [6,2] or [8,4] with r = delta = h = 2.
GoppaParams goppa_small(bool with_last);

}  // namespace lrcw::fixtures
