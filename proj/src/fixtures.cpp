#include "lrcw/fixtures.hpp"

#include "lrcw/design.hpp"
#include "lrcw/error.hpp"

namespace lrcw::fixtures {

namespace data {
extern const std::string_view example1_H;
extern const std::string_view example2_H;
}  // namespace data

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string_view example1_text() { return data::example1_H; }
std::string_view example2_text() { return data::example2_H; }

namespace {

Matrix checked(std::string_view text, std::uint64_t sum, const char* name) {
  require(fnv1a(text) == sum, ErrorKind::Parse, std::string(name) + " fixture checksum mismatch");
  return matrix_from_text(std::string(text));
}

}  // namespace

Matrix example1_H() { return checked(example1_text(), kExample1Checksum, "example1"); }
Matrix example2_H() { return checked(example2_text(), kExample2Checksum, "example2"); }

EvaluationLayout example1_layout(std::vector<Elem> S) {
  LrcParams p{.r = 2, .delta = 2, .ell = 6, .v = 2, .h = 3};
  std::vector<std::vector<Elem>> sets;
  for (Elem i = 0; i < 7; ++i) sets.push_back({(3 + i) % 7, (6 + i) % 7, (5 + i) % 7});
  return build_layout(p, FiniteField::make(11), std::move(sets), std::move(S));
}

EvaluationLayout ag13_layout() {
  LrcParams p{.r = 2, .delta = 2, .ell = 11, .v = 2, .h = 4};
  return build_layout(p, FiniteField::make(13), ag_steiner(3, 2));
}

EvaluationLayout example3_layout() {
  LrcParams p{.r = 7, .delta = 3, .ell = 72, .v = 1, .h = 6};
  return build_layout(p, FiniteField::make(79), pg_steiner(8, 2));
}

GoppaParams goppa_small(bool with_last) {
  GoppaParams P;
  P.field = FiniteField::make(2, 4);
  P.G1 = Poly({0, 1});
  for (Elem c = 1;; ++c) {
    P.G2 = Poly({c, 1, 1});
    if (poly::roots(*P.field, P.G2).empty()) break;
  }
  P.sets = {{1, 2, 3}, {4, 5, 6}};
  if (with_last) P.last = {7, 8};
  P.validate();
  return P;
}

}  // namespace lrcw::fixtures
