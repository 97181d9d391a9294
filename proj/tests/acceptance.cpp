#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "lrcw/bounds.hpp"
#include "lrcw/cli.hpp"
#include "lrcw/design.hpp"
#include "lrcw/erasure.hpp"
#include "lrcw/error.hpp"
#include "lrcw/fixtures.hpp"
#include "lrcw/goppa.hpp"
#include "lrcw/gsd.hpp"
#include "lrcw/io.hpp"
#include "lrcw/lrc.hpp"

using namespace lrcw;

namespace {

/// Collects the reasons a criterion failed.
struct Verdict {
  std::vector<std::string> problems;
  std::string detail;

  void expect(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
};

std::vector<Elem> reference_word(const EvaluationLayout& L) {
  std::vector<Elem> info(L.params.k());
  for (std::size_t i = 0; i < info.size(); ++i) info[i] = static_cast<Elem>((7 * i + 3) % L.field->q());
  return encode(L, info);
}

/// Structured and linear decoding must both return the codeword.
bool decodes(const EvaluationLayout& L, const Matrix& H, const std::vector<Elem>& word, const ErasurePattern& p) {
  const auto cs = p.coords(L);
  const auto rx = lrcw::erase(word, cs);
  return decode_structured(L, rx, p) == word && decode_linear(H, cs, rx) == word;
}

void c1(Verdict& v) {
  const Matrix H = fixtures::example1_H();
  v.expect(H.rows() == 10 && H.cols() == 24, "printed matrix is not 10 x 24");
  const auto dist = min_distance(H);
  v.expect(dist.d == 5, "min_distance = " + std::to_string(dist.d));
  const auto code = code_from_parity_check(H, repair_sets_from_rows(H, 3, 2));
  const auto loc = verify_locality(code);
  v.expect(!loc.sets.empty() && loc.ok, "declared repair sets fail locality");
  for (const auto& e : loc.sets) v.expect(e.distance == 2, "punctured distance " + std::to_string(e.distance));
  const auto sb = singleton_bound(24, static_cast<std::int64_t>(code.k), 2, 2);
  v.expect(code.k == 14 && sb == 5, "k = " + std::to_string(code.k) + ", bound = " + std::to_string(sb));
  v.expect(static_cast<std::int64_t>(dist.d) == sb, "not optimal");
  v.detail = "d=5, " + std::to_string(loc.sets.size()) + " repair sets, " + std::to_string(dist.rank_tests) + " rank tests";
}

void c2(Verdict& v) {
  const auto L = fixtures::example1_layout();
  const auto code = build_code(L);
  v.expect(code.n == 24 && code.k == 14, "not a [24,14] code");
  const auto d = min_distance(code.H).d;
  v.expect(d == 5, "measured d = " + std::to_string(d));
  v.expect(verify_locality(code).ok, "locality fails");
  v.detail = "[24,14,5] over F_11";
}

void c3(Verdict& v) {
  const Matrix H = fixtures::example2_H();
  GsdCheckOptions o;
  o.y = 2;
  o.d = 5;
  const auto rep = gsd_check(column_major(H.cols(), 3, 7), H, o);
  v.expect(rep.total == 21 && rep.passed == 21, std::to_string(rep.passed) + "/" + std::to_string(rep.total));
  const auto d = min_distance(H).d;
  v.expect(d == 5, "flat distance " + std::to_string(d));
  v.expect(rep.qualifies, "GSD condition fails");
  v.detail = "21/21 column pairs, d=5, 6 > 4";
}

void c4(Verdict& v) {
  const auto L = fixtures::ag13_layout();
  const auto code = build_code(L);
  v.expect(code.n == 40 && code.k == 24, "not a [40,24] code");
  const auto one = min_distance(code.H, {0, 1});
  const auto four = min_distance(code.H, {0, 4});
  v.expect(one.d == 6, "measured d = " + std::to_string(one.d));
  v.expect(one.d == L.params.h + L.params.delta, "d != h + delta");
  v.expect(static_cast<std::int64_t>(one.d) == singleton_bound(40, 24, 2, 2), "d != singleton bound");
  v.expect(one.d == four.d && one.witness == four.witness, "parallel result differs");
  v.detail = "d=6, " + std::to_string(one.rank_tests) + " rank tests, 1 and 4 workers agree";
}

void c5(Verdict& v) {
  std::size_t total = 0;
  for (const auto& L : {fixtures::example1_layout(), fixtures::ag13_layout()}) {
    const Matrix H = parity_check_matrix(L);
    const auto word = reference_word(L);
    std::size_t here = 0, bad = 0;
    for (const auto& p : patterns::heavy_blocks(L, 2, L.params.h + L.params.delta - 1)) {
      if (!pattern_admissible(L, p).admissible) continue;
      ++here;
      if (!decodes(L, H, word, p)) ++bad;
    }
    v.expect(here > 0, "no admissible patterns");
    v.expect(bad == 0, std::to_string(bad) + " decoder mismatches on n=" + std::to_string(L.n()));
    total += here;
  }
  v.detail = std::to_string(total) + " admissible patterns, structured = linear";
}

void c6(Verdict& v) {
  const auto L = fixtures::example1_layout();
  const auto arr = array_basic(L);
  const Matrix H = parity_check_matrix(L);
  const auto word = reference_word(L);
  const std::size_t d = L.params.h + L.params.delta;
  std::size_t shown = 0;
  for_each_combination(arr.data_cols, 2, [&](std::span<const std::size_t> cols) {
    for_each_subset(L.params.h, L.params.h, [&](std::span<const std::size_t> glob) {
      std::vector<std::size_t> cs;
      for (auto c : cols)
        for (auto x : arr.column_coords(c)) cs.push_back(x);
      for (auto g : glob) cs.push_back(L.global_coord(g));
      std::sort(cs.begin(), cs.end());
      const auto p = ErasurePattern::from_coords(L, cs);
      if (cs.size() < d || p.distinct_points() > d - 1 || !pattern_admissible(L, p).admissible) return true;
      ++shown;
      v.expect(decodes(L, H, word, p), "pattern not recovered");
      return true;
    });
    return true;
  });
  v.expect(shown >= 10, "only " + std::to_string(shown) + " patterns");
  v.detail = std::to_string(shown) + " patterns of >= 5 coordinates on <= 4 points, all recovered";
}

void c7(Verdict& v) {
  const auto L = fixtures::example3_layout();
  const auto code = build_code(L);
  v.expect(code.n == 657 && code.k == 505, "not a [657,505] code");
  const auto arr = array_truncated(L);
  v.expect(arr.rows == 9 && arr.cols == 73, "array is not 9 x 73");
  const auto loc = verify_locality(code);
  v.expect(loc.ok && loc.sets.size() == 73, "locality fails");
  struct Sweep {
    std::size_t y, gamma;
  };
  for (const Sweep s : {Sweep{0, 8}, Sweep{2, 1}, Sweep{1, 3}}) {
    GsdCheckOptions o;
    o.y = s.y;
    o.gamma = s.gamma;
    o.exhaustive_limit = 0;
    o.samples = 10'000;
    o.seed = cli::kFixtureSeed;
    const auto rep = gsd_check(arr, code.H, o);
    v.expect(rep.sampled && rep.tested == 10'000 && rep.ok(),
             "sweep y=" + std::to_string(s.y) + " gamma=" + std::to_string(s.gamma) + ": " +
                 std::to_string(rep.failed) + " failures");
  }
  v.detail = "73 repair sets, 3 x 10^4 sampled patterns recovered";
}

void c8(Verdict& v) {
  struct Case {
    std::string name;
    Design d;
    std::size_t blocks;
  };
  const std::vector<Case> cases{{"ag(3,2)", ag_steiner(3, 2), 9 * 8 / (3 * 2)},
                                {"pg(2,2)", pg_steiner(2, 2), 4 + 2 + 1},
                                {"pg(8,2)", pg_steiner(8, 2), 64 + 8 + 1},
                                {"sg(2,2)", sg_steiner(2, 2), binomial(5, 3) / binomial(3, 3)},
                                {"sg(3,2)", sg_steiner(3, 2), binomial(10, 3) / binomial(4, 3)},
                                {"cyclotomic(3,5;2)", cyclotomic_packing({3, 5}, 2), 15 * (2 * 4) / (2 * 2)}};
  for (const auto& c : cases) {
    const auto rep = verify_design(c.d);
    v.expect(!rep.sampled && rep.well_formed && rep.is_packing, c.name + " is not a packing");
    v.expect(c.d.steiner == rep.is_steiner, c.name + " Steiner property mismatch");
    v.expect(c.d.blocks.size() == c.blocks, c.name + " has " + std::to_string(c.d.blocks.size()) + " blocks");
    v.expect(johnson_bound(c.d.num_points, c.d.block_size, c.d.tau - 1) >= c.d.blocks.size(),
             c.name + " exceeds the Johnson bound");
  }
  v.detail = "6 designs verified exhaustively";
}

void c9(Verdict& v) {
  const auto A = fixtures::goppa_small(false);
  v.expect(A.field->q() <= 16 && A.ell() == 2 && A.delta() == 2 && A.h() <= 2, "instance out of range");
  const auto ra = goppa_distance_check(A, 1);
  v.expect(ra.k == A.n() - A.ell() * (A.delta() - 1) - A.h(), "k = " + std::to_string(ra.k));
  v.expect(verify_locality(goppa_code(A)).ok, "locality fails");
  v.expect(ra.separable && ra.hypothesis && ra.measured >= ra.designed,
           "d = " + std::to_string(ra.measured) + " < " + std::to_string(ra.designed));
  const auto B = fixtures::goppa_small(true);
  const auto rb = goppa_distance_check(B, 1);
  v.expect(rb.optimal_claim, "optimality hypotheses do not hold");
  v.expect(rb.measured == B.h() + B.delta() && rb.optimal_ok, "d = " + std::to_string(rb.measured));
  v.detail = "[6,2,4] and [8,4,4] over F_16";
}

void c10(Verdict& v) {
  const auto lb = length_bound(11, 2, 2, 3, 0);
  v.expect(lb.floor && *lb.floor == 198, "floor is not 198");
  v.expect(24 <= 198, "24 > 198");
  struct Code {
    std::int64_t n, k, r, delta, d, q;
  };
  std::size_t checked = 0;
  for (const Code c : {Code{24, 14, 2, 2, 5, 11}, Code{40, 24, 2, 2, 6, 13}, Code{657, 505, 7, 3, 9, 79}}) {
    for (std::int64_t a = 0; a <= c.d - c.delta; ++a) {
      const auto b = length_bound(c.q, c.r, c.delta, c.d - c.delta, a);
      if (!b.applicable) continue;
      ++checked;
      v.expect(b.width < 1e-6 * std::max(1.0, b.value), "interval too wide");
      v.expect(b.beyond_int64 || (b.floor && c.n <= *b.floor), "n = " + std::to_string(c.n) + " above the bound");
    }
  }
  v.detail = "floor 198, " + std::to_string(checked) + " applicable (code, a) pairs hold";
}

std::string run_cli(std::vector<std::string> args) {
  std::vector<const char*> argv{"lrcw"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return std::to_string(code) + "\n" + out.str();
}

void c11(Verdict& v) {
  const auto e3a = cli::fixture_example3(1, 7).dump();
  const auto e3b = cli::fixture_example3(1, 7).dump();
  const auto e3c = cli::fixture_example3(3, 7).dump();
  v.expect(e3a == e3b, "example 3 sweep differs between runs");
  v.expect(e3a == e3c, "example 3 sweep depends on workers");

  const std::string path = "acceptance_ag13.json";
  run_cli({"lrc", "construct", "--p", "13", "--r", "2", "--delta", "2", "--ell", "11", "--v", "2", "--h", "4",
           "--family", "ag", "--q1", "3", "--out", path});
  const std::vector<std::string> sampled{"erasure", "check", "--layout", path,   "--weight", "8",
                                         "--mode",  "sampled", "--samples", "2000", "--seed", "11"};
  auto with = [](std::vector<std::string> a, const std::string& w) {
    a.push_back("--workers");
    a.push_back(w);
    return a;
  };
  const auto s1 = run_cli(with(sampled, "1"));
  v.expect(s1 == run_cli(with(sampled, "1")), "erasure sweep differs between runs");
  v.expect(s1 == run_cli(with(sampled, "4")), "erasure sweep depends on workers");
  const std::vector<std::string> gsd{"gsd", "check", "--layout", path, "--y", "2", "--gamma", "3",
                                     "--exhaustive-limit", "0", "--samples", "2000", "--seed", "5"};
  const auto g1 = run_cli(with(gsd, "1"));
  v.expect(g1 == run_cli(with(gsd, "1")) && g1 == run_cli(with(gsd, "4")), "gsd sweep not reproducible");
  const std::vector<std::string> dist{"erasure", "distance", "--layout", path};
  v.expect(run_cli(with(dist, "1")) == run_cli(with(dist, "3")), "distance depends on workers");
  std::remove(path.c_str());
  v.detail = "sampled reports byte-identical across reruns and 1/3/4 workers";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Verdict&)>>> criteria{
      {"Example 1 printed matrix", c1},   {"Construction 1 reproduction", c2}, {"Example 2 array", c3},
      {"AG-design optimal code", c4},     {"Decoder equivalence", c5},         {"Beyond-distance recovery", c6},
      {"Example 3 at scale", c7},         {"Designs", c8},                     {"Goppa", c9},
      {"Bounds", c10},                    {"Determinism", c11}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(v);
    } catch (const std::exception& e) {
      v.problems.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = v.problems.empty();
    failed += !ok;
    char t[32];
    std::snprintf(t, sizeof t, "%.2fs", secs);
    std::cout << (ok ? "PASS" : "FAIL") << " " << (i + 1) << ". " << criteria[i].first << " (" << t << ")";
    if (ok)
      std::cout << ": " << v.detail;
    else
      for (const auto& p : v.problems) std::cout << "; " << p;
    std::cout << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
