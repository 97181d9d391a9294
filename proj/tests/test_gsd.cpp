#include <gtest/gtest.h>

#include <set>

#include "lrcw/design.hpp"
#include "lrcw/erasure.hpp"
#include "lrcw/error.hpp"
#include "lrcw/fixtures.hpp"
#include "lrcw/gsd.hpp"
#include "lrcw/lrc.hpp"
#include "support.hpp"

using namespace lrcw;

namespace {

struct Sweep {
  std::uint64_t tested = 0;
  std::uint64_t failed = 0;
};

/// Brute-force sweep: every y-set of candidate columns, every gamma-set of the
/// remaining placed cells, rank by plain elimination.
Sweep brute_sweep(const ArrayLayout& arr, const Matrix& H, std::size_t y, std::size_t gamma, bool data_only) {
  Sweep s;
  const std::size_t ncols = data_only ? arr.data_cols : arr.cols;
  for_each_combination(ncols, y, [&](std::span<const std::size_t> cols) {
    std::set<std::size_t> erased;
    for (auto c : cols)
      for (std::size_t row = 0; row < arr.rows; ++row)
        if (auto x = arr.at(row, c)) erased.insert(*x);
    std::vector<std::size_t> rest;
    for (const auto& cell : arr.cells)
      if (cell && !erased.count(*cell)) rest.push_back(*cell);
    std::sort(rest.begin(), rest.end());
    for_each_combination(rest.size(), gamma, [&](std::span<const std::size_t> pick) {
      std::vector<std::size_t> all(erased.begin(), erased.end());
      for (auto i : pick) all.push_back(rest[i]);
      ++s.tested;
      if (test::naive_rank(H.select_columns(all)) < all.size()) ++s.failed;
      return true;
    });
    return true;
  });
  return s;
}

void expect_bijection(const ArrayLayout& arr, std::size_t n) {
  std::vector<int> seen(n, 0);
  for (const auto& c : arr.cells)
    if (c) {
      ASSERT_LT(*c, n);
      ++seen[*c];
    }
  for (auto s : seen) EXPECT_EQ(s, 1);
  validate_array(arr, n);
}

}  // namespace

TEST(Gsd, ArrayShapes) {
  const auto L = fixtures::example1_layout();
  const auto basic = array_basic(L);
  EXPECT_EQ(basic.rows, 3u);
  EXPECT_EQ(basic.cols, 8u);
  EXPECT_EQ(basic.data_cols, 7u);
  EXPECT_EQ(basic.zero_fill(), 0u);
  expect_bijection(basic, L.n());
  // Data cells of a column share its evaluation point.
  for (std::size_t c = 0; c < basic.data_cols; ++c)
    for (auto x : basic.column_coords(c)) EXPECT_EQ(L.point(x), basic.column_points[c]);

  const auto L4 = build_layout(LrcParams{2, 2, 6, 2, 4}, FiniteField::make(11), pg_steiner(2, 2));
  const auto b4 = array_basic(L4);
  EXPECT_EQ(b4.rows, 3u);
  EXPECT_EQ(b4.cols, 9u);
  EXPECT_EQ(b4.zero_fill(), 2u);
  expect_bijection(b4, L4.n());

  const auto R = build_layout(LrcParams{2, 2, 6, 2, 7}, FiniteField::make(17), pg_steiner(2, 2));
  const auto re = array_rearranged(R);
  EXPECT_EQ(re.rows, 4u);
  EXPECT_EQ(re.cols, 7u);
  expect_bijection(re, R.n());
  try {
    array_rearranged(L);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidParameter);
  }

  const auto T = build_layout(LrcParams{2, 2, 6, 1, 1}, FiniteField::make(11), pg_steiner(2, 2));
  const auto tr = array_truncated(T);
  EXPECT_EQ(tr.rows, 3u);
  EXPECT_EQ(tr.cols, 7u);
  EXPECT_EQ(tr.zero_fill(), 0u);
  expect_bijection(tr, T.n());

  const auto big = array_truncated(fixtures::example3_layout());
  EXPECT_EQ(big.rows, 9u);
  EXPECT_EQ(big.cols, 73u);
  EXPECT_EQ(big.zero_fill(), 0u);
}

TEST(Gsd, ColumnMajorImport) {
  const auto arr = column_major(24, 3, 7);
  EXPECT_EQ(arr.rows, 3u);
  EXPECT_EQ(arr.cols, 8u);
  for (std::size_t c = 0; c < 24; ++c) EXPECT_EQ(arr.at(c % 3, c / 3), c);
  expect_bijection(arr, 24);
}

TEST(Gsd, SecondExampleRecoversAnyTwoColumns) {
  const Matrix H = fixtures::example2_H();
  EXPECT_EQ(H.cols(), 24u);
  const auto arr = column_major(24, 3, 7);
  GsdCheckOptions o;
  o.y = 2;
  o.d = 5;
  const auto rep = gsd_check(arr, H, o);
  EXPECT_EQ(rep.total, 21u);
  EXPECT_EQ(rep.passed, 21u);
  EXPECT_TRUE(rep.ok());
  EXPECT_TRUE(rep.qualifies);
  EXPECT_EQ(test::naive_distance(H), 5u);
}

TEST(Gsd, SweepMatchesBruteForce) {
  const auto L = fixtures::example1_layout();
  const auto arr = array_basic(L);
  const Matrix H = parity_check_matrix(L);
  for (std::size_t y = 0; y <= 3; ++y)
    for (std::size_t gamma = 0; gamma <= 2; ++gamma)
      for (bool data_only : {true, false}) {
        GsdCheckOptions o;
        o.y = y;
        o.gamma = gamma;
        o.data_only = data_only;
        const auto rep = gsd_check(arr, H, o);
        const auto bf = brute_sweep(arr, H, y, gamma, data_only);
        SCOPED_TRACE("y=" + std::to_string(y) + " gamma=" + std::to_string(gamma));
        EXPECT_FALSE(rep.sampled);
        EXPECT_EQ(rep.total, bf.tested);
        EXPECT_EQ(rep.tested, bf.tested);
        EXPECT_EQ(rep.failed, bf.failed);
        EXPECT_EQ(gsd_pattern_count(arr, y, gamma, data_only), bf.tested);
        for (const auto& w : rep.witnesses) EXPECT_FALSE(recoverable(H, w));
      }
}

TEST(Gsd, SampledSweepIsSeededAndWorkerIndependent) {
  const auto L = fixtures::ag13_layout();
  const auto arr = array_basic(L);
  const Matrix H = parity_check_matrix(L);
  GsdCheckOptions o;
  o.y = 2;
  o.gamma = 2;
  o.exhaustive_limit = 0;
  o.samples = 300;
  o.seed = 9;
  const auto a = gsd_check(arr, H, o);
  o.workers = 3;
  const auto b = gsd_check(arr, H, o);
  EXPECT_TRUE(a.sampled);
  EXPECT_EQ(a.seed, 9u);
  EXPECT_EQ(a.tested, 300u);
  EXPECT_EQ(a.passed, b.passed);
  EXPECT_EQ(a.witnesses, b.witnesses);

  o.exhaustive_limit = 1'000'000;
  o.workers = 1;
  const auto e1 = gsd_check(arr, H, o);
  o.workers = 4;
  const auto e4 = gsd_check(arr, H, o);
  EXPECT_FALSE(e1.sampled);
  EXPECT_EQ(e1.failed, e4.failed);
  EXPECT_EQ(e1.witnesses, e4.witnesses);
}

TEST(Gsd, ParameterFamilies) {
  GsdParamsInput pg;
  pg.family = Family::PG;
  pg.q1 = 8;
  pg.delta = 3;
  pg.v = 1;
  const auto p = gsd_params(pg);
  EXPECT_TRUE(p.valid);
  EXPECT_EQ(p.r, 7);
  EXPECT_EQ(p.h, 6);
  EXPECT_EQ(p.b, 9);
  EXPECT_EQ(p.cols, 73);
  EXPECT_EQ(p.n, 657);
  EXPECT_EQ(p.k, 505);
  EXPECT_EQ(p.d_stated, 8);

  GsdParamsInput ag;
  ag.q1 = 3;
  ag.delta = 2;
  ag.v = 1;
  const auto a = gsd_params(ag);
  EXPECT_TRUE(a.valid);
  EXPECT_EQ(a.r, 2);
  EXPECT_EQ(a.h, 1);
  EXPECT_EQ(a.n, 36);
  EXPECT_EQ(a.k, 23);

  ag.q1 = 7;
  const auto bad = gsd_params(ag);
  EXPECT_FALSE(bad.h_le_delta_sq);
  EXPECT_FALSE(bad.valid);

  ag.q1 = 6;
  EXPECT_FALSE(gsd_params(ag).valid);
}

TEST(Gsd, ClaimedPatternsRecoverOnBuiltCodes) {
  struct Case {
    Family family;
    std::uint64_t q1;
    Design design;
    std::uint32_t field;
  };
  for (const auto& c : {Case{Family::AG, 3, ag_steiner(3, 2), 11}, Case{Family::PG, 2, pg_steiner(2, 2), 11}}) {
    GsdParamsInput in;
    in.family = c.family;
    in.q1 = c.q1;
    in.delta = 2;
    in.v = 1;
    const auto rep = gsd_params(in);
    ASSERT_TRUE(rep.valid);
    const LrcParams prm{static_cast<std::size_t>(rep.r), 2, c.design.blocks.size() - 1, 1,
                        static_cast<std::size_t>(rep.h)};
    const auto L = build_layout(prm, FiniteField::make(c.field), c.design);
    EXPECT_EQ(static_cast<std::int64_t>(L.n()), rep.n);
    const auto arr = array_truncated(L);
    EXPECT_EQ(static_cast<std::int64_t>(arr.rows), rep.b);
    const Matrix H = parity_check_matrix(L);
    std::size_t claimed = 0;
    for (const auto& cl : rep.claims) {
      if (!cl.claimed) continue;
      ++claimed;
      GsdCheckOptions o;
      o.y = static_cast<std::size_t>(cl.y);
      o.gamma = static_cast<std::size_t>(cl.gamma);
      o.d = L.params.h + L.params.delta;
      const auto chk = gsd_check(arr, H, o);
      EXPECT_TRUE(chk.ok()) << "item " << cl.item << " y=" << cl.y << " gamma=" << cl.gamma;
    }
    EXPECT_GT(claimed, 0u);
  }
}

TEST(Gsd, BasicArrayItemSweeps) {
  const std::vector<EvaluationLayout> layouts{
      fixtures::example1_layout(), fixtures::ag13_layout(),
      build_layout(LrcParams{2, 2, 6, 2, 4}, FiniteField::make(11), pg_steiner(2, 2)),
      build_layout(LrcParams{2, 2, 6, 2, 1}, FiniteField::make(11), pg_steiner(2, 2))};
  for (const auto& L : layouts) {
    const auto h = static_cast<std::int64_t>(L.params.h), delta = static_cast<std::int64_t>(L.params.delta);
    ASSERT_LE(h, delta * delta);
    const auto arr = array_basic(L);
    const Matrix H = parity_check_matrix(L);
    std::vector<std::pair<std::int64_t, std::int64_t>> cases;
    for (std::int64_t y = 1; y <= 2; ++y) cases.emplace_back(y, h - y - 1);
    for (std::int64_t y = 1; y <= 3; ++y)
      if (y * (y - 1) / 2 <= delta) cases.emplace_back(y, h - 2 - y * (y - 1) / 2);
    for (std::int64_t y = 1; y <= 3; ++y) cases.emplace_back(y, std::min(delta * (delta + 1) / 2 - y - 1, h + delta - 1 - y));
    for (auto [y, gamma] : cases) {
      if (gamma < 0) continue;
      GsdCheckOptions o;
      o.y = static_cast<std::size_t>(y);
      o.gamma = static_cast<std::size_t>(gamma);
      o.exhaustive_limit = 1'000'000;
      o.seed = 3;
      const auto rep = gsd_check(arr, H, o);
      EXPECT_TRUE(rep.ok()) << "n=" << L.n() << " y=" << y << " gamma=" << gamma;
    }
  }
}
