#include <gtest/gtest.h>

#include <set>

#include "lrcw/design.hpp"
#include "lrcw/erasure.hpp"
#include "lrcw/error.hpp"
#include "lrcw/fixtures.hpp"
#include "lrcw/lrc.hpp"
#include "support.hpp"

using namespace lrcw;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InternalInvariantViolation;
}

/// Random layout with pairwise disjoint sets over F_p.
EvaluationLayout disjoint_layout(Rng& rng, std::uint32_t p, const LrcParams& prm) {
  const std::size_t full = prm.r + prm.delta - 1;
  const std::size_t need = prm.ell * full + prm.v + prm.delta - 1 + prm.h;
  auto pick = rng.distinct(p, need);
  for (std::size_t i = pick.size(); i > 1; --i) std::swap(pick[i - 1], pick[rng.below(i)]);
  std::vector<std::vector<Elem>> sets;
  std::size_t at = 0;
  for (std::size_t i = 0; i <= prm.ell; ++i) {
    const std::size_t sz = i < prm.ell ? full : prm.v + prm.delta - 1;
    sets.emplace_back(pick.begin() + static_cast<long>(at), pick.begin() + static_cast<long>(at + sz));
    at += sz;
  }
  std::vector<Elem> S(pick.begin() + static_cast<long>(at), pick.end());
  return build_layout(prm, FiniteField::make(p), std::move(sets), std::move(S));
}

LrcParams random_params(Rng& rng) {
  LrcParams p;
  p.r = 1 + rng.below(3);
  p.delta = 2 + rng.below(2);
  p.ell = 1 + rng.below(2);
  p.v = 1 + rng.below(p.r);
  p.h = rng.below(std::min<std::size_t>(p.delta * p.delta, 4) + 1);
  return p;
}

std::vector<Elem> random_info(Rng& rng, const EvaluationLayout& L) {
  return test::any_vector(rng, *L.field, L.params.k());
}

}  // namespace

TEST(Lrc, ParameterBookkeeping) {
  for (std::size_t r = 1; r <= 4; ++r)
    for (std::size_t delta = 2; delta <= 4; ++delta)
      for (std::size_t ell = 1; ell <= 5; ++ell)
        for (std::size_t v = 1; v <= r; ++v)
          for (std::size_t h = 0; h <= 5; ++h) {
            LrcParams p{r, delta, ell, v, h};
            EXPECT_EQ(p.k(), r * ell + v);
            EXPECT_EQ(p.n(), ell * (r + delta - 1) + (v + delta - 1) + h);
          }
  EXPECT_EQ(kind_of([] { LrcParams{2, 2, 1, 0, 0}.validate(); }), ErrorKind::InvalidParameter);
  EXPECT_EQ(kind_of([] { LrcParams{2, 2, 1, 3, 0}.validate(); }), ErrorKind::InvalidParameter);
  EXPECT_EQ(kind_of([] { LrcParams{2, 1, 1, 1, 0}.validate(); }), ErrorKind::InvalidParameter);
  EXPECT_EQ(kind_of([] { LrcParams{2, 2, 0, 1, 0}.validate(); }), ErrorKind::InvalidParameter);
}

TEST(Lrc, FirstExampleLayout) {
  const auto L = fixtures::example1_layout();
  EXPECT_EQ(L.num_sets(), 7u);
  for (const auto& A : L.A) EXPECT_EQ(A.size(), 3u);
  EXPECT_EQ(L.max_intersection, 1u);
  EXPECT_EQ(L.n(), 24u);
  EXPECT_EQ(L.params.k(), 14u);
  EXPECT_EQ(L.A[0], (std::vector<Elem>{3, 6, 5}));
  EXPECT_EQ(L.A[4], (std::vector<Elem>{0, 3, 2}));
  for (std::size_t c = 0; c < L.n(); ++c) {
    const auto pos = L.position(c);
    if (pos.global) {
      EXPECT_EQ(L.global_coord(pos.index), c);
      EXPECT_EQ(L.point(c), L.S[pos.index]);
    } else {
      EXPECT_EQ(L.coord(pos.set, pos.index), c);
      EXPECT_EQ(L.point(c), L.A[pos.set][pos.index]);
    }
  }
}

TEST(Lrc, DesignEmbeddingAndTruncation) {
  const auto f = FiniteField::make(11);
  EXPECT_EQ(default_globals(*f, 3), (std::vector<Elem>{8, 9, 10}));
  LrcParams p{2, 2, 6, 1, 2};
  const auto L = build_layout(p, f, pg_steiner(2, 2));
  EXPECT_EQ(L.S, (std::vector<Elem>{9, 10}));
  EXPECT_EQ(L.A.back().size(), 2u);
  EXPECT_EQ(L.dropped.size(), 1u);
  EXPECT_EQ(L.universe.size(), 7u);
  for (auto x : L.universe) EXPECT_LT(x, 7u);
  const auto with_S = build_layout(p, f, pg_steiner(2, 2), std::vector<Elem>{0, 1});
  EXPECT_EQ(with_S.universe, (std::vector<Elem>{2, 3, 4, 5, 6, 7, 8}));

  const auto big = fixtures::example3_layout();
  EXPECT_EQ(big.n(), 657u);
  EXPECT_EQ(big.params.k(), 505u);
  EXPECT_EQ(big.dropped.size(), 6u);
  EXPECT_EQ(big.max_intersection, 1u);

  LrcParams tight{2, 2, 6, 2, 3};
  EXPECT_EQ(kind_of([&] { build_layout(tight, FiniteField::make(7), pg_steiner(2, 2)); }), ErrorKind::FieldTooSmall);
}

TEST(Lrc, ZeroAndConstantMessages) {
  const auto L = fixtures::example1_layout();
  const std::vector<Elem> zero(L.params.k(), 0);
  for (auto x : encode(L, zero)) EXPECT_EQ(x, 0u);

  const auto f = FiniteField::make(13);
  for (std::size_t r = 1; r <= 3; ++r) {
    LrcParams p{r, 2, 1, r, 0};
    const std::size_t full = r + 1;
    std::vector<std::vector<Elem>> sets(2);
    for (std::size_t i = 0; i < full; ++i) {
      sets[0].push_back(static_cast<Elem>(i));
      sets[1].push_back(static_cast<Elem>(full + i));
    }
    const auto D = build_layout(p, f, sets, {});
    EXPECT_EQ(D.n(), 2 * full);
    std::vector<Elem> info(2 * r, 0);
    for (std::size_t i = 0; i < r; ++i) info[i] = 7;
    const auto c = encode(D, info);
    for (std::size_t i = 0; i < full; ++i) {
      EXPECT_EQ(c[i], 7u);
      EXPECT_EQ(c[full + i], 0u);
    }
    // Block-diagonal generator: info of one set never reaches the other.
    const Matrix G = generator_matrix(D);
    for (std::size_t row = 0; row < G.rows(); ++row)
      for (std::size_t col = 0; col < G.cols(); ++col)
        if ((row < r) != (col < full)) EXPECT_EQ(G(row, col), 0u);
    const auto loc = verify_locality(build_code(D));
    EXPECT_TRUE(loc.ok);
    for (const auto& e : loc.sets) EXPECT_EQ(e.distance, 2u);
  }
}

TEST(Lrc, EncodeIsLinear) {
  Rng rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const auto L = trial % 3 == 0 ? fixtures::example1_layout() : trial % 3 == 1 ? fixtures::ag13_layout()
                                                                                 : disjoint_layout(rng, 23, random_params(rng));
    const auto& f = *L.field;
    const auto u = random_info(rng, L), w = random_info(rng, L);
    const Elem a = test::any_elem(rng, f), b = test::any_elem(rng, f);
    std::vector<Elem> mix(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) mix[i] = f.add(f.mul(a, u[i]), f.mul(b, w[i]));
    const auto cu = encode(L, u), cw = encode(L, w), cm = encode(L, mix);
    for (std::size_t i = 0; i < cm.size(); ++i) ASSERT_EQ(cm[i], f.add(f.mul(a, cu[i]), f.mul(b, cw[i])));
  }
}

TEST(Lrc, LocalAndGlobalConsistency) {
  Rng rng(22);
  for (int trial = 0; trial < 40; ++trial) {
    const auto L = trial == 0 ? fixtures::example1_layout() : trial == 1 ? fixtures::ag13_layout()
                                                                         : disjoint_layout(rng, 29, random_params(rng));
    const auto& f = *L.field;
    const auto c = encode(L, random_info(rng, L));
    const std::size_t dim_drop = L.params.delta - 1;

    // Each set's symbols lie on a polynomial of degree < |A_j| - delta + 1.
    std::vector<Poly> local;
    for (std::size_t j = 0; j < L.num_sets(); ++j) {
      std::vector<InterpolationPoint> pts;
      for (std::size_t t = 0; t < L.A[j].size(); ++t) pts.push_back({L.A[j][t], c[L.coord(j, t)]});
      const Poly fj = poly::interpolate(f, pts);
      EXPECT_LT(fj.degree(), static_cast<int>(L.A[j].size() - dim_drop));
      local.push_back(fj);
    }
    // Global symbols equal sum_i f_i * prod_{j != i} g_j at S.
    Poly fI;
    for (std::size_t i = 0; i < L.num_sets(); ++i) {
      Poly term = local[i];
      for (std::size_t j = 0; j < L.num_sets(); ++j)
        if (j != i) term = poly::mul(f, term, poly::from_roots(f, L.A[j]));
      fI = poly::add(f, fI, term);
    }
    for (std::size_t s = 0; s < L.params.h; ++s) EXPECT_EQ(c[L.global_coord(s)], poly::eval(f, fI, L.S[s]));
  }
}

TEST(Lrc, GeneratorAndParityCheckAreDual) {
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const auto L = trial == 0 ? fixtures::example1_layout() : trial == 1 ? fixtures::ag13_layout()
                                                                         : disjoint_layout(rng, 31, random_params(rng));
    const Matrix G = generator_matrix(L), H = parity_check_matrix(L);
    EXPECT_EQ(G.rows(), L.params.k());
    EXPECT_EQ(G.cols(), L.n());
    EXPECT_EQ(rank(G), L.params.k());
    EXPECT_EQ(rank(H), L.n() - L.params.k());
    const Matrix GH = multiply(G, H.transpose());
    for (auto x : GH.entries()) ASSERT_EQ(x, 0u);
    const auto code = build_code(L);
    EXPECT_EQ(code.k, L.params.k());
    EXPECT_EQ(code.repair_sets.size(), L.num_sets());
  }
  const auto G = generator_matrix(fixtures::ag13_layout());
  EXPECT_EQ(G.rows(), 24u);
  EXPECT_EQ(G.cols(), 40u);
}

TEST(Lrc, FirstExampleCode) {
  const auto L = fixtures::example1_layout();
  const auto code = build_code(L);
  EXPECT_EQ(rank(code.generator()), 14u);
  EXPECT_EQ(rank(code.H), 10u);
  EXPECT_EQ(test::naive_distance(code.H), 5u);
  const auto loc = verify_locality(code);
  EXPECT_TRUE(loc.ok);
  EXPECT_TRUE(loc.information_locality);
  for (const auto& e : loc.sets) {
    EXPECT_EQ(e.size, 3u);
    EXPECT_EQ(e.distance, 2u);
  }
  // The printed matrix has the same parameters and local structure.
  const Matrix P = fixtures::example1_H();
  const auto printed = code_from_parity_check(P, repair_sets_from_rows(P, 3, 2));
  EXPECT_EQ(printed.k, code.k);
  EXPECT_TRUE(verify_locality(printed).ok);
  EXPECT_EQ(printed.repair_sets.size(), 7u);
}

TEST(Lrc, MeasuredDistanceIsHPlusDeltaOnPackingLayouts) {
  // Fano and AG(2,3) layouts (intersection 1) with h <= delta^2.
  for (std::size_t v = 1; v <= 2; ++v)
    for (std::size_t h = 0; h <= 4; ++h) {
      const auto L = build_layout(LrcParams{2, 2, 6, v, h}, FiniteField::make(11), pg_steiner(2, 2));
      EXPECT_EQ(min_distance(parity_check_matrix(L)).d, h + 2) << "fano v=" << v << " h=" << h;
      const auto M = build_layout(LrcParams{2, 2, 11, v, h}, FiniteField::make(13), ag_steiner(3, 2));
      EXPECT_EQ(min_distance(parity_check_matrix(M)).d, h + 2) << "ag v=" << v << " h=" << h;
    }
  Rng rng(24);
  for (int trial = 0; trial < 40; ++trial) {
    const auto prm = random_params(rng);
    const auto L = disjoint_layout(rng, 37, prm);
    const Matrix H = parity_check_matrix(L);
    const auto d = test::naive_distance(H);
    EXPECT_EQ(d, prm.h + prm.delta) << "r=" << prm.r << " delta=" << prm.delta << " ell=" << prm.ell << " v=" << prm.v
                                    << " h=" << prm.h;
    EXPECT_EQ(min_distance(H).d, d);
  }
}

TEST(Lrc, LocalityNegativeControl) {
  Rng rng(25);
  const auto f = FiniteField::make(11);
  const Matrix G = test::any_matrix(rng, f, 10, 16);
  LinearCode code;
  code.field = f;
  code.n = 16;
  code.G = G;
  code.H = nullspace(G);
  code.k = rank(G);
  for (std::size_t s = 0; s < 4; ++s) code.repair_sets.push_back({{4 * s, 4 * s + 1, 4 * s + 2, 4 * s + 3}, 2});
  EXPECT_FALSE(verify_locality(code).ok);
}
