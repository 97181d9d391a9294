#include "lrcw/lrc.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "lrcw/erasure.hpp"
#include "lrcw/error.hpp"

namespace lrcw {

void LrcParams::validate() const {
  require(r >= 1, ErrorKind::InvalidParameter, "r must be >= 1");
  require(delta >= 2, ErrorKind::InvalidParameter, "delta must be >= 2");
  require(ell >= 1, ErrorKind::InvalidParameter, "ell must be >= 1");
  require(v >= 1 && v <= r, ErrorKind::InvalidParameter, "v must satisfy 0 < v <= r");
}

std::size_t EvaluationLayout::offset(std::size_t set) const {
  const std::size_t full = params.r + params.delta - 1;
  return set * full;
}

std::vector<std::size_t> EvaluationLayout::set_coords(std::size_t set) const {
  std::vector<std::size_t> c(A.at(set).size());
  for (std::size_t t = 0; t < c.size(); ++t) c[t] = coord(set, t);
  return c;
}

EvaluationLayout::Position EvaluationLayout::position(std::size_t c) const {
  require(c < n(), ErrorKind::InvalidParameter, "coordinate out of range");
  const std::size_t globals = n() - params.h;
  if (c >= globals) return {true, 0, c - globals};
  const std::size_t full = params.r + params.delta - 1;
  return {false, c / full, c % full};
}

Elem EvaluationLayout::point(std::size_t c) const {
  const auto pos = position(c);
  return pos.global ? S[pos.index] : A[pos.set][pos.index];
}

std::vector<Elem> default_globals(const FiniteField& f, std::size_t h) {
  require(h <= f.q(), ErrorKind::FieldTooSmall, "field has fewer than h elements");
  std::vector<Elem> s(h);
  for (std::size_t i = 0; i < h; ++i) s[i] = static_cast<Elem>(f.q() - h + i);
  return s;
}

namespace {

void finish_layout(EvaluationLayout& L) {
  const auto& p = L.params;
  p.validate();
  const auto& f = *L.field;
  require(L.A.size() == p.ell + 1, ErrorKind::InvalidParameter, "need exactly ell+1 evaluation sets");
  require(L.S.size() == p.h, ErrorKind::InvalidParameter, "S must have h elements");
  std::set<Elem> sset;
  for (auto s : L.S) {
    require(f.contains(s), ErrorKind::InvalidParameter, "global point outside the field");
    require(sset.insert(s).second, ErrorKind::InvalidParameter, "repeated global point");
  }
  for (std::size_t i = 0; i < L.A.size(); ++i) {
    const std::size_t want = i < p.ell ? p.r + p.delta - 1 : p.v + p.delta - 1;
    require(L.A[i].size() == want, ErrorKind::InvalidParameter,
            "set " + std::to_string(i) + " has size " + std::to_string(L.A[i].size()) + ", expected " +
                std::to_string(want));
    std::set<Elem> seen;
    for (auto x : L.A[i]) {
      require(f.contains(x), ErrorKind::InvalidParameter, "evaluation point outside the field");
      require(seen.insert(x).second, ErrorKind::InvalidParameter, "repeated point inside a set");
      require(!sset.count(x), ErrorKind::InvalidParameter, "evaluation set meets S");
    }
  }
  L.max_intersection = 0;
  std::vector<std::vector<Elem>> sorted(L.A);
  for (auto& s : sorted) std::sort(s.begin(), s.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      std::vector<Elem> common;
      std::set_intersection(sorted[i].begin(), sorted[i].end(), sorted[j].begin(), sorted[j].end(),
                            std::back_inserter(common));
      L.max_intersection = std::max(L.max_intersection, common.size());
    }
}

}  // namespace

EvaluationLayout build_layout(const LrcParams& params, Field field, std::vector<std::vector<Elem>> sets,
                              std::vector<Elem> S) {
  params.validate();
  require(sets.size() >= params.ell + 1, ErrorKind::InvalidParameter, "need at least ell+1 sets");
  EvaluationLayout L;
  L.field = std::move(field);
  L.params = params;
  L.S = std::move(S);
  sets.resize(params.ell + 1);
  auto& last = sets.back();
  const std::size_t keep = params.v + params.delta - 1;
  if (last.size() > keep) {
    L.dropped.assign(last.begin() + static_cast<std::ptrdiff_t>(keep), last.end());
    last.resize(keep);
  }
  std::set<Elem> uni;
  for (const auto& s : sets) uni.insert(s.begin(), s.end());
  uni.insert(L.dropped.begin(), L.dropped.end());
  L.universe.assign(uni.begin(), uni.end());
  L.A = std::move(sets);
  finish_layout(L);
  return L;
}

EvaluationLayout build_layout(const LrcParams& params, Field field, const Design& design,
                              std::optional<std::vector<Elem>> S) {
  params.validate();
  const auto& f = *field;
  std::vector<Elem> globals = S ? *S : default_globals(f, params.h);
  require(design.blocks.size() >= params.ell + 1, ErrorKind::InvalidParameter, "design has fewer than ell+1 blocks");
  require(design.block_size == params.r + params.delta - 1, ErrorKind::InvalidParameter,
          "design block size must equal r+delta-1");
  require(static_cast<std::uint64_t>(f.q()) >= design.num_points + globals.size(), ErrorKind::FieldTooSmall,
          "field of order " + std::to_string(f.q()) + " cannot host " + std::to_string(design.num_points) +
              " points plus " + std::to_string(globals.size()) + " global points");
  std::set<Elem> sset(globals.begin(), globals.end());
  std::vector<Elem> embed;
  embed.reserve(design.num_points);
  for (Elem x = 0; x < f.q() && embed.size() < design.num_points; ++x)
    if (!sset.count(x)) embed.push_back(x);

  std::vector<std::vector<Elem>> sets;
  for (std::size_t i = 0; i <= params.ell; ++i) {
    std::vector<Elem> s;
    for (auto pt : design.blocks[i]) s.push_back(embed.at(pt));
    sets.push_back(std::move(s));
  }
  auto L = build_layout(params, std::move(field), std::move(sets), std::move(globals));
  L.universe = embed;
  return L;
}

Encoder::Encoder(const EvaluationLayout& layout) : layout_(&layout) {
  const auto& f = *layout.field;
  const std::size_t m = layout.A.size();
  g_.reserve(m);
  for (const auto& a : layout.A) g_.push_back(poly::from_roots(f, a));
  // prod_{j != i} g_j via prefix and suffix products.
  std::vector<Poly> prefix(m + 1), suffix(m + 1);
  prefix[0] = Poly::constant(1);
  for (std::size_t i = 0; i < m; ++i) prefix[i + 1] = poly::mul(f, prefix[i], g_[i]);
  suffix[m] = Poly::constant(1);
  for (std::size_t i = m; i-- > 0;) suffix[i] = poly::mul(f, g_[i], suffix[i + 1]);
  cof_.reserve(m);
  for (std::size_t i = 0; i < m; ++i) cof_.push_back(poly::mul(f, prefix[i], suffix[i + 1]));
}

std::size_t Encoder::info_width(std::size_t set) const {
  return set + 1 < layout_->A.size() ? layout_->params.r : layout_->params.v;
}

std::size_t Encoder::info_offset(std::size_t set) const { return set * layout_->params.r; }

Poly Encoder::local_poly(std::size_t set, std::span<const Elem> slice) const {
  const auto& a = layout_->A.at(set);
  require(slice.size() == info_width(set), ErrorKind::InvalidParameter, "info slice has wrong width");
  std::vector<InterpolationPoint> pts(slice.size());
  for (std::size_t t = 0; t < slice.size(); ++t) pts[t] = {a[t], slice[t]};
  return poly::interpolate(*layout_->field, pts);
}

Poly Encoder::global_poly(const std::vector<Poly>& locals) const {
  const auto& f = *layout_->field;
  Poly acc;
  for (std::size_t i = 0; i < locals.size(); ++i) acc = poly::add(f, acc, poly::mul(f, locals[i], cof_[i]));
  return acc;
}

std::vector<Elem> Encoder::encode(std::span<const Elem> info) const {
  const auto& L = *layout_;
  const auto& f = *L.field;
  require(info.size() == L.params.k(), ErrorKind::InvalidParameter, "info length must equal k");
  std::vector<Elem> c(L.n(), 0);
  std::vector<Poly> locals;
  locals.reserve(L.A.size());
  for (std::size_t j = 0; j < L.A.size(); ++j) {
    locals.push_back(local_poly(j, info.subspan(info_offset(j), info_width(j))));
    for (std::size_t t = 0; t < L.A[j].size(); ++t) c[L.coord(j, t)] = poly::eval(f, locals.back(), L.A[j][t]);
  }
  if (L.params.h > 0) {
    const Poly fI = global_poly(locals);
    for (std::size_t i = 0; i < L.S.size(); ++i) c[L.global_coord(i)] = poly::eval(f, fI, L.S[i]);
  }
  return c;
}

std::vector<Elem> encode(const EvaluationLayout& layout, std::span<const Elem> info) {
  return Encoder(layout).encode(info);
}

Matrix LinearCode::generator() const {
  if (G) return *G;
  return nullspace(H);
}

Matrix generator_matrix(const EvaluationLayout& layout) {
  const Encoder enc(layout);
  const std::size_t k = layout.params.k(), n = layout.n();
  Matrix G(layout.field, k, n);
  std::vector<Elem> unit(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    unit[i] = 1;
    const auto c = enc.encode(unit);
    std::copy(c.begin(), c.end(), G.row(i).begin());
    unit[i] = 0;
  }
  return G;
}

Matrix parity_check_matrix(const EvaluationLayout& layout) { return nullspace(generator_matrix(layout)); }

LinearCode code_from_parity_check(const Matrix& H, std::vector<RepairSet> repair_sets) {
  LinearCode code;
  code.field = H.field();
  code.n = H.cols();
  code.H = row_basis(H);
  code.k = code.n - code.H.rows();
  code.G = nullspace(code.H);
  code.repair_sets = std::move(repair_sets);
  return code;
}

LinearCode build_code(const EvaluationLayout& layout) {
  LinearCode code;
  code.field = layout.field;
  code.n = layout.n();
  code.k = layout.params.k();
  Matrix G = generator_matrix(layout);
  if (rank(G) != code.k) fail(ErrorKind::InternalInvariantViolation, "generator matrix is rank deficient");
  code.H = nullspace(G);
  code.G = std::move(G);
  for (std::size_t i = 0; i < layout.A.size(); ++i) code.repair_sets.push_back({layout.set_coords(i), layout.params.delta});
  return code;
}

Matrix punctured_parity_check(const Matrix& G, std::span<const std::size_t> coords) {
  return nullspace(G.select_columns(coords));
}

LocalityReport verify_locality(const LinearCode& code) {
  LocalityReport rep;
  const Matrix G = code.generator();
  std::set<std::size_t> uni;
  bool all = true;
  for (const auto& rs : code.repair_sets) {
    LocalityReport::Entry e;
    e.size = rs.coords.size();
    e.required = rs.delta;
    const Matrix Hs = punctured_parity_check(G, rs.coords);
    if (rank(G.select_columns(rs.coords)) == 0) {
      e.distance = e.size + 1;
    } else {
      DistanceOptions opts;
      opts.d_max = e.size;
      const auto d = min_distance(Hs, opts);
      e.distance = d.d;
    }
    e.ok = e.distance >= e.required;
    all = all && e.ok;
    rep.sets.push_back(e);
    uni.insert(rs.coords.begin(), rs.coords.end());
  }
  const std::vector<std::size_t> u(uni.begin(), uni.end());
  rep.info_rank = u.empty() ? 0 : rank(G.select_columns(u));
  rep.information_locality = rep.info_rank == code.k;
  rep.ok = all && rep.information_locality && !code.repair_sets.empty();
  return rep;
}

std::vector<RepairSet> repair_sets_from_rows(const Matrix& H, std::size_t max_weight, std::size_t delta) {
  std::vector<RepairSet> out;
  for (std::size_t i = 0; i < H.rows(); ++i) {
    RepairSet rs;
    rs.delta = delta;
    for (std::size_t c = 0; c < H.cols(); ++c)
      if (H(i, c) != 0) rs.coords.push_back(c);
    if (!rs.coords.empty() && rs.coords.size() <= max_weight) out.push_back(std::move(rs));
  }
  return out;
}

}  // namespace lrcw
