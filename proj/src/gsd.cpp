#include "lrcw/gsd.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

#include "lrcw/bounds.hpp"
#include "lrcw/design.hpp"
#include "lrcw/erasure.hpp"
#include "lrcw/error.hpp"
#include "lrcw/parallel.hpp"
#include "lrcw/rng.hpp"

namespace lrcw {

std::string to_string(ArrayKind kind) {
  switch (kind) {
    case ArrayKind::Basic: return "basic";
    case ArrayKind::Rearranged: return "rearranged";
    case ArrayKind::Truncated: return "truncated";
    case ArrayKind::Imported: return "imported";
  }
  return "?";
}

std::vector<std::size_t> ArrayLayout::column_coords(std::size_t col) const {
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < rows; ++r)
    if (auto c = at(r, col)) out.push_back(*c);
  return out;
}

std::size_t ArrayLayout::zero_fill() const {
  return static_cast<std::size_t>(std::count(cells.begin(), cells.end(), std::nullopt));
}

ArrayLayout column_major(std::size_t n, std::size_t rows, std::size_t data_cols) {
  require(rows > 0, ErrorKind::InvalidParameter, "array needs at least one row");
  ArrayLayout arr;
  arr.kind = ArrayKind::Imported;
  arr.rows = rows;
  arr.cols = (n + rows - 1) / rows;
  arr.cells.assign(arr.rows * arr.cols, std::nullopt);
  for (std::size_t c = 0; c < n; ++c) arr.cells[(c % rows) * arr.cols + c / rows] = c;
  arr.column_points.assign(arr.cols, std::nullopt);
  arr.data_cols = std::min(data_cols, arr.cols);
  return arr;
}

namespace {

// Coordinates evaluated at each universe point, in block order.
std::map<Elem, std::vector<std::size_t>> symbols_by_point(const EvaluationLayout& L) {
  std::map<Elem, std::vector<std::size_t>> by;
  for (auto x : L.universe) by[x];
  for (std::size_t i = 0; i < L.A.size(); ++i)
    for (std::size_t t = 0; t < L.A[i].size(); ++t) by[L.A[i][t]].push_back(L.coord(i, t));
  return by;
}

// Regularity of the underlying design: every point lies in t blocks, counting
// the dropped points of the last block.
std::size_t regularity(const EvaluationLayout& L, const std::map<Elem, std::vector<std::size_t>>& by) {
  std::set<Elem> dropped(L.dropped.begin(), L.dropped.end());
  std::optional<std::size_t> t;
  for (const auto& [x, coords] : by) {
    const std::size_t w = coords.size() + dropped.count(x);
    if (!t) t = w;
    if (*t != w) fail(ErrorKind::NotRegular, "design is not regular");
  }
  require(t.has_value() && *t > 0, ErrorKind::NotRegular, "design has no points");
  return *t;
}

void place_column(ArrayLayout& arr, std::size_t col, const std::vector<std::size_t>& coords) {
  require(coords.size() <= arr.rows, ErrorKind::InternalInvariantViolation, "column overflow");
  for (std::size_t r = 0; r < coords.size(); ++r) arr.cells[r * arr.cols + col] = coords[r];
}

}  // namespace

ArrayLayout array_basic(const EvaluationLayout& L) {
  const auto by = symbols_by_point(L);
  const std::size_t t = regularity(L, by);
  const std::size_t m = by.size(), h = L.params.h;
  ArrayLayout arr;
  arr.kind = ArrayKind::Basic;
  arr.rows = t;
  arr.cols = m + (h + t - 1) / t;
  arr.cells.assign(arr.rows * arr.cols, std::nullopt);
  arr.column_points.assign(arr.cols, std::nullopt);
  arr.data_cols = m;
  std::size_t col = 0;
  for (const auto& [x, coords] : by) {
    arr.column_points[col] = x;
    place_column(arr, col++, coords);
  }
  for (std::size_t i = 0; i < h; ++i) arr.cells[(i % t) * arr.cols + m + i / t] = L.global_coord(i);
  validate_array(arr, L.n());
  return arr;
}

ArrayLayout array_rearranged(const EvaluationLayout& L) {
  const auto by = symbols_by_point(L);
  const std::size_t t = regularity(L, by);
  require(L.dropped.empty(), ErrorKind::InvalidParameter, "rearranged arrays need untruncated blocks");
  const std::size_t rho = by.size(), h = L.params.h;
  require(h % rho == 0, ErrorKind::InvalidParameter,
          "number of columns " + std::to_string(rho) + " must divide h = " + std::to_string(h));
  const std::size_t per = h / rho;
  ArrayLayout arr;
  arr.kind = ArrayKind::Rearranged;
  arr.rows = t + per;
  arr.cols = rho;
  arr.cells.assign(arr.rows * arr.cols, std::nullopt);
  arr.column_points.assign(arr.cols, std::nullopt);
  arr.data_cols = rho;
  std::size_t col = 0;
  for (const auto& [x, coords] : by) {
    auto column = coords;
    for (std::size_t j = 0; j < per; ++j) column.push_back(L.global_coord(col * per + j));
    arr.column_points[col] = x;
    place_column(arr, col++, column);
  }
  validate_array(arr, L.n());
  return arr;
}

ArrayLayout array_truncated(const EvaluationLayout& L) {
  const auto& p = L.params;
  require(p.v < p.r && p.h == p.r - p.v, ErrorKind::InvalidParameter, "truncated arrays need h = r - v >= 1");
  require(L.dropped.size() == p.h, ErrorKind::InvalidParameter, "last block must drop exactly r - v points");
  const auto by = symbols_by_point(L);
  const std::size_t t = regularity(L, by);
  ArrayLayout arr;
  arr.kind = ArrayKind::Truncated;
  arr.rows = t;
  arr.cols = by.size();
  arr.cells.assign(arr.rows * arr.cols, std::nullopt);
  arr.column_points.assign(arr.cols, std::nullopt);
  arr.data_cols = arr.cols;
  std::size_t col = 0;
  for (std::size_t a = 0; a < L.dropped.size(); ++a) {
    const Elem x = L.dropped[a];
    auto column = by.at(x);
    column.push_back(L.global_coord(a));
    arr.column_points[col] = x;
    place_column(arr, col++, column);
  }
  const std::set<Elem> dropped(L.dropped.begin(), L.dropped.end());
  for (const auto& [x, coords] : by) {
    if (dropped.count(x)) continue;
    arr.column_points[col] = x;
    place_column(arr, col++, coords);
  }
  validate_array(arr, L.n());
  return arr;
}

void validate_array(const ArrayLayout& arr, std::size_t n) {
  require(arr.cells.size() == arr.rows * arr.cols, ErrorKind::InvalidParameter, "cell table has wrong size");
  std::vector<int> seen(n, 0);
  for (const auto& c : arr.cells)
    if (c) {
      require(*c < n, ErrorKind::InvalidParameter, "cell maps outside the code");
      ++seen[*c];
    }
  for (std::size_t c = 0; c < n; ++c)
    require(seen[c] == 1, ErrorKind::InternalInvariantViolation,
            "coordinate " + std::to_string(c) + " placed " + std::to_string(seen[c]) + " times");
}

namespace {

long double count_patterns(const ArrayLayout& arr, std::size_t y, std::size_t gamma, bool data_only) {
  const std::size_t ncols = data_only ? arr.data_cols : arr.cols;
  const std::size_t total_cells = arr.coordinates();
  long double total = 0;
  for_each_combination(ncols, y, [&](std::span<const std::size_t> cs) {
    std::size_t in_cols = 0;
    for (auto c : cs) in_cols += arr.column_coords(c).size();
    total += static_cast<long double>(binomial(total_cells - in_cols, gamma));
    return true;
  });
  return total;
}

}  // namespace

std::uint64_t gsd_pattern_count(const ArrayLayout& arr, std::size_t y, std::size_t gamma, bool data_only) {
  const long double total = count_patterns(arr, y, gamma, data_only);
  return total > 1.8e19L ? ~std::uint64_t{0} : static_cast<std::uint64_t>(total);
}

GsdReport gsd_check(const ArrayLayout& arr, const Matrix& H, const GsdCheckOptions& opts) {
  validate_array(arr, H.cols());
  GsdReport rep;
  rep.y = opts.y;
  rep.gamma = opts.gamma;
  rep.data_only = opts.data_only;
  rep.rows = arr.rows;
  rep.d = opts.d;
  rep.qualifies = opts.d > 0 && opts.y * arr.rows + opts.gamma > opts.d - 1;
  const std::size_t ncols = opts.data_only ? arr.data_cols : arr.cols;
  require(opts.y <= ncols, ErrorKind::InvalidParameter, "more erased columns than candidate columns");

  std::vector<std::vector<std::size_t>> col_coords(arr.cols);
  for (std::size_t c = 0; c < arr.cols; ++c) col_coords[c] = arr.column_coords(c);
  const std::size_t total_cells = arr.coordinates();

  // Candidate column sets in lexicographic order.
  std::vector<std::vector<std::size_t>> combos;
  for_each_combination(ncols, opts.y, [&](std::span<const std::size_t> s) {
    combos.emplace_back(s.begin(), s.end());
    return combos.size() <= 50'000'000;
  });
  auto remaining = [&](const std::vector<std::size_t>& cols) {
    std::vector<bool> taken(H.cols(), false);
    for (auto c : cols)
      for (auto x : col_coords[c]) taken[x] = true;
    std::vector<std::size_t> rest;
    rest.reserve(total_cells);
    for (std::size_t x = 0; x < H.cols(); ++x)
      if (!taken[x]) rest.push_back(x);
    return rest;
  };
  auto erased_of = [&](const std::vector<std::size_t>& cols) {
    std::vector<std::size_t> e;
    for (auto c : cols) e.insert(e.end(), col_coords[c].begin(), col_coords[c].end());
    return e;
  };

  const long double total = count_patterns(arr, opts.y, opts.gamma, opts.data_only);
  rep.total = total > 1.8e19L ? ~std::uint64_t{0} : static_cast<std::uint64_t>(total);

  std::mutex mu;
  std::vector<std::pair<std::uint64_t, std::vector<std::size_t>>> failures;
  std::atomic<std::uint64_t> tested{0}, passed{0};
  auto record = [&](std::uint64_t order, std::vector<std::size_t> coords) {
    std::sort(coords.begin(), coords.end());
    ++tested;
    if (recoverable(H, coords)) {
      ++passed;
      return;
    }
    std::lock_guard lock(mu);
    failures.emplace_back(order, std::move(coords));
  };

  if (total <= static_cast<long double>(opts.exhaustive_limit)) {
    // Order key: combo index * 2^32 + cell-combination index.
    parallel_for(combos.size(), opts.workers, [&](std::size_t ci) {
      const auto base = erased_of(combos[ci]);
      const auto rest = remaining(combos[ci]);
      std::uint64_t local = 0;
      for_each_combination(rest.size(), opts.gamma, [&](std::span<const std::size_t> pick) {
        auto coords = base;
        for (auto i : pick) coords.push_back(rest[i]);
        record((static_cast<std::uint64_t>(ci) << 32) | local++, std::move(coords));
        return true;
      });
    });
  } else {
    rep.sampled = true;
    rep.seed = opts.seed;
    Rng rng(opts.seed);
    std::vector<std::vector<std::size_t>> draws(opts.samples);
    for (auto& d : draws) {
      const auto cols = rng.distinct(ncols, opts.y);
      d = erased_of(cols);
      const auto rest = remaining(cols);
      require(opts.gamma <= rest.size(), ErrorKind::InvalidParameter, "gamma exceeds the remaining cells");
      for (auto i : rng.distinct(rest.size(), opts.gamma)) d.push_back(rest[i]);
    }
    parallel_for(draws.size(), opts.workers, [&](std::size_t i) { record(i, draws[i]); });
  }
  rep.tested = tested;
  rep.passed = passed;
  rep.failed = failures.size();
  std::sort(failures.begin(), failures.end());
  for (std::size_t i = 0; i < std::min<std::size_t>(failures.size(), 10); ++i) rep.witnesses.push_back(failures[i].second);
  return rep;
}

std::string to_string(Family f) {
  switch (f) {
    case Family::AG: return "ag";
    case Family::PG: return "pg";
    case Family::SG: return "sg";
    case Family::RegularPacking: return "packing";
  }
  return "?";
}

Family family_from_string(const std::string& s) {
  if (s == "ag") return Family::AG;
  if (s == "pg") return Family::PG;
  if (s == "sg") return Family::SG;
  if (s == "packing" || s == "rp") return Family::RegularPacking;
  fail(ErrorKind::InvalidParameter, "unknown family '" + s + "'");
}

namespace {

std::int64_t ipow(std::int64_t b, unsigned e) {
  std::int64_t r = 1;
  while (e--) r *= b;
  return r;
}

std::int64_t choose2(std::int64_t x) { return x * (x - 1) / 2; }

}  // namespace

GsdParamsReport gsd_params(const GsdParamsInput& in) {
  GsdParamsReport rep;
  rep.family = in.family;
  const auto delta = static_cast<std::int64_t>(in.delta);
  const auto v = static_cast<std::int64_t>(in.v);
  auto violate = [&](const std::string& s) { rep.violations.push_back(s); };

  if (delta < 2) violate("delta >= 2 violated");
  if (in.family == Family::RegularPacking) {
    if (in.prime_powers.empty() || in.e < 2) {
      violate("regular packing needs prime powers and e >= 2");
      return rep;
    }
    const auto e = static_cast<std::int64_t>(in.e);
    std::int64_t n2 = 1, p = 1, eu = 1;
    for (auto q : in.prime_powers) {
      if (prime_power(q).first == 0) violate(std::to_string(q) + " is not a prime power");
      if ((static_cast<std::int64_t>(q) - 1) % e != 0) violate("e does not divide " + std::to_string(q) + " - 1");
      n2 *= static_cast<std::int64_t>(q);
      p *= static_cast<std::int64_t>(q) - 1;
      eu *= e;
    }
    rep.t = e;
    rep.r = e - delta + 1;
    rep.b = p / eu;
    rep.cols = e * n2;
    rep.blocks = n2 * p / eu;
    rep.q_min = e * n2;
  } else {
    const auto q1 = static_cast<std::int64_t>(in.q1);
    if (prime_power(in.q1).first == 0) violate(std::to_string(in.q1) + " is not a prime power");
    if (in.beta < 2) violate("beta >= 2 violated");
    if (q1 < 2 || in.beta < 2) return rep;
    const std::int64_t qb = ipow(q1, in.beta);
    switch (in.family) {
      case Family::AG:
        rep.t = q1;
        rep.b = (qb - 1) / (q1 - 1);
        rep.cols = qb;
        break;
      case Family::PG:
        rep.t = q1 + 1;
        rep.b = (qb - 1) / (q1 - 1);
        rep.cols = (qb * q1 - 1) / (q1 - 1);
        break;
      case Family::SG:
        rep.t = q1 + 1;
        rep.b = choose2(qb) / choose2(q1);
        rep.cols = qb + 1;
        break;
      default: break;
    }
    rep.r = rep.t - delta + 1;
    rep.blocks = rep.b * rep.cols / rep.t;
    rep.q_min = rep.cols;
  }
  if (rep.r < 2) violate("r = t - delta + 1 must be >= 2");
  if (v < 1 || v > rep.r - 1) violate("1 <= v <= r - 1 violated");
  rep.h = rep.r - v;
  rep.n = rep.b * rep.cols;
  rep.k = (rep.blocks - 1) * rep.r + v;
  rep.q_min += rep.h;
  rep.d_stated = rep.h + delta - 1;
  if (rep.r >= 1 && rep.k >= 1) rep.d_singleton = singleton_bound(rep.n, rep.k, rep.r, delta);
  rep.h_le_delta_sq = rep.h <= delta * delta;
  if (!rep.h_le_delta_sq) violate("h <= delta^2 violated");
  rep.valid = rep.violations.empty();
  if (!rep.valid) return rep;

  const std::int64_t h = rep.h, b = rep.b, d = h + delta;
  const std::int64_t tri = delta * (delta + 1) / 2;
  auto add = [&](const char* item, std::int64_t y, std::int64_t gamma, bool pre, bool beyond) {
    GsdClaim c;
    c.item = item;
    c.y = y;
    c.gamma = gamma;
    c.precondition = pre;
    c.beyond = beyond;
    c.claimed = pre && beyond && gamma >= 0;
    c.qualifies = y * b + gamma > d - 1;
    rep.claims.push_back(c);
  };
  for (std::int64_t y = 1; y <= static_cast<std::int64_t>(in.y_max); ++y) {
    add("I", y, h - 2 * y - 1, y <= 2, y * (b - 2) > delta);
    add("II", y, h - 2 - choose2(y) - y, choose2(y) <= delta, y * b - 1 - choose2(y) - y > delta);
    const std::int64_t g3 = std::min(tri - 2 * y - 1, h + delta - 1 - 2 * y);
    add("III", y, g3, y < tri - 1, y * b + g3 > h + delta - 1);
  }
  return rep;
}

}  // namespace lrcw
