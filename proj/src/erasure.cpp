#include "lrcw/erasure.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

#include "lrcw/error.hpp"
#include "lrcw/poly.hpp"
#include "lrcw/rng.hpp"

namespace lrcw {

namespace {

std::size_t index_in(const std::vector<Elem>& v, Elem x) {
  const auto it = std::find(v.begin(), v.end(), x);
  require(it != v.end(), ErrorKind::InvalidParameter, "erased point " + std::to_string(x) + " not in its set");
  return static_cast<std::size_t>(it - v.begin());
}

bool contains(const std::vector<Elem>& v, Elem x) { return std::find(v.begin(), v.end(), x) != v.end(); }

}  // namespace

std::vector<std::size_t> ErasurePattern::coords(const EvaluationLayout& layout) const {
  std::vector<std::size_t> c;
  for (std::size_t i = 0; i < E.size(); ++i)
    for (auto x : E[i]) c.push_back(layout.coord(i, index_in(layout.A.at(i), x)));
  for (auto s : glob) c.push_back(layout.global_coord(index_in(layout.S, s)));
  std::sort(c.begin(), c.end());
  return c;
}

std::size_t ErasurePattern::distinct_points() const {
  std::set<Elem> pts;
  for (const auto& e : E) pts.insert(e.begin(), e.end());
  return pts.size() + glob.size();
}

std::size_t ErasurePattern::size() const {
  std::size_t s = glob.size();
  for (const auto& e : E) s += e.size();
  return s;
}

ErasurePattern ErasurePattern::empty(const EvaluationLayout& layout) {
  ErasurePattern p;
  p.E.resize(layout.A.size());
  return p;
}

ErasurePattern ErasurePattern::from_coords(const EvaluationLayout& layout, std::span<const std::size_t> coords) {
  auto p = empty(layout);
  for (auto c : coords) {
    const auto pos = layout.position(c);
    if (pos.global)
      p.glob.push_back(layout.S[pos.index]);
    else
      p.E[pos.set].push_back(layout.A[pos.set][pos.index]);
  }
  p.canonicalize();
  return p;
}

void ErasurePattern::canonicalize() {
  for (auto& e : E) std::sort(e.begin(), e.end());
  std::sort(glob.begin(), glob.end());
}

void validate_pattern(const EvaluationLayout& layout, const ErasurePattern& pat) {
  require(pat.E.size() == layout.A.size(), ErrorKind::InvalidParameter, "pattern needs one entry per repair set");
  for (std::size_t i = 0; i < pat.E.size(); ++i) {
    std::set<Elem> seen;
    for (auto x : pat.E[i]) {
      require(contains(layout.A[i], x), ErrorKind::InvalidParameter, "erased point outside its repair set");
      require(seen.insert(x).second, ErrorKind::InvalidParameter, "erased point repeated");
    }
  }
  std::set<Elem> seen;
  for (auto s : pat.glob) {
    require(contains(layout.S, s), ErrorKind::InvalidParameter, "erased global point outside S");
    require(seen.insert(s).second, ErrorKind::InvalidParameter, "erased global point repeated");
  }
}

Admissibility pattern_admissible(const EvaluationLayout& layout, const ErasurePattern& pat) {
  validate_pattern(layout, pat);
  const std::size_t delta = layout.params.delta, h = layout.params.h;
  Admissibility a;
  std::set<Elem> uni;
  for (std::size_t i = 0; i < pat.E.size(); ++i)
    if (pat.E[i].size() >= delta) {
      a.heavy.push_back(i);
      uni.insert(pat.E[i].begin(), pat.E[i].end());
    }
  a.heavy_union = uni.size();
  a.count_ok = a.heavy_union + pat.glob.size() <= h + delta - 1;
  a.overlap_ok = true;
  for (auto i : a.heavy) {
    std::set<Elem> others;
    for (auto j : a.heavy)
      if (j != i) others.insert(layout.A[j].begin(), layout.A[j].end());
    std::size_t common = 0;
    for (auto x : layout.A[i]) common += others.count(x);
    if (common > delta - 1) a.overlap_ok = false;
  }
  a.admissible = a.count_ok && a.overlap_ok;
  return a;
}

Received erase(std::span<const Elem> codeword, std::span<const std::size_t> coords) {
  Received r(codeword.begin(), codeword.end());
  for (auto c : coords) r.at(c).reset();
  return r;
}

namespace {

// Guards every read of the received word against the erased coordinate set.
class Survivors {
public:
  Survivors(const Received& r, const std::vector<std::size_t>& erased) : r_(r), erased_(r.size(), false) {
    for (auto c : erased) erased_.at(c) = true;
  }
  bool erased(std::size_t c) const { return erased_[c]; }
  Elem at(std::size_t c) const {
    if (erased_[c]) fail(ErrorKind::InternalInvariantViolation, "decoder read erased coordinate " + std::to_string(c));
    require(r_[c].has_value(), ErrorKind::InvalidParameter, "survivor " + std::to_string(c) + " is missing");
    return *r_[c];
  }

private:
  const Received& r_;
  std::vector<bool> erased_;
};

// Interpolates through the first `need` points and checks the rest.
Poly fit(const FiniteField& f, const std::vector<InterpolationPoint>& pts, std::size_t need, const char* what) {
  require(pts.size() >= need, ErrorKind::InternalInvariantViolation, std::string("too few known values for ") + what);
  const Poly p = poly::interpolate(f, std::span(pts).first(need));
  for (std::size_t i = need; i < pts.size(); ++i)
    if (poly::eval(f, p, pts[i].x) != pts[i].y) fail(ErrorKind::Inconsistent, std::string("survivors disagree on ") + what);
  return p;
}

}  // namespace

std::vector<Elem> decode_structured(const EvaluationLayout& layout, const Received& received,
                                    const ErasurePattern& pat) {
  require(received.size() == layout.n(), ErrorKind::InvalidParameter, "received word has wrong length");
  const auto adm = pattern_admissible(layout, pat);
  require(adm.admissible, ErrorKind::NotAdmissible, "pattern violates the recoverability conditions");
  const auto& f = *layout.field;
  const auto& A = layout.A;
  const std::size_t delta = layout.params.delta;
  const Survivors rx(received, pat.coords(layout));
  const Encoder enc(layout);

  std::vector<bool> heavy(A.size(), false);
  for (auto i : adm.heavy) heavy[i] = true;

  // Light sets: re-interpolate from survivors.
  std::vector<Poly> fpoly(A.size());
  for (std::size_t i = 0; i < A.size(); ++i) {
    if (heavy[i]) continue;
    std::vector<InterpolationPoint> pts;
    for (std::size_t t = 0; t < A[i].size(); ++t) {
      const auto c = layout.coord(i, t);
      if (!rx.erased(c)) pts.push_back({A[i][t], rx.at(c)});
    }
    fpoly[i] = fit(f, pts, A[i].size() - delta + 1, "a light repair set");
  }

  if (!adm.heavy.empty()) {
    std::vector<Elem> U;  // union of the heavy sets, ascending
    for (auto i : adm.heavy) U.insert(U.end(), A[i].begin(), A[i].end());
    std::sort(U.begin(), U.end());
    U.erase(std::unique(U.begin(), U.end()), U.end());

    // Delta / prod_{theta in U} (x - theta), and the contribution of non-heavy sets.
    Poly Delta = Poly::constant(1);
    for (std::size_t i = 0; i < A.size(); ++i) Delta = poly::mul(f, Delta, enc.g(i));
    const Poly Phi = poly::exact_div(f, Delta, poly::from_roots(f, U));
    Poly known;
    for (std::size_t i = 0; i < A.size(); ++i)
      if (!heavy[i]) known = poly::add(f, known, poly::mul(f, fpoly[i], enc.cofactor(i)));

    auto weight = [&](std::size_t i, Elem theta) {
      Elem w = 1;
      for (auto u : U)
        if (!contains(A[i], u)) w = f.mul(w, f.sub(theta, u));
      return w;
    };

    std::vector<InterpolationPoint> vals;
    for (auto theta : U) {
      Elem acc = 0;
      bool ok = true;
      for (auto i : adm.heavy) {
        if (!contains(A[i], theta)) continue;
        const auto c = layout.coord(i, index_in(A[i], theta));
        if (rx.erased(c)) {
          ok = false;
          break;
        }
        acc = f.add(acc, f.mul(weight(i, theta), rx.at(c)));
      }
      if (ok) vals.push_back({theta, acc});
    }
    for (std::size_t s = 0; s < layout.S.size(); ++s) {
      const auto c = layout.global_coord(s);
      if (rx.erased(c)) continue;
      const Elem x = layout.S[s];
      vals.push_back({x, f.div(f.sub(rx.at(c), poly::eval(f, known, x)), poly::eval(f, Phi, x))});
    }
    const Poly fE = fit(f, vals, U.size() - delta + 1, "the heavy-set combination");

    for (auto i : adm.heavy) {
      std::vector<InterpolationPoint> pts;
      for (auto theta : A[i]) {
        bool exclusive = true;
        for (auto j : adm.heavy)
          if (j != i && contains(A[j], theta)) exclusive = false;
        if (exclusive) pts.push_back({theta, f.div(poly::eval(f, fE, theta), weight(i, theta))});
      }
      fpoly[i] = fit(f, pts, A[i].size() - delta + 1, "a heavy repair set");
      for (std::size_t t = 0; t < A[i].size(); ++t) {
        const auto c = layout.coord(i, t);
        if (!rx.erased(c) && rx.at(c) != poly::eval(f, fpoly[i], A[i][t]))
          fail(ErrorKind::Inconsistent, "survivors disagree on a heavy repair set");
      }
    }
  }

  std::vector<Elem> out(layout.n());
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t t = 0; t < A[i].size(); ++t) out[layout.coord(i, t)] = poly::eval(f, fpoly[i], A[i][t]);
  if (layout.params.h > 0) {
    const Poly fI = enc.global_poly(fpoly);
    for (std::size_t s = 0; s < layout.S.size(); ++s) {
      const auto c = layout.global_coord(s);
      out[c] = poly::eval(f, fI, layout.S[s]);
      if (!rx.erased(c) && rx.at(c) != out[c]) fail(ErrorKind::Inconsistent, "survivors disagree on a global parity");
    }
  }
  return out;
}

std::optional<std::vector<Elem>> decode_linear(const Matrix& H, std::span<const std::size_t> erased,
                                               const Received& received) {
  require(received.size() == H.cols(), ErrorKind::InvalidParameter, "received word has wrong length");
  const auto& f = *H.field();
  std::vector<bool> is_erased(H.cols(), false);
  for (auto c : erased) is_erased.at(c) = true;
  std::vector<Elem> word(H.cols(), 0);
  for (std::size_t c = 0; c < H.cols(); ++c) {
    if (is_erased[c]) continue;
    require(received[c].has_value(), ErrorKind::InvalidParameter, "survivor " + std::to_string(c) + " is missing");
    word[c] = *received[c];
  }
  if (erased.empty()) {
    for (auto s : multiply(H, word))
      if (s != 0) fail(ErrorKind::Inconsistent, "received word is not a codeword");
    return word;
  }
  const Matrix HE = H.select_columns(erased);
  if (rank(HE) != erased.size()) return std::nullopt;
  auto syn = multiply(H, word);
  for (auto& s : syn) s = f.neg(s);
  const auto x = solve(HE, syn);
  if (!x) fail(ErrorKind::Inconsistent, "survivors admit no codeword");
  for (std::size_t j = 0; j < erased.size(); ++j) word[erased[j]] = (*x)[j];
  return word;
}

bool recoverable(const Matrix& H, std::span<const std::size_t> coords) {
  if (coords.empty()) return true;
  if (coords.size() > H.rows()) return false;
  return rank(H.select_columns(coords)) == coords.size();
}

DistanceResult min_distance(const Matrix& H, const DistanceOptions& opts) {
  const std::size_t n = H.cols(), dim = H.rows();
  const std::size_t d_max = opts.d_max ? opts.d_max : dim + 1;
  const std::size_t limit = std::min(d_max, n);
  const auto& f = *H.field();
  std::vector<std::vector<Elem>> cols(n);
  for (std::size_t c = 0; c < n; ++c) cols[c] = H.column(c);

  const std::size_t none = limit + 1;
  std::atomic<std::size_t> global_best{none};
  std::atomic<std::size_t> next_first{0};
  std::atomic<std::uint64_t> tests{0};
  std::atomic<bool> abort{false};
  std::vector<std::size_t> best_in(n, none);
  std::vector<std::vector<std::size_t>> wit(n);
  std::exception_ptr error;
  std::mutex error_mu;

  auto worker = [&]() {
    try {
      IncrementalBasis basis(f, dim);
      std::vector<std::size_t> stack;
      std::size_t own = none;
      std::vector<std::size_t> own_wit;
      // Largest subset size still worth testing.
      auto allowed = [&]() { return std::min(global_best.load(std::memory_order_relaxed), own - 1); };
      auto tick = [&]() {
        if (tests.fetch_add(1, std::memory_order_relaxed) + 1 > opts.guard) {
          abort = true;
          fail(ErrorKind::Infeasible, "distance search exceeded the rank-test guard");
        }
        if (abort.load(std::memory_order_relaxed)) fail(ErrorKind::Infeasible, "distance search aborted");
      };
      auto found = [&](std::size_t size) {
        own = size;
        own_wit = stack;
        std::size_t g = global_best.load();
        while (size < g && !global_best.compare_exchange_weak(g, size)) {
        }
      };
      auto dfs = [&](auto&& self) -> void {
        for (std::size_t c = stack.back() + 1; c < n; ++c) {
          const std::size_t size = stack.size() + 1;
          if (size > allowed()) return;
          tick();
          stack.push_back(c);
          if (!basis.push(cols[c])) {
            found(size);
            stack.pop_back();
            continue;
          }
          if (size + 1 <= allowed()) self(self);
          basis.pop();
          stack.pop_back();
        }
      };
      for (std::size_t first; (first = next_first.fetch_add(1)) < n;) {
        own = none;
        own_wit.clear();
        if (1 > allowed()) {
          best_in[first] = none;
          continue;
        }
        tick();
        stack.assign(1, first);
        if (!basis.push(cols[first])) {
          found(1);
        } else {
          if (2 <= allowed()) dfs(dfs);
          basis.pop();
        }
        stack.clear();
        best_in[first] = own;
        wit[first] = own_wit;
      }
    } catch (...) {
      abort = true;
      std::lock_guard lock(error_mu);
      if (!error) error = std::current_exception();
    }
  };

  const unsigned workers = std::max(1u, opts.workers);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  DistanceResult res;
  res.rank_tests = tests.load();
  std::size_t best = none;
  for (std::size_t i = 0; i < n; ++i)
    if (best_in[i] < best) {
      best = best_in[i];
      res.witness = wit[i];
    }
  if (best == none) {
    res.bounded = false;
    res.d = limit + 1;
  } else {
    res.d = best;
  }
  return res;
}

void for_each_combination(std::size_t n, std::size_t w,
                          const std::function<bool(std::span<const std::size_t>)>& fn) {
  if (w > n) return;
  std::vector<std::size_t> idx(w);
  for (std::size_t i = 0; i < w; ++i) idx[i] = i;
  while (true) {
    if (!fn(idx)) return;
    std::size_t i = w;
    while (i > 0 && idx[i - 1] == n - w + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t k = i; k < w; ++k) idx[k] = idx[k - 1] + 1;
  }
}

void for_each_subset(std::size_t n, std::size_t w_max,
                     const std::function<bool(std::span<const std::size_t>)>& fn) {
  bool go = true;
  for (std::size_t w = 0; w <= std::min(w_max, n) && go; ++w)
    for_each_combination(n, w, [&](std::span<const std::size_t> s) { return go = fn(s); });
}

namespace patterns {

std::vector<ErasurePattern> exhaustive(const EvaluationLayout& layout, std::size_t w) {
  std::vector<ErasurePattern> out;
  for_each_subset(layout.n(), w, [&](std::span<const std::size_t> s) {
    out.push_back(ErasurePattern::from_coords(layout, s));
    return true;
  });
  return out;
}

std::vector<ErasurePattern> sampled(const EvaluationLayout& layout, std::size_t count, std::size_t w,
                                    std::uint64_t seed) {
  require(w <= layout.n(), ErrorKind::InvalidParameter, "pattern weight exceeds n");
  Rng rng(seed);
  std::vector<ErasurePattern> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto c = rng.distinct(layout.n(), w);
    out.push_back(ErasurePattern::from_coords(layout, c));
  }
  return out;
}

std::vector<ErasurePattern> full_blocks(const EvaluationLayout& layout, std::size_t y, std::size_t g) {
  std::vector<ErasurePattern> out;
  for_each_combination(layout.A.size(), y, [&](std::span<const std::size_t> sets) {
    for_each_combination(layout.S.size(), g, [&](std::span<const std::size_t> gs) {
      auto p = ErasurePattern::empty(layout);
      for (auto i : sets) p.E[i] = layout.A[i];
      for (auto s : gs) p.glob.push_back(layout.S[s]);
      p.canonicalize();
      out.push_back(std::move(p));
      return true;
    });
    return true;
  });
  return out;
}

std::vector<ErasurePattern> heavy_blocks(const EvaluationLayout& layout, std::size_t max_heavy,
                                         std::size_t max_points) {
  const std::size_t delta = layout.params.delta;
  std::vector<ErasurePattern> out;
  // Heavy subsets of each set, as index lists.
  auto heavy_subsets = [&](std::size_t set) {
    std::vector<std::vector<Elem>> subs;
    const auto& a = layout.A[set];
    for (std::size_t w = delta; w <= a.size(); ++w)
      for_each_combination(a.size(), w, [&](std::span<const std::size_t> idx) {
        std::vector<Elem> e;
        for (auto i : idx) e.push_back(a[i]);
        subs.push_back(std::move(e));
        return true;
      });
    return subs;
  };
  std::vector<std::vector<std::vector<Elem>>> subs(layout.A.size());
  for (std::size_t i = 0; i < layout.A.size(); ++i) subs[i] = heavy_subsets(i);

  for (std::size_t w = 0; w <= max_heavy; ++w) {
    for_each_combination(layout.A.size(), w, [&](std::span<const std::size_t> sets) {
      std::vector<std::size_t> choice(w, 0);
      while (true) {
        auto base = ErasurePattern::empty(layout);
        for (std::size_t t = 0; t < w; ++t) base.E[sets[t]] = subs[sets[t]][choice[t]];
        const std::size_t pts = base.distinct_points();
        if (pts <= max_points) {
          for (std::size_t g = 0; g <= std::min(layout.S.size(), max_points - pts); ++g)
            for_each_combination(layout.S.size(), g, [&](std::span<const std::size_t> gs) {
              auto p = base;
              for (auto s : gs) p.glob.push_back(layout.S[s]);
              p.canonicalize();
              out.push_back(std::move(p));
              return true;
            });
        }
        std::size_t t = 0;
        while (t < w && ++choice[t] == subs[sets[t]].size()) choice[t++] = 0;
        if (t == w) break;
      }
      return true;
    });
  }
  return out;
}

}  // namespace patterns
}  // namespace lrcw
