#include "lrcw/goppa.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "lrcw/bounds.hpp"
#include "lrcw/erasure.hpp"
#include "lrcw/error.hpp"

namespace lrcw {

std::size_t GoppaParams::r() const {
  require(!sets.empty(), ErrorKind::InvalidParameter, "need at least one local set");
  require(sets[0].size() + 1 > delta(), ErrorKind::InvalidParameter, "local sets must have at least delta points");
  return sets[0].size() - delta() + 1;
}

std::size_t GoppaParams::n() const {
  std::size_t n = last.size();
  for (const auto& s : sets) n += s.size();
  return n;
}

std::vector<Elem> GoppaParams::gamma() const {
  std::vector<Elem> g;
  for (const auto& s : sets) g.insert(g.end(), s.begin(), s.end());
  g.insert(g.end(), last.begin(), last.end());
  return g;
}

void GoppaParams::validate() const {
  require(field != nullptr, ErrorKind::InvalidParameter, "missing field");
  require(G1.degree() >= 1, ErrorKind::InvalidParameter, "G1 must have degree delta-1 >= 1");
  require(!G2.is_zero(), ErrorKind::InvalidParameter, "G2 must be nonzero");
  const std::size_t size = r() + delta() - 1;
  for (const auto& s : sets) {
    require(s.size() == size, ErrorKind::InvalidParameter, "local sets must all have r+delta-1 points");
    require(std::set<Elem>(s.begin(), s.end()).size() == s.size(), ErrorKind::InvalidParameter,
            "repeated point inside a local set");
  }
  require(last.size() <= h(), ErrorKind::InvalidParameter, "last set must have at most h points");
  require(std::set<Elem>(last.begin(), last.end()).size() == last.size(), ErrorKind::InvalidParameter,
          "repeated point inside the last set");
  const auto& f = *field;
  for (auto g : gamma()) {
    require(f.contains(g), ErrorKind::InvalidParameter, "evaluation point outside the field");
    require(f.mul(poly::eval(f, G1, g), poly::eval(f, G2, g)) != 0, ErrorKind::InvalidParameter,
            "G1*G2 vanishes at evaluation point " + std::to_string(g));
  }
}

Matrix goppa_pcheck(const GoppaParams& P) {
  P.validate();
  const auto& f = *P.field;
  const std::size_t n = P.n(), delta = P.delta(), h = P.h(), ell = P.ell();
  const auto gam = P.gamma();
  Matrix M(P.field, ell * (delta - 1) + h, n);
  std::size_t col = 0;
  for (std::size_t i = 0; i < ell; ++i)
    for (std::size_t j = 0; j < P.sets[i].size(); ++j, ++col) {
      const Elem g = gam[col];
      const Elem w = f.inv(poly::eval(f, P.G1, g));
      for (std::size_t t = 0; t + 1 < delta; ++t) M(i * (delta - 1) + t, col) = f.mul(w, f.pow(g, t));
    }
  for (std::size_t c = 0; c < n; ++c) {
    const Elem g = gam[c];
    const Elem w = f.inv(poly::eval(f, P.G2, g));
    for (std::size_t t = 0; t < h; ++t) M(ell * (delta - 1) + t, c) = f.mul(w, f.pow(g, t));
  }
  return M;
}

LinearCode goppa_code(const GoppaParams& P) {
  std::vector<RepairSet> rs;
  std::size_t off = 0;
  for (const auto& s : P.sets) {
    RepairSet r;
    for (std::size_t j = 0; j < s.size(); ++j) r.coords.push_back(off + j);
    r.delta = P.delta();
    off += s.size();
    rs.push_back(std::move(r));
  }
  return code_from_parity_check(goppa_pcheck(P), std::move(rs));
}

namespace {

Poly map_poly(const FieldEmbedding& emb, const Poly& p) {
  std::vector<Elem> c(p.coeffs.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = emb(p.coeffs[i]);
  return Poly(std::move(c));
}

}  // namespace

SplittingField splitting_pcheck(const GoppaParams& P) {
  P.validate();
  const auto& f = *P.field;
  const Poly F = poly::mul(f, P.G1, P.G2);
  const Poly gcd = poly::monic_gcd(f, F, poly::derivative(f, F));
  if (gcd.degree() > 0) fail(ErrorKind::NotSeparable, "G1*G2 has a repeated root");

  const std::size_t want1 = static_cast<std::size_t>(P.G1.degree());
  const std::size_t want2 = P.h();
  for (std::uint32_t j = 1;; ++j) {
    std::uint64_t order = 1;
    for (std::uint32_t e = 0; e < f.m() * j; ++e) order *= f.p();
    require(order <= FiniteField::kMaxOrder, ErrorKind::InvalidParameter, "splitting field exceeds 2^16 elements");
    const Field big = j == 1 ? P.field : FiniteField::make(f.p(), f.m() * j);
    const FieldEmbedding emb(P.field, big);
    auto r1 = poly::roots(*big, map_poly(emb, P.G1));
    auto r2 = poly::roots(*big, map_poly(emb, P.G2));
    if (r1.size() != want1 || r2.size() != want2) continue;

    SplittingField sf;
    sf.big = big;
    sf.degree = j;
    sf.roots1 = std::move(r1);
    sf.roots2 = std::move(r2);
    const auto& B = *big;
    const auto gam = P.gamma();
    const std::size_t n = P.n(), d1 = want1, ell = P.ell();
    Matrix M(big, ell * d1 + want2, n);
    std::size_t col = 0;
    for (std::size_t i = 0; i < ell; ++i)
      for (std::size_t c = 0; c < P.sets[i].size(); ++c, ++col)
        for (std::size_t t = 0; t < d1; ++t) M(i * d1 + t, col) = B.inv(B.sub(sf.roots1[t], emb(gam[col])));
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t t = 0; t < want2; ++t) M(ell * d1 + t, c) = B.inv(B.sub(sf.roots2[t], emb(gam[c])));
    sf.pstar = std::move(M);
    return sf;
  }
}

Matrix subfield_pcheck(const GoppaParams& P, const SplittingField& sf) {
  const auto& small = *P.field;
  const auto& big = *sf.big;
  const std::size_t j = sf.degree, m = small.m(), m1 = big.m();
  require(m * j == m1, ErrorKind::InternalInvariantViolation, "splitting degree mismatch");
  const FieldEmbedding emb(P.field, sf.big);
  const Field Fp = FiniteField::make(small.p(), 1);
  const Elem xi = m1 > 1 ? big.p() : 1;

  // Columns: digits of xi^b * omega_c for the small basis omega_c = p^c encoding.
  Matrix basis(Fp, m1, m1);
  std::vector<Elem> small_basis(m);
  for (std::size_t c = 0; c < m; ++c) {
    std::vector<std::uint32_t> d(m, 0);
    d[c] = 1;
    small_basis[c] = small.from_digits(d);
  }
  for (std::size_t b = 0; b < j; ++b)
    for (std::size_t c = 0; c < m; ++c) {
      const auto d = big.digits(big.mul(big.pow(xi, b), emb(small_basis[c])));
      for (std::size_t row = 0; row < m1; ++row) basis(row, b * m + c) = d[row];
    }
  require(rank(basis) == m1, ErrorKind::InternalInvariantViolation, "powers of xi are not a basis");

  auto coords = [&](Elem z) {
    const auto d = big.digits(z);
    std::vector<Elem> rhs(d.begin(), d.end());
    const auto u = solve(basis, rhs);
    require(u.has_value(), ErrorKind::InternalInvariantViolation, "basis expansion failed");
    std::vector<Elem> out(j);
    for (std::size_t b = 0; b < j; ++b) {
      std::vector<std::uint32_t> dig(m);
      for (std::size_t c = 0; c < m; ++c) dig[c] = (*u)[b * m + c];
      out[b] = small.from_digits(dig);
    }
    return out;
  };

  const auto& Ps = sf.pstar;
  Matrix out(P.field, Ps.rows() * j, Ps.cols());
  std::map<Elem, std::vector<Elem>> cache;
  for (std::size_t row = 0; row < Ps.rows(); ++row)
    for (std::size_t col = 0; col < Ps.cols(); ++col) {
      const Elem z = Ps(row, col);
      auto it = cache.find(z);
      if (it == cache.end()) it = cache.emplace(z, coords(z)).first;
      for (std::size_t b = 0; b < j; ++b) out(row * j + b, col) = it->second[b];
    }
  return out;
}

namespace {

// sum over distinct gammas of (sum of v_j at that gamma) * prod_{other gammas} (x - gamma').
Poly cleared_residue(const FiniteField& f, const std::vector<Elem>& gam, const std::vector<Elem>& v) {
  std::map<Elem, Elem> by;
  for (std::size_t i = 0; i < gam.size(); ++i) by[gam[i]] = f.add(by[gam[i]], v[i]);
  std::vector<Elem> pts;
  for (const auto& [g, _] : by) pts.push_back(g);
  Poly acc;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (by[pts[i]] == 0) continue;
    std::vector<Elem> others;
    for (std::size_t k = 0; k < pts.size(); ++k)
      if (k != i) others.push_back(pts[k]);
    acc = poly::add(f, acc, poly::scale(f, poly::from_roots(f, others), by[pts[i]]));
  }
  return acc;
}

}  // namespace

bool residue_check(const GoppaParams& P, const std::vector<Elem>& word) {
  const auto& f = *P.field;
  require(word.size() == P.n(), ErrorKind::InvalidParameter, "word has wrong length");
  std::size_t off = 0;
  for (const auto& s : P.sets) {
    const std::vector<Elem> v(word.begin() + static_cast<std::ptrdiff_t>(off),
                              word.begin() + static_cast<std::ptrdiff_t>(off + s.size()));
    if (!poly::mod(f, cleared_residue(f, s, v), P.G1).is_zero()) return false;
    off += s.size();
  }
  if (P.h() == 0) return true;
  return poly::mod(f, cleared_residue(f, P.gamma(), word), P.G2).is_zero();
}

GoppaDistanceReport goppa_distance_check(const GoppaParams& P, std::size_t t, unsigned workers) {
  P.validate();
  GoppaDistanceReport rep;
  rep.n = P.n();
  rep.r = P.r();
  rep.delta = P.delta();
  rep.h = P.h();
  rep.ell = P.ell();
  rep.t = t;
  const auto& f = *P.field;
  const Poly F = poly::mul(f, P.G1, P.G2);
  rep.separable = poly::monic_gcd(f, F, poly::derivative(f, F)).degree() == 0;
  require(t + 1 <= rep.ell, ErrorKind::InvalidParameter, "t+1 must not exceed ell");

  std::vector<std::set<Elem>> sets;
  for (const auto& s : P.sets) sets.emplace_back(s.begin(), s.end());
  rep.hypothesis = true;
  for_each_combination(rep.ell, t + 1, [&](std::span<const std::size_t> D) {
    for (auto i : D) {
      std::set<Elem> others;
      for (auto j : D)
        if (j != i) others.insert(sets[j].begin(), sets[j].end());
      std::size_t common = 0;
      for (auto x : sets[i]) common += others.count(x);
      if (common > rep.delta - 1) rep.hypothesis = false;
    }
    return rep.hypothesis;
  });
  rep.last_disjoint = true;
  for (auto x : P.last)
    for (const auto& s : sets)
      if (s.count(x)) rep.last_disjoint = false;

  rep.designed = std::min((t + 1) * rep.delta, rep.h + rep.delta);
  const Matrix Pm = goppa_pcheck(P);
  const std::size_t rk = rank(Pm);
  rep.k = rep.n - rk;
  rep.k_expected = rep.n - rep.ell * (rep.delta - 1) - rep.h;
  rep.k_equal = rep.k == rep.k_expected;
  DistanceOptions opts;
  opts.workers = workers;
  opts.d_max = rk + 1;
  rep.measured = min_distance(Pm, opts).d;
  rep.distance_ok = rep.measured >= rep.designed;
  rep.optimal_claim = rep.separable && rep.hypothesis && rep.last_disjoint && !P.last.empty() &&
                      rep.h + rep.delta <= (t + 1) * rep.delta;
  rep.optimal_ok = !rep.optimal_claim || (rep.measured == rep.h + rep.delta && rep.k_equal);
  if (rep.k >= 1) rep.singleton = singleton_bound(static_cast<std::int64_t>(rep.n), static_cast<std::int64_t>(rep.k),
                                                  static_cast<std::int64_t>(rep.r), static_cast<std::int64_t>(rep.delta));
  rep.ok = rep.separable && rep.hypothesis && rep.last_disjoint && rep.distance_ok && rep.optimal_ok;
  return rep;
}

}  // namespace lrcw
