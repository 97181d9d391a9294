#include "lrcw/bounds.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <limits>
#include <numeric>
#include <sstream>

#include "lrcw/error.hpp"

namespace lrcw {

namespace mp = boost::multiprecision;
using Int = mp::cpp_int;
using Rat = mp::cpp_rational;

std::int64_t singleton_bound(std::int64_t n, std::int64_t k, std::int64_t r, std::int64_t delta) {
  require(k >= 1 && r >= 1, ErrorKind::InvalidParameter, "singleton_bound needs k >= 1 and r >= 1");
  const std::int64_t blocks = (k + r - 1) / r;
  return n - k + 1 - (blocks - 1) * (delta - 1);
}

namespace {

constexpr unsigned kFracBits = 128;

// floor(x^(1/k)) for x >= 0.
Int iroot(const Int& x, unsigned k) {
  if (x < 2 || k == 1) return x;
  // Bit-length based starting bracket, then bisection.
  const auto bits = mp::msb(x) + 1;
  Int lo = 0, hi = Int(1) << (bits / k + 1);
  while (lo < hi) {
    Int mid = (lo + hi + 1) >> 1;
    if (mp::pow(mid, k) <= x)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

Int floor_rat(const Rat& x) {
  Int num = mp::numerator(x), den = mp::denominator(x);
  Int q = num / den;
  if (num < 0 && q * den != num) --q;
  return q;
}

std::string decimal(const Rat& x, int digits = 12) {
  std::ostringstream os;
  Rat y = x;
  if (y < 0) {
    os << '-';
    y = -y;
  }
  const Int ip = floor_rat(y);
  os << ip << '.';
  Rat frac = y - Rat(ip);
  for (int i = 0; i < digits; ++i) {
    frac *= 10;
    const Int dgt = floor_rat(frac);
    os << dgt;
    frac -= Rat(dgt);
  }
  return os.str();
}

}  // namespace

LengthBound length_bound(std::int64_t q, std::int64_t r, std::int64_t delta, std::int64_t h, std::int64_t a) {
  require(q >= 2 && r >= 1 && delta >= 2 && h >= 0, ErrorKind::InvalidParameter, "length_bound parameter out of range");
  require(a >= 0 && a <= h, ErrorKind::InvalidParameter, "length_bound needs 0 <= a <= h");
  LengthBound lb;
  lb.a = a;
  const std::int64_t d = h + delta;
  lb.T = (d - a - 1) / delta;
  if (lb.T < 2) return lb;
  lb.applicable = true;
  lb.even = lb.T % 2 == 0;

  // value = c1 * (coef * q^(num/den) + add) - c0
  std::int64_t num, den, add;
  Rat coef;
  if (lb.even) {
    num = 2 * (h - a);
    den = lb.T;
    coef = Rat(lb.T, 2 * (q - 1));
    add = a;
  } else {
    num = 2 * (h - a - 1);
    den = lb.T - 1;
    coef = Rat(lb.T - 1, 2 * (q - 1));
    add = a + 1;
  }
  const std::int64_t g = std::gcd(num, den);
  num /= g;
  den /= g;
  lb.exp_num = num;
  lb.exp_den = den;

  Rat pow_lo, pow_hi;
  const Int qn = mp::pow(Int(q), static_cast<unsigned>(num));
  if (den == 1) {
    pow_lo = pow_hi = Rat(qn);
    lb.exact = true;
  } else {
    const Int scaled = qn << (kFracBits * static_cast<unsigned>(den));
    const Int root = iroot(scaled, static_cast<unsigned>(den));
    const Int unit = Int(1) << kFracBits;
    pow_lo = Rat(root, unit);
    pow_hi = mp::pow(root, static_cast<unsigned>(den)) == scaled ? pow_lo : Rat(root + 1, unit);
    lb.exact = pow_lo == pow_hi;
  }
  const Rat c1(r + delta - 1, r);
  const Rat c0(h * (delta - 1), r);
  const Rat lo = c1 * (coef * pow_lo + add) - c0;
  const Rat hi = c1 * (coef * pow_hi + add) - c0;
  lb.lower = decimal(lo);
  lb.upper = decimal(hi);
  lb.width = static_cast<double>(hi - lo);
  lb.value = static_cast<double>((lo + hi) / 2);
  const Int f_lo = floor_rat(lo), f_hi = floor_rat(hi);
  lb.beyond_int64 = f_lo > Int(std::numeric_limits<std::int64_t>::max());
  if (f_lo == f_hi && !lb.beyond_int64) lb.floor = static_cast<std::int64_t>(f_lo);
  return lb;
}

BoundReport classify(std::int64_t n, std::int64_t k, std::int64_t r, std::int64_t delta, std::int64_t d,
                     std::int64_t q) {
  BoundReport rep;
  rep.n = n;
  rep.k = k;
  rep.r = r;
  rep.delta = delta;
  rep.d = d;
  rep.q = q;
  rep.d_singleton = singleton_bound(n, k, r, delta);
  rep.optimal = d == rep.d_singleton;
  rep.advisory = k % r != 0;
  if (rep.advisory) rep.notes.push_back("r does not divide k: the length bound is advisory");
  rep.in_hypothesis = d >= delta && q >= 2;
  if (!rep.in_hypothesis) {
    rep.notes.push_back("d < delta: length bound inapplicable");
    return rep;
  }
  const std::int64_t h = d - delta;
  long double best = 0;
  for (std::int64_t a = 0; a <= h; ++a) {
    auto lb = length_bound(q, r, delta, h, a);
    if (lb.applicable) {
      if (!rep.best_a || lb.value < best) {
        best = lb.value;
        rep.best_a = a;
        rep.best_n_max = lb.floor;
        rep.order_exp_num = 2 * (h - a) - lb.T;
        rep.order_exp_den = lb.T;
        const std::int64_t g = std::gcd(rep.order_exp_num, rep.order_exp_den);
        if (g > 1) {
          rep.order_exp_num /= g;
          rep.order_exp_den /= g;
        }
      }
      if (lb.floor && n > *lb.floor) rep.within_bound = false;
      if (!lb.floor && !lb.beyond_int64) rep.notes.push_back("bound at a=" + std::to_string(a) + " not certified to an integer floor");
    }
    rep.by_a.push_back(std::move(lb));
  }
  if (!rep.best_a) rep.notes.push_back("T(a) < 2 for every a: length bound inapplicable");
  if (!rep.within_bound) rep.notes.push_back("n exceeds the length bound");
  return rep;
}

}  // namespace lrcw
