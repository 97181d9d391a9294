#include "lrcw/poly.hpp"

#include <algorithm>

#include "lrcw/error.hpp"

namespace lrcw {

Poly Poly::monomial(Elem c, std::size_t degree) {
  if (c == 0) return {};
  std::vector<Elem> v(degree + 1, 0);
  v[degree] = c;
  return Poly(std::move(v));
}

namespace poly {

Poly add(const FiniteField& f, const Poly& a, const Poly& b) {
  std::vector<Elem> c(std::max(a.coeffs.size(), b.coeffs.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = f.add(a.coeff(i), b.coeff(i));
  return Poly(std::move(c));
}

Poly sub(const FiniteField& f, const Poly& a, const Poly& b) {
  std::vector<Elem> c(std::max(a.coeffs.size(), b.coeffs.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = f.sub(a.coeff(i), b.coeff(i));
  return Poly(std::move(c));
}

Poly scale(const FiniteField& f, const Poly& a, Elem c) {
  if (c == 0) return {};
  std::vector<Elem> v(a.coeffs.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.mul(a.coeffs[i], c);
  return Poly(std::move(v));
}

Poly mul(const FiniteField& f, const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Elem> c(a.coeffs.size() + b.coeffs.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    const Elem ai = a.coeffs[i];
    if (ai == 0) continue;
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) c[i + j] = f.add(c[i + j], f.mul(ai, b.coeffs[j]));
  }
  return Poly(std::move(c));
}

std::pair<Poly, Poly> divmod(const FiniteField& f, const Poly& a, const Poly& b) {
  require(!b.is_zero(), ErrorKind::DivisionByZero, "polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly{}, a};
  std::vector<Elem> rem = a.coeffs;
  std::vector<Elem> quo(a.coeffs.size() - b.coeffs.size() + 1, 0);
  const Elem lead_inv = f.inv(b.lead());
  const std::size_t db = b.coeffs.size() - 1;
  for (std::size_t k = quo.size(); k-- > 0;) {
    const Elem c = f.mul(rem[k + db], lead_inv);
    quo[k] = c;
    if (c == 0) continue;
    for (std::size_t i = 0; i <= db; ++i) rem[k + i] = f.sub(rem[k + i], f.mul(c, b.coeffs[i]));
  }
  rem.resize(db);
  return {Poly(std::move(quo)), Poly(std::move(rem))};
}

Poly mod(const FiniteField& f, const Poly& a, const Poly& b) { return divmod(f, a, b).second; }

Poly exact_div(const FiniteField& f, const Poly& a, const Poly& b) {
  auto [q, r] = divmod(f, a, b);
  require(r.is_zero(), ErrorKind::Inconsistent, "polynomial division is not exact");
  return q;
}

Poly monic_gcd(const FiniteField& f, Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = mod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return scale(f, a, f.inv(a.lead()));
}

Poly derivative(const FiniteField& f, const Poly& a) {
  if (a.coeffs.size() <= 1) return {};
  std::vector<Elem> d(a.coeffs.size() - 1);
  for (std::size_t i = 1; i < a.coeffs.size(); ++i) {
    // i * a_i, with i reduced into the prime subfield.
    d[i - 1] = f.mul(f.from_int(static_cast<std::int64_t>(i)), a.coeffs[i]);
  }
  return Poly(std::move(d));
}

Elem eval(const FiniteField& f, const Poly& a, Elem x) {
  Elem acc = 0;
  for (std::size_t i = a.coeffs.size(); i-- > 0;) acc = f.add(f.mul(acc, x), a.coeffs[i]);
  return acc;
}

Poly from_roots(const FiniteField& f, std::span<const Elem> roots) {
  std::vector<Elem> c{1};
  c.reserve(roots.size() + 1);
  for (Elem r : roots) {
    const Elem nr = f.neg(r);
    c.push_back(0);
    for (std::size_t i = c.size() - 1; i > 0; --i) c[i] = f.add(c[i - 1], f.mul(c[i], nr));
    c[0] = f.mul(c[0], nr);
  }
  return Poly(std::move(c));
}

Poly interpolate(const FiniteField& f, std::span<const InterpolationPoint> points) {
  require(!points.empty(), ErrorKind::InvalidParameter, "interpolation needs at least one point");
  const std::size_t n = points.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      require(points[i].x != points[j].x, ErrorKind::DuplicateNode,
              "duplicate interpolation node " + std::to_string(points[i].x));

  // Divided differences in place.
  std::vector<Elem> dd(n);
  for (std::size_t i = 0; i < n; ++i) dd[i] = points[i].y;
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = n - 1; i >= level; --i) {
      const Elem num = f.sub(dd[i], dd[i - 1]);
      const Elem den = f.sub(points[i].x, points[i - level].x);
      dd[i] = f.div(num, den);
    }
  }
  // Horner on the Newton form: p = dd[n-1]; p = p*(x - x_i) + dd[i].
  std::vector<Elem> c{dd[n - 1]};
  for (std::size_t i = n - 1; i-- > 0;) {
    const Elem nx = f.neg(points[i].x);
    c.push_back(0);
    for (std::size_t k = c.size() - 1; k > 0; --k) c[k] = f.add(c[k - 1], f.mul(c[k], nx));
    c[0] = f.add(f.mul(c[0], nx), dd[i]);
  }
  return Poly(std::move(c));
}

std::vector<Elem> roots(const FiniteField& f, const Poly& a) {
  std::vector<Elem> out;
  if (a.is_zero()) return out;
  for (Elem x = 0; x < f.q(); ++x)
    if (eval(f, a, x) == 0) out.push_back(x);
  return out;
}

}  // namespace poly
}  // namespace lrcw
