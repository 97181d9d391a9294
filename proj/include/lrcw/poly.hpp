#pragma once

#include <span>
#include <utility>
#include <vector>

#include "lrcw/field.hpp"

namespace lrcw {

/// Dense univariate polynomial, coefficients low to high. The zero polynomial
/// is the empty vector; otherwise the leading coefficient is nonzero.
struct Poly {
  std::vector<Elem> coeffs;

  Poly() = default;
  explicit Poly(std::vector<Elem> c) : coeffs(std::move(c)) { normalize(); }

  static Poly constant(Elem c) { return c == 0 ? Poly{} : Poly(std::vector<Elem>{c}); }
  static Poly monomial(Elem c, std::size_t degree);

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero() const noexcept { return coeffs.empty(); }
  Elem lead() const noexcept { return coeffs.empty() ? 0 : coeffs.back(); }
  Elem coeff(std::size_t i) const noexcept { return i < coeffs.size() ? coeffs[i] : 0; }

  void normalize() {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  }

  friend bool operator==(const Poly&, const Poly&) = default;
};

struct InterpolationPoint {
  Elem x;
  Elem y;
};

namespace poly {

Poly add(const FiniteField& f, const Poly& a, const Poly& b);
Poly sub(const FiniteField& f, const Poly& a, const Poly& b);
Poly scale(const FiniteField& f, const Poly& a, Elem c);
Poly mul(const FiniteField& f, const Poly& a, const Poly& b);
/// Quotient and remainder; throws DivisionByZero for b = 0.
std::pair<Poly, Poly> divmod(const FiniteField& f, const Poly& a, const Poly& b);
Poly mod(const FiniteField& f, const Poly& a, const Poly& b);
/// Exact division; throws Inconsistent if b does not divide a.
Poly exact_div(const FiniteField& f, const Poly& a, const Poly& b);
Poly monic_gcd(const FiniteField& f, Poly a, Poly b);
Poly derivative(const FiniteField& f, const Poly& a);
Elem eval(const FiniteField& f, const Poly& a, Elem x);

/// prod_{r in roots} (x - r). Monic, degree |roots|.
Poly from_roots(const FiniteField& f, std::span<const Elem> roots);

/// The unique polynomial of degree < points.size() through all points.
/// Newton divided differences; throws DuplicateNode on repeated x.
Poly interpolate(const FiniteField& f, std::span<const InterpolationPoint> points);

/// All roots in F (exhaustive evaluation, ascending encoding order).
std::vector<Elem> roots(const FiniteField& f, const Poly& a);

}  // namespace poly
}  // namespace lrcw
