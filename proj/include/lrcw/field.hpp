#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace lrcw {

/// Field element in the base-p packing: sum of c_i * p^i over the monomial
/// basis coordinates (c_0 .. c_{m-1}).
using Elem = std::uint32_t;

class FiniteField;
using Field = std::shared_ptr<const FiniteField>;

/// Exact arithmetic in F_{p^m}, q = p^m <= 2^16.
///
/// Multiplication goes through log/antilog tables built from the smallest
/// primitive element; addition is digit-wise mod p. Instances are immutable
/// and shared through `Field`.
class FiniteField {
public:
  static constexpr std::uint32_t kMaxOrder = 1u << 16;

  /// F_{p^m} with the lexicographically smallest monic irreducible modulus.
  static Field make(std::uint32_t p, std::uint32_t m = 1);
  /// F_{p^m} with an explicit modulus (coefficients low to high, monic, length m+1).
  static Field make(std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> modulus);
  /// The field of order q, q a prime power.
  static Field of_order(std::uint32_t q);

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t m() const noexcept { return m_; }
  std::uint32_t q() const noexcept { return q_; }
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
  bool is_prime() const noexcept { return m_ == 1; }

  bool contains(Elem a) const noexcept { return a < q_; }

  Elem add(Elem a, Elem b) const noexcept {
    if (m_ == 1) {
      Elem s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    if (p_ == 2) return a ^ b;
    return add_digits(a, b);
  }
  Elem neg(Elem a) const noexcept {
    if (m_ == 1) return a == 0 ? 0 : p_ - a;
    if (p_ == 2) return a;
    return neg_digits(a);
  }
  Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const noexcept {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const noexcept;

  /// The primitive element the tables are built from (smallest in encoding order).
  Elem primitive() const noexcept { return exp_[1]; }
  /// Discrete log base primitive(); a must be nonzero.
  std::uint32_t log(Elem a) const;
  Elem exp(std::uint64_t e) const noexcept { return exp_[e % (q_ - 1)]; }

  /// Integer 0,1,..,p-1 embedded as an element of the prime subfield.
  Elem from_int(std::int64_t v) const noexcept;
  std::vector<std::uint32_t> digits(Elem a) const;
  Elem from_digits(const std::vector<std::uint32_t>& d) const;

  /// Header line used by the matrix text format for extension fields.
  std::string header() const;
  bool same_as(const FiniteField& other) const noexcept {
    return p_ == other.p_ && m_ == other.m_ && modulus_ == other.modulus_;
  }

private:
  FiniteField(std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> modulus);

  Elem add_digits(Elem a, Elem b) const noexcept;
  Elem neg_digits(Elem a) const noexcept;
  Elem slow_mul(Elem a, Elem b) const;

  std::uint32_t p_;
  std::uint32_t m_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<Elem> exp_;           // length 2(q-1), doubled to skip a reduction
  std::vector<std::uint32_t> log_;  // log_[0] unused
};

bool is_prime(std::uint64_t n);
/// Returns (p, m) if q = p^m with p prime, m >= 1; (0, 0) otherwise.
std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint64_t q);

/// Injective field homomorphism small -> big, small = F_{p^a}, big = F_{p^b}, a | b.
/// The image of the small field's generator x is the smallest root (in encoding
/// order) of the small modulus inside big.
class FieldEmbedding {
public:
  FieldEmbedding(Field small, Field big);
  Elem operator()(Elem a) const { return table_.at(a); }
  const Field& small() const noexcept { return small_; }
  const Field& big() const noexcept { return big_; }

private:
  Field small_;
  Field big_;
  std::vector<Elem> table_;
};

}  // namespace lrcw
