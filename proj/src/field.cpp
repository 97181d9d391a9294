#include "lrcw/field.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "lrcw/error.hpp"

namespace lrcw {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::DuplicateNode: return "DuplicateNode";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::FieldTooSmall: return "FieldTooSmall";
    case ErrorKind::NotRegular: return "NotRegular";
    case ErrorKind::NotAdmissible: return "NotAdmissible";
    case ErrorKind::Inconsistent: return "Inconsistent";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::NotSeparable: return "NotSeparable";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::InternalInvariantViolation: return "InternalInvariantViolation";
  }
  return "Unknown";
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint64_t q) {
  if (q < 2) return {0, 0};
  std::uint64_t p = 2;
  while (q % p != 0) ++p;
  std::uint32_t m = 0;
  while (q % p == 0) {
    q /= p;
    ++m;
  }
  if (q != 1) return {0, 0};
  return {static_cast<std::uint32_t>(p), m};
}

namespace {

// Dense polynomials over the prime field F_p, coefficients low to high.
using PrimePoly = std::vector<std::uint32_t>;

void trim(PrimePoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  // p is small and prime; Fermat.
  std::uint64_t r = 1, b = a % p;
  std::uint32_t e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

PrimePoly poly_mod(PrimePoly a, const PrimePoly& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  const std::uint32_t lead_inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    const std::uint64_t factor = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      const std::uint64_t sub = factor * b[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

PrimePoly poly_from_index(std::uint64_t index, std::uint32_t p, std::uint32_t degree) {
  // Monic polynomial of the given degree whose lower coefficients are the base-p digits.
  PrimePoly f(degree + 1, 0);
  for (std::uint32_t i = 0; i < degree; ++i) {
    f[i] = static_cast<std::uint32_t>(index % p);
    index /= p;
  }
  f[degree] = 1;
  return f;
}

bool irreducible(const PrimePoly& f, std::uint32_t p) {
  const auto m = static_cast<std::uint32_t>(f.size() - 1);
  for (std::uint32_t d = 1; d <= m / 2; ++d) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      if (poly_mod(f, poly_from_index(idx, p, d), p).empty()) return false;
    }
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

FiniteField::FiniteField(std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> modulus)
    : p_(p), m_(m), modulus_(std::move(modulus)) {
  require(lrcw::is_prime(p), ErrorKind::InvalidParameter, "characteristic " + std::to_string(p) + " is not prime");
  require(m >= 1, ErrorKind::InvalidParameter, "extension degree must be >= 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    q *= p;
    require(q <= kMaxOrder, ErrorKind::InvalidParameter, "field order exceeds 2^16");
  }
  q_ = static_cast<std::uint32_t>(q);
  require(modulus_.size() == m + 1 && modulus_.back() == 1, ErrorKind::InvalidParameter,
          "modulus must be monic of degree m");
  for (auto c : modulus_) require(c < p, ErrorKind::InvalidParameter, "modulus coefficient out of range");
  require(irreducible(modulus_, p), ErrorKind::InvalidParameter, "modulus is reducible over F_p");

  // Smallest primitive element in encoding order.
  const auto factors = prime_factors(q_ - 1);
  auto slow_pow = [&](Elem a, std::uint64_t e) {
    Elem r = 1;
    while (e) {
      if (e & 1) r = slow_mul(r, a);
      a = slow_mul(a, a);
      e >>= 1;
    }
    return r;
  };
  Elem gen = 0;
  if (q_ == 2) {
    gen = 1;
  } else {
    for (Elem g = 2; g < q_; ++g) {
      bool ok = true;
      for (auto f : factors) {
        if (slow_pow(g, (q_ - 1) / f) == 1) {
          ok = false;
          break;
        }
      }
      if (ok) {
        gen = g;
        break;
      }
    }
  }
  require(gen != 0, ErrorKind::InternalInvariantViolation, "no primitive element found");

  exp_.assign(2 * (q_ - 1), 0);
  log_.assign(q_, 0);
  Elem x = 1;
  for (std::uint32_t i = 0; i < q_ - 1; ++i) {
    exp_[i] = x;
    exp_[i + q_ - 1] = x;
    log_[x] = i;
    x = slow_mul(x, gen);
  }
}

Field FiniteField::make(std::uint32_t p, std::uint32_t m) {
  require(lrcw::is_prime(p), ErrorKind::InvalidParameter, "characteristic " + std::to_string(p) + " is not prime");
  require(m >= 1, ErrorKind::InvalidParameter, "extension degree must be >= 1");
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    count *= p;
    require(count <= kMaxOrder, ErrorKind::InvalidParameter, "field order exceeds 2^16");
  }
  if (m == 1) return Field(new FiniteField(p, 1, {0, 1}));
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    auto f = poly_from_index(idx, p, m);
    if (irreducible(f, p)) return Field(new FiniteField(p, m, std::move(f)));
  }
  fail(ErrorKind::InternalInvariantViolation, "no irreducible polynomial found");
}

Field FiniteField::make(std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> modulus) {
  return Field(new FiniteField(p, m, std::move(modulus)));
}

Field FiniteField::of_order(std::uint32_t q) {
  auto [p, m] = prime_power(q);
  require(p != 0, ErrorKind::InvalidParameter, std::to_string(q) + " is not a prime power");
  return make(p, m);
}

Elem FiniteField::inv(Elem a) const {
  require(a != 0 && a < q_, ErrorKind::DivisionByZero, "inverse of zero");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

Elem FiniteField::pow(Elem a, std::uint64_t e) const noexcept {
  if (e == 0) return 1;
  if (a == 0) return 0;
  return exp_[(static_cast<std::uint64_t>(log_[a]) * (e % (q_ - 1))) % (q_ - 1)];
}

std::uint32_t FiniteField::log(Elem a) const {
  require(a != 0 && a < q_, ErrorKind::DivisionByZero, "log of zero");
  return log_[a];
}

Elem FiniteField::from_int(std::int64_t v) const noexcept {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

std::vector<std::uint32_t> FiniteField::digits(Elem a) const {
  std::vector<std::uint32_t> d(m_);
  for (std::uint32_t i = 0; i < m_; ++i) {
    d[i] = a % p_;
    a /= p_;
  }
  return d;
}

Elem FiniteField::from_digits(const std::vector<std::uint32_t>& d) const {
  Elem a = 0;
  for (std::size_t i = d.size(); i-- > 0;) a = a * p_ + d[i] % p_;
  return a;
}

Elem FiniteField::add_digits(Elem a, Elem b) const noexcept {
  Elem r = 0, scale = 1;
  for (std::uint32_t i = 0; i < m_; ++i) {
    const Elem da = a % p_, db = b % p_;
    Elem s = da + db;
    if (s >= p_) s -= p_;
    r += s * scale;
    scale *= p_;
    a /= p_;
    b /= p_;
  }
  return r;
}

Elem FiniteField::neg_digits(Elem a) const noexcept {
  Elem r = 0, scale = 1;
  for (std::uint32_t i = 0; i < m_; ++i) {
    const Elem d = a % p_;
    r += (d == 0 ? 0 : p_ - d) * scale;
    scale *= p_;
    a /= p_;
  }
  return r;
}

Elem FiniteField::slow_mul(Elem a, Elem b) const {
  if (m_ == 1) return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p_);
  const auto da = digits(a), db = digits(b);
  std::vector<std::uint64_t> prod(2 * m_ - 1, 0);
  for (std::uint32_t i = 0; i < m_; ++i)
    for (std::uint32_t j = 0; j < m_; ++j) prod[i + j] = (prod[i + j] + static_cast<std::uint64_t>(da[i]) * db[j]) % p_;
  // Reduce by the monic modulus.
  for (std::size_t k = prod.size(); k-- > m_;) {
    const std::uint64_t c = prod[k];
    if (c == 0) continue;
    prod[k] = 0;
    for (std::uint32_t i = 0; i < m_; ++i) {
      prod[k - m_ + i] = (prod[k - m_ + i] + (p_ - modulus_[i]) % p_ * c) % p_;
    }
  }
  std::vector<std::uint32_t> out(m_);
  for (std::uint32_t i = 0; i < m_; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
  return from_digits(out);
}

std::string FiniteField::header() const {
  std::ostringstream os;
  os << p_ << ' ' << m_;
  for (auto c : modulus_) os << ' ' << c;
  return os.str();
}

FieldEmbedding::FieldEmbedding(Field small, Field big) : small_(std::move(small)), big_(std::move(big)) {
  require(small_->p() == big_->p() && big_->m() % small_->m() == 0, ErrorKind::InvalidParameter,
          "field is not a subfield");
  table_.assign(small_->q(), 0);
  if (small_->m() == 1) {
    for (Elem a = 0; a < small_->q(); ++a) table_[a] = big_->from_int(a);
    return;
  }
  const auto& mod = small_->modulus();
  Elem root = 0;
  bool found = false;
  for (Elem z = 0; z < big_->q() && !found; ++z) {
    Elem acc = 0;
    for (std::size_t i = mod.size(); i-- > 0;) acc = big_->add(big_->mul(acc, z), big_->from_int(mod[i]));
    if (acc == 0) {
      root = z;
      found = true;
    }
  }
  require(found, ErrorKind::InternalInvariantViolation, "no root of the subfield modulus");
  for (Elem a = 0; a < small_->q(); ++a) {
    const auto d = small_->digits(a);
    Elem img = 0, power = 1;
    for (auto c : d) {
      img = big_->add(img, big_->mul(big_->from_int(c), power));
      power = big_->mul(power, root);
    }
    table_[a] = img;
  }
}

}  // namespace lrcw
