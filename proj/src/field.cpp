#include "graphcodes/field.hpp"

namespace graphcodes {

namespace {

// Dense polynomials over F_p, lowest degree first, trailing zeros trimmed.
using Poly = std::vector<std::uint32_t>;

Poly trim(Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
  return trim(out);
}

Poly poly_mod(Poly a, const Poly& mod, std::uint32_t p) {
  a = trim(std::move(a));
  const std::size_t md = mod.size() - 1;
  const std::uint32_t lead = mod.back();
  // p is prime, so the leading coefficient inverts via Fermat
  std::uint32_t lead_inv = 1;
  for (std::uint32_t e = p - 2, b = lead; e; e >>= 1, b = b * b % p)
    if (e & 1) lead_inv = lead_inv * b % p;
  while (a.size() > md) {
    const std::uint32_t factor = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - mod.size();
    for (std::size_t i = 0; i < mod.size(); ++i) {
      a[shift + i] = (a[shift + i] + p - factor * mod[i] % p) % p;
    }
    a = trim(std::move(a));
    if (a.empty()) break;
  }
  return a;
}

std::uint32_t encode_poly(const Poly& a, std::uint32_t p) {
  std::uint32_t v = 0;
  for (std::size_t i = a.size(); i-- > 0;) v = v * p + a[i];
  return v;
}

Poly decode_poly(std::uint32_t v, std::uint32_t p) {
  Poly a;
  while (v) {
    a.push_back(v % p);
    v /= p;
  }
  return a;
}

// Trial division by every monic polynomial of degree 1..m/2 suffices at this scale.
bool poly_irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t m = f.size() - 1;
  for (std::size_t d = 1; 2 * d <= m; ++d) {
    std::uint32_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint32_t low = 0; low < count; ++low) {
      Poly g = decode_poly(low, p);
      g.resize(d + 1, 0);
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_prime_power(std::uint32_t q) {
  if (q < 2) return false;
  std::uint32_t p = 2;
  while (q % p != 0) ++p;
  while (q % p == 0) q /= p;
  return q == 1;
}

Field::Field(std::uint32_t q) : q_(q) {
  if (!is_prime_power(q)) throw Error("Field: q must be a prime power >= 2");
  if (q > 65535) throw Error("Field: q too large for Symbol");
  p_ = 2;
  while (q % p_ != 0) ++p_;
  m_ = 0;
  for (std::uint32_t v = q; v > 1; v /= p_) ++m_;
  if (m_ == 1) return;  // plain prime: modular arithmetic, no tables

  if (q > 512) throw Error("Field: extension fields are table-backed and capped at q <= 512");
  // find a monic irreducible of degree m
  Poly irr;
  std::uint32_t low_count = 1;
  for (std::uint32_t i = 0; i < m_; ++i) low_count *= p_;
  for (std::uint32_t low = 0; low < low_count; ++low) {
    Poly f = decode_poly(low, p_);
    f.resize(m_ + 1, 0);
    f[m_] = 1;
    if (poly_irreducible(f, p_)) {
      irr = f;
      break;
    }
  }
  if (irr.empty()) throw Error("Field: no irreducible polynomial found");

  mul_table_.assign(static_cast<std::size_t>(q_) * q_, 0);
  inv_table_.assign(q_, 0);
  for (std::uint32_t a = 0; a < q_; ++a) {
    const Poly pa = decode_poly(a, p_);
    for (std::uint32_t b = 0; b < q_; ++b) {
      const Poly pb = decode_poly(b, p_);
      const auto prod = encode_poly(poly_mod(poly_mul(pa, pb, p_), irr, p_), p_);
      mul_table_[static_cast<std::size_t>(a) * q_ + b] = static_cast<Symbol>(prod);
      if (prod == 1) inv_table_[a] = static_cast<Symbol>(b);
    }
  }
}

void Field::check(Symbol a) const {
  if (a >= q_) throw Error("Field: symbol out of range");
}

Symbol Field::add(Symbol a, Symbol b) const {
  check(a);
  check(b);
  if (m_ == 1) return static_cast<Symbol>((a + b) % p_);
  std::uint32_t out = 0, mult = 1;
  std::uint32_t x = a, y = b;
  for (std::uint32_t i = 0; i < m_; ++i) {
    out += (x % p_ + y % p_) % p_ * mult;
    x /= p_;
    y /= p_;
    mult *= p_;
  }
  return static_cast<Symbol>(out);
}

Symbol Field::neg(Symbol a) const {
  check(a);
  if (m_ == 1) return static_cast<Symbol>((p_ - a) % p_);
  std::uint32_t out = 0, mult = 1;
  std::uint32_t x = a;
  for (std::uint32_t i = 0; i < m_; ++i) {
    out += (p_ - x % p_) % p_ * mult;
    x /= p_;
    mult *= p_;
  }
  return static_cast<Symbol>(out);
}

Symbol Field::sub(Symbol a, Symbol b) const { return add(a, neg(b)); }

Symbol Field::mul(Symbol a, Symbol b) const {
  check(a);
  check(b);
  if (m_ == 1) return static_cast<Symbol>(static_cast<std::uint32_t>(a) * b % p_);
  return mul_table_[static_cast<std::size_t>(a) * q_ + b];
}

Symbol Field::inv(Symbol a) const {
  check(a);
  if (a == 0) throw Error("Field: zero has no inverse");
  if (m_ == 1) {
    std::uint32_t result = 1;
    for (std::uint32_t e = p_ - 2, b = a; e; e >>= 1, b = static_cast<Symbol>(1ULL * b * b % p_))
      if (e & 1) result = static_cast<std::uint32_t>(1ULL * result * b % p_);
    return static_cast<Symbol>(result);
  }
  return inv_table_[a];
}

}  // namespace graphcodes
