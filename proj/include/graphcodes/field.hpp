#ifndef GRAPHCODES_FIELD_HPP
#define GRAPHCODES_FIELD_HPP

#include <cstdint>
#include <vector>

#include "graphcodes/common.hpp"

namespace graphcodes {

using Symbol = std::uint16_t;

bool is_prime(std::uint32_t n);
/// True iff q = p^m for a prime p and m >= 1.
bool is_prime_power(std::uint32_t q);

/// Arithmetic for GF(q), q a prime power. Elements are integers in [0, q)
/// read as base-p digit vectors (digit i = coefficient of x^i); addition is
/// digitwise mod p, multiplication is polynomial mod a fixed irreducible.
/// Extension fields are table-backed and capped at q <= 512; plain primes go
/// through modular arithmetic and allow q up to 2^16 - 1.
class Field {
 public:
  explicit Field(std::uint32_t q);

  std::uint32_t q() const { return q_; }
  std::uint32_t characteristic() const { return p_; }
  std::uint32_t extension_degree() const { return m_; }

  Symbol add(Symbol a, Symbol b) const;
  Symbol sub(Symbol a, Symbol b) const;
  Symbol neg(Symbol a) const;
  Symbol mul(Symbol a, Symbol b) const;
  Symbol inv(Symbol a) const;  // errors on 0

 private:
  void check(Symbol a) const;

  std::uint32_t q_ = 0;
  std::uint32_t p_ = 0;
  std::uint32_t m_ = 1;
  std::vector<Symbol> mul_table_;  // extension fields only, q*q entries
  std::vector<Symbol> inv_table_;
};

}  // namespace graphcodes

#endif
