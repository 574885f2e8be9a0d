#include "doctest.h"

#include "graphcodes/field.hpp"

using namespace graphcodes;

TEST_CASE("primality and prime-power recognition") {
  CHECK(is_prime(2));
  CHECK(is_prime(3));
  CHECK(is_prime(13));
  CHECK_FALSE(is_prime(0));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(9));
  CHECK_FALSE(is_prime(15));

  CHECK(is_prime_power(2));
  CHECK(is_prime_power(4));
  CHECK(is_prime_power(8));
  CHECK(is_prime_power(9));
  CHECK(is_prime_power(27));
  CHECK(is_prime_power(49));
  CHECK(is_prime_power(65536));
  CHECK_FALSE(is_prime_power(1));
  CHECK_FALSE(is_prime_power(6));
  CHECK_FALSE(is_prime_power(12));
  CHECK_FALSE(is_prime_power(100));
}

TEST_CASE("field construction rejects bad orders") {
  CHECK_THROWS_AS(Field(0), Error);
  CHECK_THROWS_AS(Field(1), Error);
  CHECK_THROWS_AS(Field(6), Error);
  CHECK_THROWS_AS(Field(1024), Error);  // extension fields cap at 512
  CHECK_NOTHROW(Field(512));
  CHECK_NOTHROW(Field(65521));  // large prime stays table-free
}

TEST_CASE("prime field arithmetic is modular") {
  const Field f(5);
  CHECK(f.characteristic() == 5);
  CHECK(f.extension_degree() == 1);
  CHECK(f.add(3, 4) == 2);
  CHECK(f.sub(1, 3) == 3);
  CHECK(f.neg(2) == 3);
  CHECK(f.mul(3, 4) == 2);
  CHECK(f.inv(2) == 3);
  CHECK(f.inv(4) == 4);
  CHECK_THROWS_AS(f.inv(0), Error);
  CHECK_THROWS_AS(f.add(5, 0), Error);
}

TEST_CASE("gf4 matches the x^2 + x + 1 tables") {
  const Field f(4);
  CHECK(f.characteristic() == 2);
  CHECK(f.extension_degree() == 2);
  // addition is xor of bit digits
  CHECK(f.add(1, 1) == 0);
  CHECK(f.add(2, 3) == 1);
  CHECK(f.add(1, 2) == 3);
  CHECK(f.neg(3) == 3);
  // multiplication modulo x^2 + x + 1
  CHECK(f.mul(2, 2) == 3);
  CHECK(f.mul(2, 3) == 1);
  CHECK(f.mul(3, 3) == 2);
  CHECK(f.inv(2) == 3);
  CHECK(f.inv(3) == 2);
}

TEST_CASE("gf8 matches the x^3 + x + 1 tables") {
  const Field f(8);
  CHECK(f.extension_degree() == 3);
  CHECK(f.mul(2, 2) == 4);
  CHECK(f.mul(2, 4) == 3);  // x^3 = x + 1
  CHECK(f.mul(4, 4) == 6);  // x^4 = x^2 + x
}

TEST_CASE("gf9 matches the x^2 + 1 tables") {
  const Field f(9);
  CHECK(f.characteristic() == 3);
  CHECK(f.extension_degree() == 2);
  // digitwise addition mod 3
  CHECK(f.add(1, 2) == 0);
  CHECK(f.add(3, 6) == 0);
  CHECK(f.add(4, 4) == 8);
  // x^2 = -1 = 2
  CHECK(f.mul(3, 3) == 2);
  CHECK(f.mul(4, 4) == 6);  // (1+x)^2 = 1 + 2x + x^2 = 2x
}

TEST_CASE("field axioms hold on every element of small fields") {
  for (const std::uint32_t q : {2u, 3u, 4u, 7u, 8u, 9u}) {
    const Field f(q);
    for (std::uint32_t a = 0; a < q; ++a) {
      const auto sa = static_cast<Symbol>(a);
      CHECK(f.add(sa, f.neg(sa)) == 0);
      if (a != 0) CHECK(f.mul(sa, f.inv(sa)) == 1);
      for (std::uint32_t b = 0; b < q; ++b) {
        const auto sb = static_cast<Symbol>(b);
        CHECK(f.add(sa, sb) == f.add(sb, sa));
        CHECK(f.mul(sa, sb) == f.mul(sb, sa));
        for (std::uint32_t c = 0; c < q; ++c) {
          const auto sc = static_cast<Symbol>(c);
          CHECK(f.mul(sa, f.add(sb, sc)) == f.add(f.mul(sa, sb), f.mul(sa, sc)));
        }
      }
    }
  }
}
