#include "ffpos/gf.hpp"

#include <algorithm>
#include <set>

#include "doctest.h"

using namespace ffpos;

TEST_CASE("field construction is deterministic") {
  auto f7 = field_new(7, 1);
  CHECK(f7.q() == 7);
  CHECK(f7.generator() == 3);  // smallest primitive root mod 7
  CHECK(f7.modulus() == std::vector<std::uint32_t>{0, 1});

  auto f4 = field_new(2, 2);
  CHECK(f4.q() == 4);
  CHECK(f4.modulus() == std::vector<std::uint32_t>{1, 1, 1});  // x^2+x+1

  // Monic quadratics over F_3 in code order: x^2 has root 0, x^2+1 has no
  // root, so the lex-smallest irreducible modulus is x^2+1.
  auto f9 = field_new(3, 2);
  CHECK(f9.modulus() == std::vector<std::uint32_t>{1, 0, 1});
  CHECK(f9.generator() == 4);  // 1+x is the smallest code of order 8
}

TEST_CASE("field construction rejects bad input") {
  CHECK_THROWS_WITH_AS(field_new(4, 1), doctest::Contains("not prime"), Error);
  CHECK_THROWS_AS(field_new(2, 21), Error);  // 2^21 over the default bound
  try {
    field_new(2, 21);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::SizeExceeded);
  }
}

TEST_CASE("element arithmetic") {
  auto f7 = field_new(7, 1);
  CHECK(f7.mul(3, 5) == 1);
  CHECK(f7.pow(3, 6) == 1);
  CHECK(f7.add(5, 4) == 2);
  CHECK(f7.sub(2, 5) == 4);
  CHECK(f7.neg(3) == 4);
  CHECK(f7.inv(3) == 5);
  CHECK(f7.div(1, 3) == 5);
  CHECK(f7.pow(3, -1) == 5);
  CHECK(f7.pow(0, 0) == 1);
  CHECK(f7.pow(0, 5) == 0);
  CHECK_THROWS_AS(f7.inv(0), Error);
  CHECK_THROWS_AS(f7.div(1, 0), Error);
  CHECK_THROWS_AS(f7.pow(0, -2), Error);

  auto f4 = field_new(2, 2);
  CHECK(f4.mul(2, 2) == 3);  // w^2 = w+1 under x^2+x+1
  CHECK(f4.add(2, 3) == 1);
}

TEST_CASE("quadratic character and positives") {
  auto f7 = field_new(7, 1);
  CHECK(f7.eta(2) == Sign::Positive);
  CHECK(f7.eta(3) == Sign::Negative);
  CHECK(f7.eta(0) == Sign::Zero);
  CHECK(f7.positives() == std::vector<Elem>{1, 2, 4});

  CHECK(field_new(5, 1).positives() == std::vector<Elem>{1, 4});
  CHECK(field_new(2, 2).positives() == std::vector<Elem>{1, 2, 3});

  // F_9 = F_3[x]/(x^2+1), so code 3 plays the role of i and the squares are
  // {1, -1, i, -i}.
  CHECK(field_new(3, 2).positives() == std::vector<Elem>{1, 2, 3, 6});
}

TEST_CASE("eta agrees with x^((q-1)/2) read as a sign") {
  for (std::uint32_t q : prime_powers_upto(121)) {
    if (q % 2 == 0) continue;
    auto [p, k] = factor_prime_power(q);
    auto f = field_new(p, k);
    for (Elem x = 0; x < q; ++x) {
      Elem s = f.pow(x, (q - 1) / 2);
      Sign expect = x == 0 ? Sign::Zero : (s == 1 ? Sign::Positive : Sign::Negative);
      if (s != 0 && s != 1) CHECK(s == f.neg(1));
      CHECK(f.eta(x) == expect);
    }
  }
}

TEST_CASE("positive square roots") {
  auto f7 = field_new(7, 1);
  CHECK(f7.sqrt_positive(2) == 4);
  CHECK(f7.sqrt_positive(1) == 1);
  CHECK(f7.sqrt_positive(0) == 0);
  CHECK_THROWS_AS(f7.sqrt_positive(3), Error);  // NotASquare

  auto f4 = field_new(2, 2);
  CHECK(f4.sqrt_positive(2) == 3);  // (w+1)^2 = w

  auto f5 = field_new(5, 1);
  CHECK_THROWS_AS(f5.sqrt_positive(4), Error);  // NotApplicable for q = 1 (mod 4)
  CHECK_THROWS_AS(f5.sqrt_positive(0), Error);  // the operation refuses the whole class
  CHECK(f5.sqrt_any(4).has_value());
  CHECK(f5.mul(*f5.sqrt_any(4), *f5.sqrt_any(4)) == 4);
  CHECK_FALSE(f5.sqrt_any(2).has_value());
}

TEST_CASE("sqrt_positive roundtrip over applicable fields") {
  for (std::uint32_t q : prime_powers_upto(121)) {
    if (!(q % 2 == 0 || q % 4 == 3)) continue;
    auto [p, k] = factor_prime_power(q);
    auto f = field_new(p, k);
    for (Elem x : f.positives()) {
      Elem y = f.sqrt_positive(x);
      CHECK(f.mul(y, y) == x);
      CHECK(f.eta(y) == Sign::Positive);
      // uniqueness: the other root -y is not positive (odd q)
      if (q % 2 == 1) CHECK(f.eta(f.neg(y)) == Sign::Negative);
    }
  }
}

TEST_CASE("frobenius automorphisms") {
  auto f9 = field_new(3, 2);
  for (Elem x = 0; x < 9; ++x) {
    CHECK(f9.frobenius(0, x) == x);
    CHECK(f9.frobenius(1, f9.frobenius(1, x)) == x);  // sigma_1^2 = id when k = 2
  }
  auto f4 = field_new(2, 2);
  CHECK(f4.frobenius(1, 2) == 3);
  CHECK_THROWS_AS(f4.frobenius(2, 1), Error);
}

TEST_CASE("frobenius is a ring homomorphism") {
  for (std::uint32_t q : prime_powers_upto(121)) {
    auto [p, k] = factor_prime_power(q);
    if (k == 1) continue;
    auto f = field_new(p, k);
    for (std::uint32_t ell = 0; ell < k; ++ell)
      for (Elem x = 0; x < q; ++x)
        for (Elem y = 0; y < q; ++y) {
          CHECK(f.frobenius(ell, f.add(x, y)) == f.add(f.frobenius(ell, x), f.frobenius(ell, y)));
          CHECK(f.frobenius(ell, f.mul(x, y)) == f.mul(f.frobenius(ell, x), f.frobenius(ell, y)));
        }
  }
}

TEST_CASE("eta is multiplicative and halves the field") {
  for (std::uint32_t q : prime_powers_upto(121)) {
    auto [p, k] = factor_prime_power(q);
    auto f = field_new(p, k);
    for (Elem x = 0; x < q; ++x)
      for (Elem y = 0; y < q; ++y)
        CHECK(f.eta(f.mul(x, y)) == sign_mul(f.eta(x), f.eta(y)));
    if (q % 2 == 1) {
      CHECK(f.positives().size() == (q - 1) / 2);
    } else {
      CHECK(f.positives().size() == q - 1);
    }
  }
}

TEST_CASE("sign trichotomy of -1 for odd q") {
  for (std::uint32_t q : prime_powers_upto(121)) {
    if (q % 2 == 0) continue;
    auto [p, k] = factor_prime_power(q);
    auto f = field_new(p, k);
    bool three_mod_4 = q % 4 == 3;
    CHECK((f.eta(f.neg(1)) == Sign::Negative) == three_mod_4);
    // F_q^- = -F_q^+ exactly when q = 3 (mod 4)
    std::set<Elem> negated;
    for (Elem x : f.positives()) negated.insert(f.neg(x));
    std::set<Elem> negatives;
    for (Elem x = 1; x < q; ++x)
      if (f.eta(x) == Sign::Negative) negatives.insert(x);
    CHECK((negated == negatives) == three_mod_4);
  }
}

TEST_CASE("generator order and x^q = x") {
  for (std::uint32_t q : prime_powers_upto(121)) {
    auto [p, k] = factor_prime_power(q);
    auto f = field_new(p, k);
    CHECK(f.elem_order(f.generator()) == q - 1);
    for (Elem x = 0; x < q; ++x) CHECK(f.pow(x, q) == x);
  }
}

TEST_CASE("prime power helpers") {
  CHECK(prime_powers_upto(10) == std::vector<std::uint32_t>{2, 3, 4, 5, 7, 8, 9});
  CHECK(factor_prime_power(27) == std::pair<std::uint32_t, std::uint32_t>{3, 3});
  CHECK_THROWS_AS(factor_prime_power(12), Error);
  CHECK_THROWS_AS(factor_prime_power(1), Error);
  CHECK_THROWS_AS(field_new(7, 1).elem_order(0), Error);
}

TEST_CASE("subfield extraction") {
  auto f9 = field_new(3, 2);
  CHECK(f9.subfield_elements(3) == std::vector<Elem>{0, 1, 2});
  CHECK_THROWS_AS(f9.subfield_elements(4), Error);

  auto f25 = field_new(5, 2);
  auto sub = f25.subfield_elements(5);
  CHECK(sub.size() == 5);
  for (Elem x : sub)
    if (x != 0) CHECK(f25.eta(x) == Sign::Positive);
}
