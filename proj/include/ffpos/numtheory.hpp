#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ffpos/gf.hpp"

namespace ffpos {

/// Base-p digit expansion, little-endian. Width can be forced so positional
/// index arithmetic (j, k-1-j) reads directly off the array.
struct DigitVector {
  std::uint32_t base = 0;
  std::vector<std::uint32_t> digits;

  static DigitVector of(std::uint64_t value, std::uint32_t base, std::uint32_t width = 0);
  std::uint64_t value() const;
};

/// C(a, b) mod p via the product of digit binomials. 0 <= b <= a.
std::uint32_t lucas_binom(std::uint64_t a, std::uint64_t b, std::uint32_t p);

/// C(a, b) mod p by exact big-integer arithmetic (multiplicative formula).
/// Independent of the digit route; kept as its oracle.
std::uint32_t binom_mod_direct(std::uint32_t a, std::uint32_t b, std::uint32_t p);

/// An exponent r with base-p digits <= (p-1)/2 such that s = n*r reduced into
/// [1, q-1] lands strictly between (q-1)/2 and q-1. Requires q = 3 (mod 4),
/// gcd(n, q-1) = 1, and n not a power of p modulo q-1.
std::uint64_t construct_r(std::uint64_t n, std::uint32_t p, std::uint32_t k);

/// n*r folded into [1, q-1] modulo q-1.
std::uint64_t reduced_exponent(std::uint64_t n, std::uint64_t r, std::uint32_t q);

/// Canonical residue modulo x^q - x: exponents m >= 1 fold to the unique
/// representative in [1, q-1]; the constant term is untouched.
struct PolyModReduced {
  const FieldSpec* field;
  std::vector<Elem> coefficients;  // length <= q
};
PolyModReduced reduce_mod_xq_minus_x(const FieldSpec& f, std::span<const Elem> coeffs);

/// Horner evaluation of a dense coefficient vector.
Elem eval_poly(const FieldSpec& f, std::span<const Elem> coeffs, Elem x);

/// Whether (x^n - 1)^((q-1)/2) and (x - 1)^((q-1)/2) agree as functions on
/// F_q, by pointwise evaluation. Cross-checked against the digit criterion
/// (n a power of p mod q-1); disagreement is a hard error.
bool key_lemma_test(const FieldSpec& f, std::uint32_t n_exp);

/// max over distinct triples (a,b,c) of |sum_x eta((x-a)(x-b)(x-c))|.
/// Bounded by 2*sqrt(q); the full scan is limited to q <= 49.
std::uint32_t weil_triple_scan(const FieldSpec& f);

}  // namespace ffpos
