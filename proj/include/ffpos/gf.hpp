#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ffpos/error.hpp"

namespace ffpos {

/// Field element, encoded as sum_i c_i p^i for the coefficient vector of the
/// residue polynomial. Codes 0 and 1 are the additive and multiplicative
/// identities in every field.
using Elem = std::uint32_t;

/// Value of the quadratic character eta: +1 on squares of nonzero elements,
/// -1 on non-squares, 0 at zero. Kept as its own integer-valued type; it is
/// never a field element.
enum class Sign : int { Negative = -1, Zero = 0, Positive = 1 };

inline Sign sign_mul(Sign a, Sign b) {
  return static_cast<Sign>(static_cast<int>(a) * static_cast<int>(b));
}

inline int sign_int(Sign s) { return static_cast<int>(s); }

constexpr std::uint32_t kDefaultFieldBound = 1u << 20;

/// A concrete finite field F_{p^k} with a fixed monic irreducible modulus and
/// a fixed primitive element. Immutable after construction; all operations
/// are pure, so instances can be shared freely across threads.
///
/// The modulus is the monic irreducible degree-k polynomial whose coefficient
/// tuple (c_0..c_{k-1}), read as a base-p integer, is smallest; the generator
/// is the smallest element code of multiplicative order q-1. Both choices are
/// deterministic so that two constructions of the same field agree exactly.
class FieldSpec {
 public:
  std::uint32_t p() const { return p_; }
  std::uint32_t k() const { return k_; }
  std::uint32_t q() const { return q_; }
  /// Coefficients c_0..c_k of the modulus, c_k == 1. For k == 1 this is the
  /// placeholder x - 0, i.e. {0, 1}.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  Elem generator() const { return gen_; }

  Elem add(Elem x, Elem y) const;
  Elem sub(Elem x, Elem y) const;
  Elem neg(Elem x) const;
  Elem mul(Elem x, Elem y) const {
    if (x == 0 || y == 0) return 0;
    std::uint32_t e = log_[x] + log_[y];
    if (e >= q_ - 1) e -= q_ - 1;
    return exp_[e];
  }
  Elem inv(Elem x) const {
    if (x == 0) throw Error(Errc::DivisionByZero, "inverse of zero");
    return exp_[(q_ - 1 - log_[x]) % (q_ - 1)];
  }
  Elem div(Elem x, Elem y) const {
    if (y == 0) throw Error(Errc::DivisionByZero, "division by zero");
    if (x == 0) return 0;
    std::uint32_t e = log_[x] + (q_ - 1) - log_[y];
    if (e >= q_ - 1) e -= q_ - 1;
    return exp_[e];
  }
  /// x^e with e any integer; exponents reduce mod q-1 for nonzero x.
  Elem pow(Elem x, long long e) const;

  Sign eta(Elem x) const {
    if (x == 0) return Sign::Zero;
    if (p_ == 2) return Sign::Positive;
    return (log_[x] % 2 == 0) ? Sign::Positive : Sign::Negative;
  }
  bool is_positive(Elem x) const { return eta(x) == Sign::Positive; }
  /// F_q^+ as sorted element codes; cached.
  const std::vector<Elem>& positives() const { return positives_; }

  /// The unique square root lying in F_q^+ (or 0 for 0). Defined for even q
  /// and q = 3 (mod 4) only.
  Elem sqrt_positive(Elem x) const;
  /// Any square root if one exists, for every q. Internal helper; the paper's
  /// square-root notation is only defined where sqrt_positive applies.
  std::optional<Elem> sqrt_any(Elem x) const;

  /// sigma_ell(x) = x^(p^ell), 0 <= ell < k.
  Elem frobenius(std::uint32_t ell, Elem x) const;

  /// Elements of the subfield of order r (fixed points of x -> x^r).
  /// Requires r^m = q for some m >= 1.
  std::vector<Elem> subfield_elements(std::uint32_t r) const;

  /// Multiplicative order; x must be nonzero.
  std::uint32_t elem_order(Elem x) const;

 private:
  friend FieldSpec field_new(std::uint32_t p, std::uint32_t k, std::uint32_t bound);
  FieldSpec() = default;

  std::uint32_t p_ = 0, k_ = 0, q_ = 0;
  std::vector<std::uint32_t> modulus_;
  Elem gen_ = 0;
  std::vector<std::uint32_t> log_;   // log_[x] for x != 0, base gen_
  std::vector<Elem> exp_;            // exp_[i] = gen_^i, 0 <= i < q-1
  std::vector<Elem> positives_;
};

/// Construct F_{p^k}. Throws NotPrime or SizeExceeded.
FieldSpec field_new(std::uint32_t p, std::uint32_t k,
                    std::uint32_t bound = kDefaultFieldBound);

bool is_prime(std::uint32_t n);

/// All prime powers q with 2 <= q <= max, ascending. Convenience for sweeps.
std::vector<std::uint32_t> prime_powers_upto(std::uint32_t max);

/// Factor q as p^k with p prime; throws BadInput if q is not a prime power.
std::pair<std::uint32_t, std::uint32_t> factor_prime_power(std::uint32_t q);

}  // namespace ffpos
