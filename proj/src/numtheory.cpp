#include "ffpos/numtheory.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace ffpos {

DigitVector DigitVector::of(std::uint64_t value, std::uint32_t base, std::uint32_t width) {
  if (base < 2) throw Error(Errc::BadInput, "digit base must be at least 2");
  DigitVector d;
  d.base = base;
  while (value) {
    d.digits.push_back(static_cast<std::uint32_t>(value % base));
    value /= base;
  }
  while (d.digits.size() < width) d.digits.push_back(0);
  if (d.digits.empty()) d.digits.push_back(0);
  return d;
}

std::uint64_t DigitVector::value() const {
  std::uint64_t v = 0;
  for (std::size_t i = digits.size(); i-- > 0;) v = v * base + digits[i];
  return v;
}

namespace {

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint32_t m) {
  std::uint64_t r = 1;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

// C(ad, bd) mod p for ad, bd < p. All factorials are units mod p here.
std::uint32_t small_binom_mod(std::uint64_t ad, std::uint64_t bd, std::uint32_t p) {
  std::uint64_t num = 1, den = 1;
  for (std::uint64_t i = 0; i < bd; ++i) {
    num = num * ((ad - i) % p) % p;
    den = den * ((i + 1) % p) % p;
  }
  return static_cast<std::uint32_t>(num * pow_mod(den, p - 2, p) % p);
}

}  // namespace

std::uint32_t lucas_binom(std::uint64_t a, std::uint64_t b, std::uint32_t p) {
  if (!is_prime(p)) throw Error(Errc::NotPrime, "modulus must be prime");
  if (b > a) throw Error(Errc::BadInput, "need 0 <= b <= a");
  std::uint64_t result = 1;
  while (a || b) {
    std::uint64_t ad = a % p, bd = b % p;
    if (bd > ad) return 0;
    result = result * small_binom_mod(ad, bd, p) % p;
    a /= p;
    b /= p;
  }
  return static_cast<std::uint32_t>(result);
}

namespace {

// Minimal unsigned big integer, base 2^32 limbs, little-endian. Just enough
// for the multiplicative binomial formula.
using BigU = std::vector<std::uint32_t>;

void mul_small(BigU& a, std::uint32_t m) {
  std::uint64_t carry = 0;
  for (auto& limb : a) {
    std::uint64_t t = static_cast<std::uint64_t>(limb) * m + carry;
    limb = static_cast<std::uint32_t>(t);
    carry = t >> 32;
  }
  while (carry) {
    a.push_back(static_cast<std::uint32_t>(carry));
    carry >>= 32;
  }
}

void div_small_exact(BigU& a, std::uint32_t d) {
  std::uint64_t rem = 0;
  for (std::size_t i = a.size(); i-- > 0;) {
    std::uint64_t cur = (rem << 32) | a[i];
    a[i] = static_cast<std::uint32_t>(cur / d);
    rem = cur % d;
  }
  while (a.size() > 1 && a.back() == 0) a.pop_back();
}

std::uint32_t mod_small(const BigU& a, std::uint32_t m) {
  std::uint64_t rem = 0;
  for (std::size_t i = a.size(); i-- > 0;) rem = ((rem << 32) | a[i]) % m;
  return static_cast<std::uint32_t>(rem);
}

}  // namespace

std::uint32_t binom_mod_direct(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  if (b > a) throw Error(Errc::BadInput, "need 0 <= b <= a");
  if (b > a - b) b = a - b;
  BigU acc = {1};
  for (std::uint32_t i = 1; i <= b; ++i) {
    mul_small(acc, a - b + i);
    div_small_exact(acc, i);
  }
  return mod_small(acc, p);
}

std::uint64_t reduced_exponent(std::uint64_t n, std::uint64_t r, std::uint32_t q) {
  return (n * r - 1) % (q - 1) + 1;
}

std::uint64_t construct_r(std::uint64_t n, std::uint32_t p, std::uint32_t k) {
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < k; ++i) q *= p;
  if (q % 4 != 3) throw Error(Errc::PreconditionViolated, "q must be 3 (mod 4)");
  if (n < 1 || n > q - 1 || std::gcd(n, q - 1) != 1)
    throw Error(Errc::PreconditionViolated, "n must be a unit modulo q-1");
  {
    std::uint64_t pw = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
      if (n % (q - 1) == pw % (q - 1))
        throw Error(Errc::PreconditionViolated, "n is a power of p modulo q-1");
      pw *= p;
    }
  }

  auto nd = DigitVector::of(n, p, k);
  std::uint32_t t = *std::max_element(nd.digits.begin(), nd.digits.end());
  std::uint64_t r = 0;
  if (t > 1) {
    std::uint32_t j = 0;
    for (std::uint32_t i = 0; i < k; ++i)
      if (nd.digits[i] == t) j = i;
    std::uint64_t rj = (p - 1) / (2 * t) + 1;
    std::uint64_t shift = 1;
    for (std::uint32_t i = 0; i < k - 1 - j; ++i) shift *= p;
    r = rj * shift;
  } else {
    // all digits 0/1 and at least two ones since n is not a power of p
    std::uint32_t j = 0, l = 0;
    bool have_j = false;
    for (std::uint32_t i = k; i-- > 0;) {
      if (nd.digits[i] != 1) continue;
      if (!have_j) {
        j = i;
        have_j = true;
      } else {
        l = i;
        break;
      }
    }
    std::uint64_t half = (p - 1) / 2;
    std::uint64_t sj = 1, sl = 1;
    for (std::uint32_t i = 0; i < k - 1 - j; ++i) sj *= p;
    for (std::uint32_t i = 0; i < k - 1 - l; ++i) sl *= p;
    r = half * sj + half * sl;
  }

  for (std::uint32_t d : DigitVector::of(r, p, k).digits)
    if (d > (p - 1) / 2) throw Error(Errc::VerificationFailed, "constructed digit too large");
  std::uint64_t s = reduced_exponent(n, r, static_cast<std::uint32_t>(q));
  if (!(s > (q - 1) / 2 && s < q - 1))
    throw Error(Errc::VerificationFailed, "reduced exponent misses the upper half");
  return r;
}

PolyModReduced reduce_mod_xq_minus_x(const FieldSpec& f, std::span<const Elem> coeffs) {
  PolyModReduced out{&f, std::vector<Elem>(f.q(), 0)};
  for (std::size_t m = 0; m < coeffs.size(); ++m) {
    if (coeffs[m] == 0) continue;
    std::size_t target = m == 0 ? 0 : (m - 1) % (f.q() - 1) + 1;
    out.coefficients[target] = f.add(out.coefficients[target], coeffs[m]);
  }
  while (out.coefficients.size() > 1 && out.coefficients.back() == 0) out.coefficients.pop_back();
  return out;
}

Elem eval_poly(const FieldSpec& f, std::span<const Elem> coeffs, Elem x) {
  Elem acc = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = f.add(f.mul(acc, x), coeffs[i]);
  return acc;
}

bool key_lemma_test(const FieldSpec& f, std::uint32_t n_exp) {
  const std::uint32_t q = f.q();
  if (q % 4 != 3) throw Error(Errc::PreconditionViolated, "q must be 3 (mod 4)");
  if (n_exp < 1 || n_exp > q - 1 || std::gcd(n_exp, q - 1) != 1)
    throw Error(Errc::PreconditionViolated, "exponent must be a unit modulo q-1");

  bool pointwise = true;
  const std::uint32_t half = (q - 1) / 2;
  for (Elem c = 0; c < q && pointwise; ++c) {
    Elem g = f.pow(f.sub(f.pow(c, n_exp), 1), half);
    Elem h = f.pow(f.sub(c, 1), half);
    pointwise = g == h;
  }

  bool power_of_p = false;
  std::uint64_t pw = 1;
  for (std::uint32_t i = 0; i < f.k(); ++i) {
    if (n_exp % (q - 1) == pw % (q - 1)) power_of_p = true;
    pw *= f.p();
  }
  if (pointwise != power_of_p)
    throw Error(Errc::RouteDisagreement, "pointwise and digit criteria disagree");
  return pointwise;
}

std::uint32_t weil_triple_scan(const FieldSpec& f) {
  const std::uint32_t q = f.q();
  if (f.p() == 2) throw Error(Errc::NotApplicable, "character sums need odd q");
  if (q > 49) throw Error(Errc::SizeExceeded, "full triple scan limited to q <= 49");
  std::uint32_t best = 0;
  for (Elem a = 0; a < q; ++a)
    for (Elem b = a + 1; b < q; ++b)
      for (Elem c = b + 1; c < q; ++c) {
        int sum = 0;
        for (Elem x = 0; x < q; ++x)
          sum += sign_int(
              f.eta(f.mul(f.sub(x, a), f.mul(f.sub(x, b), f.sub(x, c)))));
        best = std::max(best, static_cast<std::uint32_t>(std::abs(sum)));
      }
  return best;
}

}  // namespace ffpos
