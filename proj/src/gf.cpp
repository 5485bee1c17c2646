#include "ffpos/gf.hpp"

#include <algorithm>
#include <numeric>

namespace ffpos {

namespace {

// Dense polynomials over F_p, little-endian coefficients. Only used while
// bootstrapping a field (modulus search, generator search, log tables);
// element arithmetic afterwards goes through the log/exp tables.
using Poly = std::vector<std::uint32_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  }
  trim(c);
  return c;
}

std::uint32_t mod_inv(std::uint32_t a, std::uint32_t p) {
  // p prime, a != 0
  std::uint32_t r = 1, b = a % p, e = p - 2;
  while (e) {
    if (e & 1) r = static_cast<std::uint64_t>(r) * b % p;
    b = static_cast<std::uint64_t>(b) * b % p;
    e >>= 1;
  }
  return r;
}

// Remainder of a modulo b (b nonzero, not necessarily monic).
Poly poly_rem(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  const std::uint32_t lead_inv = mod_inv(b.back(), p);
  while (a.size() >= b.size()) {
    std::uint32_t coef = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      std::uint32_t s = static_cast<std::uint64_t>(coef) * b[i] % p;
      a[shift + i] = (a[shift + i] + p - s) % p;
    }
    trim(a);
    if (a.empty()) break;
  }
  return a;
}

Poly code_to_poly(Elem x, std::uint32_t p) {
  Poly c;
  while (x) {
    c.push_back(x % p);
    x /= p;
  }
  return c;
}

Elem poly_to_code(const Poly& a, std::uint32_t p) {
  Elem x = 0;
  for (std::size_t i = a.size(); i-- > 0;) x = x * p + a[i];
  return x;
}

bool poly_is_irreducible(const Poly& f, std::uint32_t p) {
  // Trial division by every monic polynomial of degree 1..deg(f)/2.
  // Degrees here are desk scale, so this stays cheap.
  const std::size_t deg = f.size() - 1;
  for (std::size_t d = 1; 2 * d <= deg; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t m = 0; m < count; ++m) {
      Poly g(d + 1, 0);
      std::uint64_t t = m;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(t % p);
        t /= p;
      }
      g[d] = 1;
      if (poly_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

std::vector<std::uint32_t> prime_factors(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint32_t> prime_powers_upto(std::uint32_t max) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t q = 2; q <= max; ++q) {
    std::uint32_t m = q;
    std::uint32_t p = 0;
    for (std::uint32_t d = 2; d * d <= m; ++d)
      if (m % d == 0) {
        p = d;
        break;
      }
    if (p == 0) p = m;
    while (m % p == 0) m /= p;
    if (m == 1) out.push_back(q);
  }
  return out;
}

std::pair<std::uint32_t, std::uint32_t> factor_prime_power(std::uint32_t q) {
  if (q < 2) throw Error(Errc::BadInput, "q must be at least 2");
  std::uint32_t p = q;
  for (std::uint32_t d = 2; d * d <= q; ++d)
    if (q % d == 0) {
      p = d;
      break;
    }
  std::uint32_t k = 0, m = q;
  while (m % p == 0) {
    m /= p;
    ++k;
  }
  if (m != 1) throw Error(Errc::BadInput, "q is not a prime power");
  return {p, k};
}

FieldSpec field_new(std::uint32_t p, std::uint32_t k, std::uint32_t bound) {
  if (!is_prime(p)) throw Error(Errc::NotPrime, "p = " + std::to_string(p) + " is not prime");
  if (k < 1) throw Error(Errc::BadInput, "k must be positive");
  std::uint64_t q64 = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    q64 *= p;
    if (q64 > bound)
      throw Error(Errc::SizeExceeded, "q = p^k exceeds the size bound " + std::to_string(bound));
  }
  const std::uint32_t q = static_cast<std::uint32_t>(q64);

  FieldSpec f;
  f.p_ = p;
  f.k_ = k;
  f.q_ = q;

  if (k == 1) {
    f.modulus_ = {0, 1};  // x - 0 placeholder, arithmetic is plain mod p
  } else {
    bool found = false;
    for (Elem m = 0; m < q; ++m) {
      Poly cand(k + 1, 0);
      Elem t = m;
      for (std::uint32_t i = 0; i < k; ++i) {
        cand[i] = t % p;
        t /= p;
      }
      cand[k] = 1;
      if (poly_is_irreducible(cand, p)) {
        f.modulus_ = cand;
        found = true;
        break;
      }
    }
    if (!found) throw Error(Errc::VerificationFailed, "no irreducible modulus found");
  }

  // Element multiplication through the modulus, used until the tables exist.
  auto raw_mul = [&](Elem x, Elem y) -> Elem {
    if (k == 1) return static_cast<std::uint64_t>(x) * y % p;
    Poly r = poly_rem(poly_mul(code_to_poly(x, p), code_to_poly(y, p), p), f.modulus_, p);
    return poly_to_code(r, p);
  };
  auto raw_pow = [&](Elem x, std::uint32_t e) -> Elem {
    Elem r = 1;
    while (e) {
      if (e & 1) r = raw_mul(r, x);
      x = raw_mul(x, x);
      e >>= 1;
    }
    return r;
  };

  const auto factors = prime_factors(q - 1);
  auto is_generator = [&](Elem c) {
    for (std::uint32_t d : factors)
      if (raw_pow(c, (q - 1) / d) == 1) return false;
    return true;
  };
  f.gen_ = 0;
  for (Elem c = 1; c < q; ++c) {
    if (q == 2) {  // F_2: the generator is 1
      f.gen_ = 1;
      break;
    }
    if (c >= 2 && is_generator(c)) {
      f.gen_ = c;
      break;
    }
  }
  if (f.gen_ == 0) throw Error(Errc::VerificationFailed, "no generator found");

  f.exp_.assign(q - 1, 0);
  f.log_.assign(q, 0);
  Elem cur = 1;
  for (std::uint32_t i = 0; i < q - 1; ++i) {
    f.exp_[i] = cur;
    f.log_[cur] = i;
    cur = raw_mul(cur, f.gen_);
  }
  if (cur != 1) throw Error(Errc::VerificationFailed, "generator order mismatch");

  if (p == 2) {
    for (Elem x = 1; x < q; ++x) f.positives_.push_back(x);
  } else {
    for (Elem x = 1; x < q; ++x)
      if (f.log_[x] % 2 == 0) f.positives_.push_back(x);
  }
  return f;
}

Elem FieldSpec::add(Elem x, Elem y) const {
  if (k_ == 1) {
    std::uint32_t s = x + y;
    return s >= q_ ? s - q_ : s;
  }
  if (p_ == 2) return x ^ y;
  Elem r = 0, mult = 1;
  while (x || y) {
    std::uint32_t d = x % p_ + y % p_;
    if (d >= p_) d -= p_;
    r += d * mult;
    mult *= p_;
    x /= p_;
    y /= p_;
  }
  return r;
}

Elem FieldSpec::neg(Elem x) const {
  if (k_ == 1) return x == 0 ? 0 : q_ - x;
  if (p_ == 2) return x;
  Elem r = 0, mult = 1;
  while (x) {
    std::uint32_t d = x % p_;
    if (d) d = p_ - d;
    r += d * mult;
    mult *= p_;
    x /= p_;
  }
  return r;
}

Elem FieldSpec::sub(Elem x, Elem y) const { return add(x, neg(y)); }

Elem FieldSpec::pow(Elem x, long long e) const {
  if (x == 0) {
    if (e > 0) return 0;
    if (e == 0) return 1;
    throw Error(Errc::DivisionByZero, "0 raised to a negative power");
  }
  const std::uint32_t m = q_ - 1;
  long long r = e % m;
  if (r < 0) r += m;
  std::uint64_t le = static_cast<std::uint64_t>(log_[x]) * static_cast<std::uint64_t>(r) % m;
  return exp_[le];
}

Elem FieldSpec::sqrt_positive(Elem x) const {
  if (p_ == 2) return pow(x, q_ / 2);
  if (q_ % 4 != 3)
    throw Error(Errc::NotApplicable,
                "positive square roots are only defined for even q or q = 3 (mod 4)");
  if (x == 0) return 0;
  if (eta(x) != Sign::Positive) throw Error(Errc::NotASquare, "element is not a square");
  Elem y = pow(x, (q_ + 1) / 4);
  if (eta(y) == Sign::Negative) y = neg(y);
  return y;
}

std::optional<Elem> FieldSpec::sqrt_any(Elem x) const {
  if (x == 0) return Elem{0};
  if (p_ == 2) return pow(x, q_ / 2);
  if (log_[x] % 2 != 0) return std::nullopt;
  return exp_[log_[x] / 2];
}

Elem FieldSpec::frobenius(std::uint32_t ell, Elem x) const {
  if (ell >= k_) throw Error(Errc::BadInput, "automorphism index out of range");
  std::uint64_t e = 1;
  for (std::uint32_t i = 0; i < ell; ++i) e *= p_;
  return pow(x, static_cast<long long>(e));
}

std::vector<Elem> FieldSpec::subfield_elements(std::uint32_t r) const {
  bool ok = r >= 2;
  if (ok) {
    std::uint64_t t = r;
    while (t < q_) t *= r;
    ok = (t == q_);
  }
  if (!ok)
    throw Error(Errc::NotASubfieldOrder,
                std::to_string(r) + " is not a subfield order of q = " + std::to_string(q_));
  std::vector<Elem> out;
  for (Elem x = 0; x < q_; ++x)
    if (pow(x, r) == x) out.push_back(x);
  if (out.size() != r)
    throw Error(Errc::VerificationFailed, "subfield has unexpected size");
  if (static_cast<std::uint64_t>(r) * r == q_) {
    for (Elem x : out)
      if (x != 0 && !is_positive(x))
        throw Error(Errc::VerificationFailed, "subfield nonzero element is not a square");
  }
  return out;
}

std::uint32_t FieldSpec::elem_order(Elem x) const {
  if (x == 0) throw Error(Errc::BadInput, "zero has no multiplicative order");
  return (q_ - 1) / std::gcd(q_ - 1, log_[x]);
}

}  // namespace ffpos
