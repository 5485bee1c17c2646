#include "ffpos/matpos.hpp"

#include <array>
#include <algorithm>
#include <numeric>
#include <set>
#include <string>

namespace ffpos {

SymMatrix SymMatrix::from_full(const FieldSpec& f, std::uint32_t n,
                               std::span<const Elem> row_major) {
  if (row_major.size() != static_cast<std::size_t>(n) * n)
    throw Error(Errc::BadInput, "expected " + std::to_string(n * n) + " entries");
  SymMatrix A(f, n);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) {
      Elem v = row_major[static_cast<std::size_t>(i) * n + j];
      if (v >= f.q()) throw Error(Errc::BadInput, "entry code out of range");
      if (i > j && v != row_major[static_cast<std::size_t>(j) * n + i])
        throw Error(Errc::BadInput, "matrix is not symmetric");
      if (i <= j) A.set(i, j, v);
    }
  return A;
}

SymMatrix SymMatrix::from_upper(const FieldSpec& f, std::uint32_t n,
                                std::vector<Elem> upper) {
  if (upper.size() != static_cast<std::size_t>(n) * (n + 1) / 2)
    throw Error(Errc::BadInput, "wrong upper-triangle length");
  SymMatrix A(f, n);
  A.upper_ = std::move(upper);
  return A;
}

std::vector<Elem> SymMatrix::full() const {
  std::vector<Elem> out(static_cast<std::size_t>(n_) * n_);
  for (std::uint32_t i = 0; i < n_; ++i)
    for (std::uint32_t j = 0; j < n_; ++j) out[static_cast<std::size_t>(i) * n_ + j] = at(i, j);
  return out;
}

SymMatrix LowerTriangular::mul_transpose() const {
  const FieldSpec& f = *field_;
  SymMatrix A(f, n_);
  for (std::uint32_t i = 0; i < n_; ++i)
    for (std::uint32_t j = i; j < n_; ++j) {
      Elem s = 0;
      for (std::uint32_t t = 0; t <= std::min(i, j); ++t)
        s = f.add(s, f.mul(at(i, t), at(j, t)));
      A.set(i, j, s);
    }
  return A;
}

namespace {

// Determinant of the r x r leading block by Gaussian elimination with
// zero-pivot row swaps and sign tracking. Exact over the field.
Elem leading_det(const SymMatrix& A, std::uint32_t r) {
  const FieldSpec& f = A.field();
  std::array<Elem, 36> buf;
  std::vector<Elem> heap;
  Elem* m = buf.data();
  if (r * r > buf.size()) {
    heap.resize(static_cast<std::size_t>(r) * r);
    m = heap.data();
  }
  for (std::uint32_t i = 0; i < r; ++i)
    for (std::uint32_t j = 0; j < r; ++j) m[i * r + j] = A.at(i, j);

  bool negate = false;
  Elem det = 1;
  for (std::uint32_t c = 0; c < r; ++c) {
    std::uint32_t pivot = c;
    while (pivot < r && m[pivot * r + c] == 0) ++pivot;
    if (pivot == r) return 0;
    if (pivot != c) {
      for (std::uint32_t j = c; j < r; ++j) std::swap(m[pivot * r + j], m[c * r + j]);
      negate = !negate;
    }
    det = f.mul(det, m[c * r + c]);
    Elem inv_p = f.inv(m[c * r + c]);
    for (std::uint32_t i = c + 1; i < r; ++i) {
      if (m[i * r + c] == 0) continue;
      Elem factor = f.mul(m[i * r + c], inv_p);
      for (std::uint32_t j = c; j < r; ++j)
        m[i * r + j] = f.sub(m[i * r + j], f.mul(factor, m[c * r + j]));
    }
  }
  return negate ? f.neg(det) : det;
}

}  // namespace

std::vector<Elem> leading_minors(const SymMatrix& A) {
  std::vector<Elem> out;
  out.reserve(A.n());
  for (std::uint32_t r = 1; r <= A.n(); ++r) out.push_back(leading_det(A, r));
  return out;
}

Elem det_leibniz(const SymMatrix& A, std::uint32_t r) {
  if (r > 4) throw Error(Errc::SizeExceeded, "Leibniz expansion limited to r <= 4");
  const FieldSpec& f = A.field();
  std::vector<std::uint32_t> perm(r);
  std::iota(perm.begin(), perm.end(), 0);
  Elem det = 0;
  do {
    std::uint32_t inversions = 0;
    for (std::uint32_t i = 0; i < r; ++i)
      for (std::uint32_t j = i + 1; j < r; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Elem term = 1;
    for (std::uint32_t i = 0; i < r; ++i) term = f.mul(term, A.at(i, perm[i]));
    det = f.add(det, inversions % 2 ? f.neg(term) : term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

bool is_positive_definite(const SymMatrix& A) {
  for (std::uint32_t r = 1; r <= A.n(); ++r)
    if (A.field().eta(leading_det(A, r)) != Sign::Positive) return false;
  return true;
}

std::optional<LowerTriangular> cholesky(const SymMatrix& A) {
  const FieldSpec& f = A.field();
  const std::uint32_t n = A.n();
  LowerTriangular L(f, n);
  for (std::uint32_t j = 0; j < n; ++j) {
    Elem d = A.at(j, j);
    for (std::uint32_t t = 0; t < j; ++t) d = f.sub(d, f.mul(L.at(j, t), L.at(j, t)));
    if (f.eta(d) != Sign::Positive) return std::nullopt;
    // The pivot d is invariant under the sign choices made for earlier
    // columns (flipping L_tt flips the whole column t, and pivots only see
    // products of two column-t entries), so a single pass decides existence
    // even where both square roots of d have the same character.
    Elem root;
    if (f.p() == 2 || f.q() % 4 == 3) {
      root = f.sqrt_positive(d);
    } else {
      auto r = f.sqrt_any(d);
      if (!r || f.eta(*r) != Sign::Positive) return std::nullopt;
      root = *r;
    }
    L.set(j, j, root);
    Elem inv_root = f.inv(root);
    for (std::uint32_t i = j + 1; i < n; ++i) {
      Elem s = A.at(i, j);
      for (std::uint32_t t = 0; t < j; ++t) s = f.sub(s, f.mul(L.at(i, t), L.at(j, t)));
      L.set(i, j, f.mul(s, inv_root));
    }
  }
  return L;
}

SymMatrix apply_entrywise(std::span<const Elem> table, const SymMatrix& A) {
  const FieldSpec& f = A.field();
  if (table.size() != f.q()) throw Error(Errc::BadInput, "table size must equal q");
  SymMatrix B(f, A.n());
  for (std::uint32_t i = 0; i < A.n(); ++i)
    for (std::uint32_t j = i; j < A.n(); ++j) B.set(i, j, table[A.at(i, j)]);
  return B;
}

namespace {

std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

// Recursive assignment in row-major upper-triangle order. Each leading minor
// becomes testable right after its diagonal entry is placed, which prunes the
// scan without disturbing the lexicographic visit order.
struct PdEnumerator {
  const FieldSpec& f;
  std::uint32_t n;
  SymMatrix work;
  const std::function<void(const SymMatrix&)>& visit;
  std::uint64_t count = 0;

  PdEnumerator(const FieldSpec& field, std::uint32_t dim,
               const std::function<void(const SymMatrix&)>& v)
      : f(field), n(dim), work(field, dim), visit(v) {}

  void run(std::uint32_t i, std::uint32_t j) {
    if (i == n) {
      ++count;
      visit(work);
      return;
    }
    std::uint32_t ni = j + 1 == n ? i + 1 : i;
    std::uint32_t nj = j + 1 == n ? i + 1 : j + 1;
    for (Elem v = 0; v < f.q(); ++v) {
      work.set(i, j, v);
      if (i == j && f.eta(leading_det(work, i + 1)) != Sign::Positive) continue;
      run(ni, nj);
    }
    work.set(i, j, 0);
  }
};

}  // namespace

std::uint64_t for_each_pd(const FieldSpec& f, std::uint32_t n,
                          const std::function<void(const SymMatrix&)>& visit,
                          std::uint64_t bound) {
  if (n < 1 || n > 3) throw Error(Errc::SizeExceeded, "PD enumeration supports n <= 3");
  std::uint64_t space = ipow(f.q(), n * (n + 1) / 2);
  if (space > bound)
    throw Error(Errc::SizeExceeded,
                "q^(n(n+1)/2) = " + std::to_string(space) + " exceeds the bound");
  PdEnumerator e(f, n, visit);
  e.run(0, 0);
  return e.count;
}

std::vector<SymMatrix> enumerate_pd(const FieldSpec& f, std::uint32_t n,
                                    std::uint64_t bound) {
  std::vector<SymMatrix> out;
  for_each_pd(f, n, [&](const SymMatrix& A) { out.push_back(A); }, bound);
  return out;
}

namespace {

struct StoppableEnumerator {
  const FieldSpec& f;
  std::uint32_t n;
  SymMatrix work;
  const std::function<bool(const SymMatrix&)>& visit;
  bool pd_only;
  bool stopped = false;

  StoppableEnumerator(const FieldSpec& field, std::uint32_t dim,
                      const std::function<bool(const SymMatrix&)>& v, bool only_pd)
      : f(field), n(dim), work(field, dim), visit(v), pd_only(only_pd) {}

  void run(std::uint32_t i, std::uint32_t j) {
    if (stopped) return;
    if (i == n) {
      if (!visit(work)) stopped = true;
      return;
    }
    std::uint32_t ni = j + 1 == n ? i + 1 : i;
    std::uint32_t nj = j + 1 == n ? i + 1 : j + 1;
    for (Elem v = 0; v < f.q() && !stopped; ++v) {
      work.set(i, j, v);
      if (pd_only && i == j && f.eta(leading_det(work, i + 1)) != Sign::Positive) continue;
      run(ni, nj);
    }
    work.set(i, j, 0);
  }
};

bool scan_matrices(const FieldSpec& f, std::uint32_t n,
                   const std::function<bool(const SymMatrix&)>& visit, std::uint64_t bound,
                   bool pd_only) {
  if (n < 1 || n > 3) throw Error(Errc::SizeExceeded, "matrix scans support n <= 3");
  std::uint64_t space = ipow(f.q(), n * (n + 1) / 2);
  if (space > bound)
    throw Error(Errc::SizeExceeded,
                "q^(n(n+1)/2) = " + std::to_string(space) + " exceeds the bound");
  StoppableEnumerator e(f, n, visit, pd_only);
  e.run(0, 0);
  return !e.stopped;
}

}  // namespace

bool scan_pd(const FieldSpec& f, std::uint32_t n,
             const std::function<bool(const SymMatrix&)>& visit, std::uint64_t bound) {
  return scan_matrices(f, n, visit, bound, true);
}

bool scan_symmetric(const FieldSpec& f, std::uint32_t n,
                    const std::function<bool(const SymMatrix&)>& visit, std::uint64_t bound) {
  return scan_matrices(f, n, visit, bound, false);
}

std::vector<Elem> quad_form_range(const SymMatrix& A, std::uint64_t bound) {
  const FieldSpec& f = A.field();
  const std::uint32_t n = A.n();
  std::uint64_t space = ipow(f.q(), n);
  if (space > bound) throw Error(Errc::SizeExceeded, "q^n exceeds the bound");
  std::set<Elem> seen;
  std::vector<Elem> x(n, 0);
  for (std::uint64_t code = 0; code < space; ++code) {
    std::uint64_t t = code;
    for (std::uint32_t i = 0; i < n; ++i) {
      x[i] = static_cast<Elem>(t % f.q());
      t /= f.q();
    }
    Elem s = 0;
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < n; ++j) s = f.add(s, f.mul(x[i], f.mul(A.at(i, j), x[j])));
    seen.insert(s);
  }
  return {seen.begin(), seen.end()};
}

}  // namespace ffpos
