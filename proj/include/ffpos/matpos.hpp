#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ffpos/gf.hpp"

namespace ffpos {

/// Symmetric n x n matrix over a fixed field. Only the upper triangle is
/// stored (row-major), so symmetry holds by construction. Immutable use is
/// expected once filled in.
class SymMatrix {
 public:
  SymMatrix(const FieldSpec& f, std::uint32_t n)
      : field_(&f), n_(n), upper_(static_cast<std::size_t>(n) * (n + 1) / 2, 0) {}

  /// Build from a full row-major entry list; rejects asymmetric input and
  /// out-of-range codes.
  static SymMatrix from_full(const FieldSpec& f, std::uint32_t n,
                             std::span<const Elem> row_major);
  static SymMatrix from_upper(const FieldSpec& f, std::uint32_t n, std::vector<Elem> upper);

  std::uint32_t n() const { return n_; }
  const FieldSpec& field() const { return *field_; }

  Elem at(std::uint32_t i, std::uint32_t j) const { return upper_[index(i, j)]; }
  void set(std::uint32_t i, std::uint32_t j, Elem v) { upper_[index(i, j)] = v; }

  /// Upper triangle, row-major; this tuple also defines the lexicographic
  /// enumeration order.
  const std::vector<Elem>& upper() const { return upper_; }
  std::vector<Elem> full() const;

  bool operator==(const SymMatrix& other) const {
    return n_ == other.n_ && upper_ == other.upper_;
  }

 private:
  std::size_t index(std::uint32_t i, std::uint32_t j) const {
    if (i > j) std::swap(i, j);
    return static_cast<std::size_t>(i) * n_ - static_cast<std::size_t>(i) * (i - 1) / 2 +
           (j - i);
  }

  const FieldSpec* field_;
  std::uint32_t n_;
  std::vector<Elem> upper_;
};

/// Lower triangular matrix; strictly-upper entries are implicitly zero.
class LowerTriangular {
 public:
  LowerTriangular(const FieldSpec& f, std::uint32_t n)
      : field_(&f), n_(n), lower_(static_cast<std::size_t>(n) * (n + 1) / 2, 0) {}

  std::uint32_t n() const { return n_; }
  const FieldSpec& field() const { return *field_; }

  Elem at(std::uint32_t i, std::uint32_t j) const {
    return j > i ? 0 : lower_[index(i, j)];
  }
  void set(std::uint32_t i, std::uint32_t j, Elem v) { lower_[index(i, j)] = v; }

  SymMatrix mul_transpose() const;  // L L^T

 private:
  std::size_t index(std::uint32_t i, std::uint32_t j) const {
    return static_cast<std::size_t>(i) * (i + 1) / 2 + j;
  }

  const FieldSpec* field_;
  std::uint32_t n_;
  std::vector<Elem> lower_;
};

/// Determinants of the r x r leading principal submatrices, r = 1..n.
std::vector<Elem> leading_minors(const SymMatrix& A);

/// Leibniz-expansion determinant of the r x r leading block (r <= 4). Kept as
/// the second route for cross-checks against the elimination path.
Elem det_leibniz(const SymMatrix& A, std::uint32_t r);

/// True iff every leading principal minor is a nonzero square.
bool is_positive_definite(const SymMatrix& A);

/// A = L L^T with positive diagonal, or nullopt if no such factorization
/// exists. Attempted for every congruence class of q.
std::optional<LowerTriangular> cholesky(const SymMatrix& A);

/// Entrywise image of A under the value table (table[x] = f(x)).
SymMatrix apply_entrywise(std::span<const Elem> table, const SymMatrix& A);

constexpr std::uint64_t kDefaultEnumBound = 100'000'000;

/// Stream every positive definite n x n matrix in lexicographic order of the
/// upper-triangle tuple; returns how many were visited. n <= 3.
std::uint64_t for_each_pd(const FieldSpec& f, std::uint32_t n,
                          const std::function<void(const SymMatrix&)>& visit,
                          std::uint64_t bound = kDefaultEnumBound);

/// Materialized variant of for_each_pd. Intended for n <= 2; n = 3 works for
/// small q but the streaming form is preferred there.
std::vector<SymMatrix> enumerate_pd(const FieldSpec& f, std::uint32_t n,
                                    std::uint64_t bound = kDefaultEnumBound);

/// Like for_each_pd but the visitor can stop the scan by returning false.
/// Returns true iff the scan ran to completion.
bool scan_pd(const FieldSpec& f, std::uint32_t n,
             const std::function<bool(const SymMatrix&)>& visit,
             std::uint64_t bound = kDefaultEnumBound);

/// Every symmetric matrix in lexicographic upper-triangle order; the visitor
/// can stop the scan by returning false. Returns true iff completed.
bool scan_symmetric(const FieldSpec& f, std::uint32_t n,
                    const std::function<bool(const SymMatrix&)>& visit,
                    std::uint64_t bound = kDefaultEnumBound);

/// { x^T A x : x in F_q^n }, sorted. Direct enumeration, q^n bounded.
std::vector<Elem> quad_form_range(const SymMatrix& A,
                                  std::uint64_t bound = kDefaultEnumBound);

}  // namespace ffpos
