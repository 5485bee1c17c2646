#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ffpos/gf.hpp"
#include "ffpos/matpos.hpp"

namespace ffpos {

/// A function F_q -> F_q as a dense value table (values[x] = f(x)).
struct FnTable {
  const FieldSpec* field = nullptr;
  std::vector<Elem> values;

  static FnTable identity(const FieldSpec& f);
  /// c * x^e with 1 <= e <= q-1 (e is reduced as an exponent, not a code).
  static FnTable monomial(const FieldSpec& f, Elem c, std::uint32_t e);
  /// c * x^(p^ell).
  static FnTable automorphism_multiple(const FieldSpec& f, Elem c, std::uint32_t ell);

  Elem operator()(Elem x) const { return values[x]; }
  bool operator==(const FnTable& o) const { return values == o.values; }
  bool operator<(const FnTable& o) const { return values < o.values; }
};

/// Search state: a partially assigned value table. Completions only ever
/// extend it.
struct PartialFnTable {
  const FieldSpec* field = nullptr;
  std::vector<std::optional<Elem>> values;

  explicit PartialFnTable(const FieldSpec& f)
      : field(&f), values(f.q(), std::nullopt) {}
};

/// Necessary conditions a positivity preserver must satisfy, usable as
/// monotone pruning predicates on partial tables. Which of them hold depends
/// on the congruence class of q, so the valid set is derived from the field.
enum class LemmaId {
  PositiveImage,        // f(F_q^+) stays inside F_q^+
  PositiveBijection,    // f restricted to F_q^+ is injective and f(0) = 0
  SquareDifference,     // a-b positive and a or b positive forces f(a)-f(b) positive
  NonzeroOnUnits,       // once f(0) = 0, no other element may map to 0
};
const char* lemma_name(LemmaId id);

std::vector<LemmaId> lemmas_for(const FieldSpec& f);

struct FilterResult {
  bool consistent = true;
  std::optional<LemmaId> violated;
};
FilterResult necessary_filter(const PartialFnTable& f, std::span<const LemmaId> lemmas);

/// Lagrange interpolation: the unique polynomial of degree <= q-1 agreeing
/// with the table everywhere.
std::vector<Elem> interpolate(const FnTable& f);

struct PreserverCheck {
  bool ok = false;
  std::optional<SymMatrix> witness;  // lexicographically first counterexample
};

/// Whether f[A] is positive definite for every positive definite A of size n.
PreserverCheck is_preserver(const FnTable& f, std::uint32_t n,
                            std::uint64_t bound = kDefaultEnumBound);

/// Two-sided check over all symmetric matrices of size n: A is positive
/// definite iff f[A] is.
PreserverCheck is_sign_preserver(const FnTable& f, std::uint32_t n,
                                 std::uint64_t bound = kDefaultEnumBound);

enum class FormKind { AutomorphismMultiple, BijectiveMonomial, Other };

struct Form {
  FormKind kind = FormKind::Other;
  Elem c = 0;
  std::uint32_t exponent = 0;  // ell for automorphism multiples, n for monomials
  Sign c_sign = Sign::Zero;
};

/// Match f against c*x^(p^ell) (c positive for odd q, nonzero for even q),
/// then against bijective monomials c*x^n with gcd(n, q-1) = 1. Deterministic
/// smallest-(ell, c) / smallest-(n, c) witness.
Form recognize_form(const FnTable& f);

/// f(0) = 0 and eta(f(a) - f(b)) = eta(a - b) for all pairs; odd q.
bool carlitz_predicate(const FnTable& f);

/// All bijections with f(0) = 0 and f(1) = 1 satisfying the character
/// condition above, found by incremental search over partial bijections.
std::vector<FnTable> carlitz_normalized_solutions(const FieldSpec& f);

using BigCount = unsigned __int128;
std::string big_to_string(BigCount v);

/// Closed-form count of the n = 1 preservers; brute-force checked for q <= 5.
BigCount count_dim1_preservers(const FieldSpec& f);

/// Whether x^e preserves positivity on 2x2 matrices, for q = 3 (mod 4),
/// computed independently by the direct matrix route and by the parity, gcd
/// and digit screens. The two routes must agree.
bool monomial_preserver_test(const FieldSpec& f, std::uint32_t n_exp);

enum class ClassifyMode { Preserver, SignPreserver };

struct ClassifyOptions {
  bool prune = true;
  std::uint32_t jobs = 1;
  std::uint64_t max_nodes = 0;         // 0 = unlimited
  std::uint64_t size_limit = 10'000'000;
};

struct ClassifiedFn {
  FnTable table;
  Form form;
};

struct ClassificationResult {
  std::uint32_t p = 0, k = 0, q = 0, n = 0;
  ClassifyMode mode = ClassifyMode::Preserver;
  bool exhaustive = true;
  std::string restriction = "none";  // unpruned fallback domain, if any
  std::vector<ClassifiedFn> preservers;  // sorted by value table
  std::map<std::string, std::uint64_t> pruning_profile;
  std::uint64_t elapsed_ms = 0;  // diagnostic only, not part of canonical output
};

/// Complete classification of the preservers (or sign preservers) for (q, n).
///
/// Pruned mode runs a DFS over value tables in the fixed element order
/// [0, 1, squares by ascending generator exponent, non-squares], filtering
/// with the congruence-class lemmas plus incremental definiteness checks on
/// every fully assigned test matrix. Completed tables are always re-verified
/// against the full test set, so pruning can only lose candidates, never
/// invent them (and the unpruned audit covers the losing direction on small
/// fields). Unpruned mode enumerates q^q tables when feasible, falling back
/// to the bijections fixing 0 for q of 8 or 9.
///
/// n = 3 classifies n = 2 first and filters the survivors against streamed
/// 3x3 tests, which is sound because 2x2 test matrices embed as leading
/// blocks.
ClassificationResult classify(const FieldSpec& f, std::uint32_t n, ClassifyMode mode,
                              ClassifyOptions options = {});

const char* mode_name(ClassifyMode m);

}  // namespace ffpos
