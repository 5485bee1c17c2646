#include "ffpos/preserver.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <numeric>
#include <thread>

#include "ffpos/numtheory.hpp"

namespace ffpos {

FnTable FnTable::identity(const FieldSpec& f) {
  FnTable t{&f, std::vector<Elem>(f.q())};
  for (Elem x = 0; x < f.q(); ++x) t.values[x] = x;
  return t;
}

FnTable FnTable::monomial(const FieldSpec& f, Elem c, std::uint32_t e) {
  FnTable t{&f, std::vector<Elem>(f.q())};
  for (Elem x = 0; x < f.q(); ++x) t.values[x] = f.mul(c, f.pow(x, e));
  return t;
}

FnTable FnTable::automorphism_multiple(const FieldSpec& f, Elem c, std::uint32_t ell) {
  FnTable t{&f, std::vector<Elem>(f.q())};
  for (Elem x = 0; x < f.q(); ++x) t.values[x] = f.mul(c, f.frobenius(ell, x));
  return t;
}

const char* lemma_name(LemmaId id) {
  switch (id) {
    case LemmaId::PositiveImage: return "positive_image";
    case LemmaId::PositiveBijection: return "positive_bijection";
    case LemmaId::SquareDifference: return "square_difference";
    case LemmaId::NonzeroOnUnits: return "nonzero_on_units";
  }
  return "unknown";
}

std::vector<LemmaId> lemmas_for(const FieldSpec& f) {
  if (f.p() == 2 || f.q() % 4 == 3)
    return {LemmaId::PositiveImage, LemmaId::PositiveBijection};
  return {LemmaId::PositiveImage, LemmaId::SquareDifference, LemmaId::NonzeroOnUnits};
}

FilterResult necessary_filter(const PartialFnTable& t, std::span<const LemmaId> lemmas) {
  const FieldSpec& f = *t.field;
  const std::uint32_t q = f.q();
  auto assigned = [&](Elem x) { return t.values[x].has_value(); };
  for (LemmaId lemma : lemmas) {
    bool bad = false;
    switch (lemma) {
      case LemmaId::PositiveImage:
        for (Elem x : f.positives())
          if (assigned(x) && !f.is_positive(*t.values[x])) bad = true;
        break;
      case LemmaId::PositiveBijection: {
        if (assigned(0) && *t.values[0] != 0) bad = true;
        const auto& pos = f.positives();
        for (std::size_t i = 0; i < pos.size() && !bad; ++i)
          for (std::size_t j = i + 1; j < pos.size() && !bad; ++j)
            if (assigned(pos[i]) && assigned(pos[j]) &&
                *t.values[pos[i]] == *t.values[pos[j]])
              bad = true;
        break;
      }
      case LemmaId::SquareDifference:
        for (Elem a = 0; a < q && !bad; ++a)
          for (Elem b = 0; b < q && !bad; ++b) {
            if (a == b || !assigned(a) || !assigned(b)) continue;
            if (!f.is_positive(f.sub(a, b))) continue;
            if (!f.is_positive(a) && !f.is_positive(b)) continue;
            if (!f.is_positive(f.sub(*t.values[a], *t.values[b]))) bad = true;
          }
        break;
      case LemmaId::NonzeroOnUnits:
        if (assigned(0) && *t.values[0] == 0)
          for (Elem x = 1; x < q; ++x)
            if (assigned(x) && *t.values[x] == 0) bad = true;
        break;
    }
    if (bad) return {false, lemma};
  }
  return {true, std::nullopt};
}

std::vector<Elem> interpolate(const FnTable& t) {
  const FieldSpec& f = *t.field;
  const std::uint32_t q = f.q();
  // The node polynomial is x^q - x; its derivative is -1 at every point, so
  // the Lagrange basis at a is minus the quotient (x^q - x)/(x - a).
  std::vector<Elem> coeffs(q, 0);
  for (Elem a = 0; a < q; ++a) {
    Elem fa = t.values[a];
    if (fa == 0) continue;
    Elem b = 1;  // quotient coefficient, degree q-1 downwards
    coeffs[q - 1] = f.sub(coeffs[q - 1], f.mul(fa, b));
    for (std::uint32_t i = q - 2; i >= 1; --i) {
      b = f.mul(a, b);
      coeffs[i] = f.sub(coeffs[i], f.mul(fa, b));
    }
    Elem b0 = f.sub(f.mul(a, b), 1);
    coeffs[0] = f.sub(coeffs[0], f.mul(fa, b0));
  }
  while (coeffs.size() > 1 && coeffs.back() == 0) coeffs.pop_back();
  return coeffs;
}

namespace {

bool pd2(const FieldSpec& f, Elem a, Elem b, Elem c) {
  return f.is_positive(a) && f.is_positive(f.sub(f.mul(a, c), f.mul(b, b)));
}

}  // namespace

PreserverCheck is_preserver(const FnTable& t, std::uint32_t n, std::uint64_t bound) {
  const FieldSpec& f = *t.field;
  const std::uint32_t q = f.q();
  if (n == 1) {
    for (Elem a : f.positives())
      if (!f.is_positive(t.values[a])) {
        SymMatrix w(f, 1);
        w.set(0, 0, a);
        return {false, w};
      }
    return {true, std::nullopt};
  }
  if (n == 2) {
    for (Elem a = 0; a < q; ++a) {
      if (!f.is_positive(a)) continue;
      for (Elem b = 0; b < q; ++b)
        for (Elem c = 0; c < q; ++c) {
          if (!f.is_positive(f.sub(f.mul(a, c), f.mul(b, b)))) continue;
          if (!pd2(f, t.values[a], t.values[b], t.values[c]))
            return {false, SymMatrix::from_upper(f, 2, {a, b, c})};
        }
    }
    return {true, std::nullopt};
  }
  PreserverCheck out{true, std::nullopt};
  scan_pd(
      f, n,
      [&](const SymMatrix& A) {
        SymMatrix img = apply_entrywise(t.values, A);
        if (!is_positive_definite(img)) {
          out = {false, A};
          return false;
        }
        return true;
      },
      bound);
  return out;
}

PreserverCheck is_sign_preserver(const FnTable& t, std::uint32_t n, std::uint64_t bound) {
  const FieldSpec& f = *t.field;
  PreserverCheck out{true, std::nullopt};
  scan_symmetric(
      f, n,
      [&](const SymMatrix& A) {
        bool src = is_positive_definite(A);
        bool img = is_positive_definite(apply_entrywise(t.values, A));
        if (src != img) {
          out = {false, A};
          return false;
        }
        return true;
      },
      bound);
  return out;
}

Form recognize_form(const FnTable& t) {
  const FieldSpec& f = *t.field;
  const std::uint32_t q = f.q();
  const Elem c = t.values[1];  // any c x^e has f(1) = c
  Form other{FormKind::Other, 0, 0, Sign::Zero};
  if (c == 0) return other;

  bool c_admissible = f.p() == 2 ? true : f.is_positive(c);
  if (c_admissible) {
    for (std::uint32_t ell = 0; ell < f.k(); ++ell) {
      bool match = true;
      for (Elem x = 0; x < q && match; ++x)
        match = t.values[x] == f.mul(c, f.frobenius(ell, x));
      if (match) return {FormKind::AutomorphismMultiple, c, ell, f.eta(c)};
    }
  }
  for (std::uint32_t e = 1; e <= q - 1; ++e) {
    if (std::gcd(e, q - 1) != 1u) continue;
    bool match = true;
    for (Elem x = 0; x < q && match; ++x) match = t.values[x] == f.mul(c, f.pow(x, e));
    if (match) return {FormKind::BijectiveMonomial, c, e, f.eta(c)};
  }
  return other;
}

bool carlitz_predicate(const FnTable& t) {
  const FieldSpec& f = *t.field;
  if (f.p() == 2) throw Error(Errc::NotApplicable, "stated for odd q");
  if (t.values[0] != 0) return false;
  const std::uint32_t q = f.q();
  for (Elem a = 0; a < q; ++a)
    for (Elem b = a + 1; b < q; ++b)
      if (f.eta(f.sub(t.values[a], t.values[b])) != f.eta(f.sub(a, b))) return false;
  return true;
}

std::vector<FnTable> carlitz_normalized_solutions(const FieldSpec& f) {
  if (f.p() == 2) throw Error(Errc::NotApplicable, "stated for odd q");
  const std::uint32_t q = f.q();
  std::vector<Elem> values(q, 0);
  std::vector<bool> used(q, false);
  values[0] = 0;
  values[1] = 1;
  used[0] = used[1] = true;
  std::vector<FnTable> out;

  auto consistent = [&](Elem x, Elem v) {
    for (Elem y = 0; y < x; ++y)
      if (f.eta(f.sub(v, values[y])) != f.eta(f.sub(x, y))) return false;
    return true;
  };
  auto rec = [&](auto&& self, Elem x) -> void {
    if (x == q) {
      out.push_back(FnTable{&f, values});
      return;
    }
    for (Elem v = 0; v < q; ++v) {
      if (used[v] || !consistent(x, v)) continue;
      values[x] = v;
      used[v] = true;
      self(self, x + 1);
      used[v] = false;
    }
  };
  rec(rec, 2);
  std::sort(out.begin(), out.end());
  return out;
}

std::string big_to_string(BigCount v) {
  if (v == 0) return "0";
  std::string s;
  while (v) {
    s.push_back(static_cast<char>('0' + static_cast<unsigned>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

namespace {

BigCount mul_checked(BigCount a, BigCount b) {
  if (a != 0 && b > static_cast<BigCount>(-1) / a)
    throw Error(Errc::SizeExceeded, "dimension-1 count overflows 128 bits");
  return a * b;
}

BigCount pow_checked(BigCount b, std::uint32_t e) {
  BigCount r = 1;
  while (e--) r = mul_checked(r, b);
  return r;
}

}  // namespace

BigCount count_dim1_preservers(const FieldSpec& f) {
  const std::uint32_t q = f.q();
  const std::uint32_t np = static_cast<std::uint32_t>(f.positives().size());
  BigCount count = mul_checked(pow_checked(np, np), pow_checked(q, q - np));

  if (q <= 5) {
    BigCount brute = 0;
    std::vector<Elem> values(q, 0);
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < q; ++i) total *= q;
    for (std::uint64_t code = 0; code < total; ++code) {
      std::uint64_t tt = code;
      for (auto& v : values) {
        v = static_cast<Elem>(tt % q);
        tt /= q;
      }
      bool ok = true;
      for (Elem a : f.positives())
        if (!f.is_positive(values[a])) {
          ok = false;
          break;
        }
      if (ok) ++brute;
    }
    if (brute != count)
      throw Error(Errc::VerificationFailed, "closed form disagrees with brute force");
  }
  return count;
}

bool monomial_preserver_test(const FieldSpec& f, std::uint32_t n_exp) {
  if (f.q() % 4 != 3) throw Error(Errc::PreconditionViolated, "stated for q = 3 (mod 4)");
  if (n_exp < 1 || n_exp > f.q() - 1) throw Error(Errc::BadInput, "exponent out of range");

  bool direct = is_preserver(FnTable::monomial(f, 1, n_exp), 2).ok;

  bool screened;
  if (n_exp % 2 == 0) {
    screened = false;  // even exponents collapse F_q^- onto F_q^+
  } else if (std::gcd(n_exp, f.q() - 1) != 1u) {
    screened = false;  // non-bijective monomials cannot preserve
  } else {
    screened = key_lemma_test(f, n_exp);
  }
  if (direct != screened)
    throw Error(Errc::RouteDisagreement, "matrix route and digit route disagree");
  return direct;
}

const char* mode_name(ClassifyMode m) {
  return m == ClassifyMode::Preserver ? "preserver" : "sign";
}

namespace {

struct Constraint {
  Elem a, b, c;
  bool want_pd;
};

struct SearchSetup {
  const FieldSpec& f;
  ClassifyMode mode;
  std::vector<Elem> order;                      // position -> element
  std::vector<std::uint32_t> pos_of;            // element -> position
  std::vector<std::vector<Elem>> candidates;    // per position
  std::vector<std::vector<Constraint>> checks;  // per position, fired when complete
  bool lemma_bijection = false;
  bool lemma_square_diff = false;
  bool lemma_nonzero = false;

  explicit SearchSetup(const FieldSpec& field, ClassifyMode m) : f(field), mode(m) {
    const std::uint32_t q = f.q();
    order.push_back(0);
    order.push_back(1);
    Elem g = f.generator();
    std::vector<Elem> negatives;
    Elem cur = 1;
    for (std::uint32_t e = 1; e < q - 1; ++e) {
      cur = f.mul(cur, g);
      if (f.is_positive(cur))
        order.push_back(cur);
      else
        negatives.push_back(cur);
    }
    order.insert(order.end(), negatives.begin(), negatives.end());

    pos_of.assign(q, 0);
    for (std::uint32_t i = 0; i < q; ++i) pos_of[order[i]] = i;

    for (LemmaId lemma : lemmas_for(f)) {
      if (lemma == LemmaId::PositiveBijection) lemma_bijection = true;
      if (lemma == LemmaId::SquareDifference) lemma_square_diff = true;
      if (lemma == LemmaId::NonzeroOnUnits) lemma_nonzero = true;
    }

    candidates.resize(q);
    for (std::uint32_t i = 0; i < q; ++i) {
      Elem x = order[i];
      if (x == 0 && lemma_bijection) {
        candidates[i] = {0};
      } else if (f.is_positive(x)) {
        candidates[i] = f.positives();
      } else {
        candidates[i].resize(q);
        std::iota(candidates[i].begin(), candidates[i].end(), 0);
      }
    }

    checks.resize(q);
    for (Elem a = 0; a < q; ++a)
      for (Elem b = 0; b < q; ++b)
        for (Elem c = 0; c < q; ++c) {
          bool pd = pd2(f, a, b, c);
          if (mode == ClassifyMode::Preserver && !pd) continue;
          std::uint32_t last = std::max({pos_of[a], pos_of[b], pos_of[c]});
          checks[last].push_back({a, b, c, pd});
        }
  }
};

struct SearchCounters {
  std::uint64_t nodes = 0;
  std::uint64_t lemma_bijection = 0;
  std::uint64_t lemma_square_diff = 0;
  std::uint64_t lemma_nonzero = 0;
  std::uint64_t pd_pruned = 0;
  std::uint64_t sign_pruned = 0;
  std::uint64_t leaves = 0;

  void merge(const SearchCounters& o) {
    nodes += o.nodes;
    lemma_bijection += o.lemma_bijection;
    lemma_square_diff += o.lemma_square_diff;
    lemma_nonzero += o.lemma_nonzero;
    pd_pruned += o.pd_pruned;
    sign_pruned += o.sign_pruned;
    leaves += o.leaves;
  }
};

struct DfsWorker {
  const SearchSetup& setup;
  const FieldSpec& f;
  std::uint64_t max_nodes;
  std::vector<Elem> values;
  std::vector<bool> value_used_by_positive;
  std::vector<FnTable> found;
  SearchCounters counters;
  bool interrupted = false;

  DfsWorker(const SearchSetup& s, std::uint64_t node_budget)
      : setup(s), f(s.f), max_nodes(node_budget), values(f.q(), 0),
        value_used_by_positive(f.q(), false) {}

  bool lemma_ok(std::uint32_t depth, Elem x, Elem v) {
    if (setup.lemma_bijection && f.is_positive(x) && value_used_by_positive[v]) {
      ++counters.lemma_bijection;
      return false;
    }
    if (setup.lemma_nonzero && x != 0 && v == 0 && values[0] == 0) {
      ++counters.lemma_nonzero;
      return false;
    }
    if (setup.lemma_square_diff) {
      for (std::uint32_t e = 0; e < depth; ++e) {
        Elem y = setup.order[e], w = values[y];
        bool xp = f.is_positive(x), yp = f.is_positive(y);
        if ((xp || yp) && f.is_positive(f.sub(x, y)) && !f.is_positive(f.sub(v, w))) {
          ++counters.lemma_square_diff;
          return false;
        }
        if ((xp || yp) && f.is_positive(f.sub(y, x)) && !f.is_positive(f.sub(w, v))) {
          ++counters.lemma_square_diff;
          return false;
        }
      }
    }
    return true;
  }

  bool checks_ok(std::uint32_t depth) {
    for (const Constraint& c : setup.checks[depth]) {
      bool img_pd = pd2(f, values[c.a], values[c.b], values[c.c]);
      if (c.want_pd && !img_pd) {
        ++counters.pd_pruned;
        return false;
      }
      if (!c.want_pd && img_pd) {
        ++counters.sign_pruned;
        return false;
      }
    }
    return true;
  }

  void run(std::uint32_t depth, std::span<const Elem> first_candidates) {
    if (interrupted) return;
    if (depth == f.q()) {
      ++counters.leaves;
      found.push_back(FnTable{&f, values});
      return;
    }
    Elem x = setup.order[depth];
    std::span<const Elem> cands =
        depth == 0 ? first_candidates : std::span<const Elem>(setup.candidates[depth]);
    for (Elem v : cands) {
      if (interrupted) return;
      ++counters.nodes;
      if (max_nodes && counters.nodes > max_nodes) {
        interrupted = true;
        return;
      }
      if (!lemma_ok(depth, x, v)) continue;
      values[x] = v;
      bool positive_x = f.is_positive(x);
      if (positive_x) value_used_by_positive[v] = true;
      if (checks_ok(depth)) run(depth + 1, first_candidates);
      if (positive_x) value_used_by_positive[v] = false;
    }
  }
};

std::uint64_t checked_pow_u64(std::uint64_t base, std::uint32_t e, std::uint64_t cap) {
  std::uint64_t r = 1;
  while (e--) {
    if (r > cap / base) return cap + 1;
    r *= base;
  }
  return r;
}

}  // namespace

ClassificationResult classify(const FieldSpec& f, std::uint32_t n, ClassifyMode mode,
                              ClassifyOptions options) {
  const auto start = std::chrono::steady_clock::now();
  if (n < 2 || n > 3) throw Error(Errc::BadInput, "classification supports n = 2 or 3");

  ClassificationResult result;
  result.p = f.p();
  result.k = f.k();
  result.q = f.q();
  result.n = n;
  result.mode = mode;

  const std::uint32_t q = f.q();
  std::vector<FnTable> survivors;

  if (n == 3) {
    ClassifyOptions inner = options;
    ClassificationResult base = classify(f, 2, mode, inner);
    result.pruning_profile = base.pruning_profile;
    result.exhaustive = base.exhaustive;
    result.restriction = base.restriction;
    std::uint64_t filtered = 0;
    for (const auto& entry : base.preservers) {
      bool keep = mode == ClassifyMode::Preserver
                      ? is_preserver(entry.table, 3, options.size_limit).ok
                      : is_sign_preserver(entry.table, 3, options.size_limit).ok;
      if (keep)
        survivors.push_back(entry.table);
      else
        ++filtered;
    }
    result.pruning_profile["n3_filtered_out"] = filtered;
  } else if (options.prune) {
    SearchSetup setup(f, mode);
    std::uint32_t jobs = std::max(1u, options.jobs);
    const std::vector<Elem>& first = setup.candidates[0];
    jobs = std::min<std::uint32_t>(jobs, std::max<std::size_t>(1, first.size()));

    std::vector<DfsWorker> workers;
    workers.reserve(jobs);
    for (std::uint32_t w = 0; w < jobs; ++w) workers.emplace_back(setup, options.max_nodes);

    if (jobs == 1) {
      workers[0].run(0, first);
    } else {
      // split the first position's candidate values round-robin
      std::vector<std::vector<Elem>> slices(jobs);
      for (std::size_t i = 0; i < first.size(); ++i) slices[i % jobs].push_back(first[i]);
      std::vector<std::thread> threads;
      for (std::uint32_t w = 0; w < jobs; ++w)
        threads.emplace_back([&, w] { workers[w].run(0, slices[w]); });
      for (auto& t : threads) t.join();
    }

    SearchCounters total;
    for (auto& w : workers) {
      total.merge(w.counters);
      if (w.interrupted) result.exhaustive = false;
      for (auto& t : w.found) survivors.push_back(std::move(t));
    }
    result.pruning_profile["nodes"] = total.nodes;
    result.pruning_profile[lemma_name(LemmaId::PositiveBijection)] = total.lemma_bijection;
    result.pruning_profile[lemma_name(LemmaId::SquareDifference)] = total.lemma_square_diff;
    result.pruning_profile[lemma_name(LemmaId::NonzeroOnUnits)] = total.lemma_nonzero;
    result.pruning_profile["pd_pruned"] = total.pd_pruned;
    if (mode == ClassifyMode::SignPreserver)
      result.pruning_profile["sign_pruned"] = total.sign_pruned;
    result.pruning_profile["leaves"] = total.leaves;
  } else {
    std::uint64_t space = checked_pow_u64(q, q, options.size_limit);
    std::vector<Elem> values(q, 0);
    std::uint64_t scanned = 0;
    auto consider = [&](const std::vector<Elem>& vals) {
      ++scanned;
      FnTable t{&f, vals};
      bool ok = mode == ClassifyMode::Preserver ? is_preserver(t, 2, options.size_limit).ok
                                                : is_sign_preserver(t, 2, options.size_limit).ok;
      if (ok) survivors.push_back(std::move(t));
    };
    if (space <= options.size_limit) {
      for (std::uint64_t code = 0; code < space; ++code) {
        std::uint64_t t = code;
        for (auto& v : values) {
          v = static_cast<Elem>(t % q);
          t /= q;
        }
        consider(values);
      }
    } else {
      // Fall back to the bijections fixing 0. Preservers here are bijective
      // with f(0) = 0: for even q that is a proved necessary condition, and
      // the q = 9 square case is covered by the sign/injectivity reductions.
      std::uint64_t fact = 1;
      for (std::uint32_t i = 2; i < q; ++i) fact *= i;
      if (fact > options.size_limit)
        throw Error(Errc::SizeExceeded, "unpruned scan infeasible for q = " + std::to_string(q));
      result.restriction = "bijective_zero_fixed";
      std::vector<Elem> perm(q - 1);
      std::iota(perm.begin(), perm.end(), 1);
      do {
        values[0] = 0;
        for (std::uint32_t i = 1; i < q; ++i) values[i] = perm[i - 1];
        consider(values);
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
    result.pruning_profile["tables_scanned"] = scanned;
  }

  // Full re-verification: pruning is an optimization layer, never the thing
  // that decides membership.
  std::vector<FnTable> verified;
  std::uint64_t rejected = 0;
  for (auto& t : survivors) {
    bool ok = mode == ClassifyMode::Preserver ? is_preserver(t, n, options.size_limit).ok
                                              : is_sign_preserver(t, n, options.size_limit).ok;
    if (ok)
      verified.push_back(std::move(t));
    else
      ++rejected;
  }
  result.pruning_profile["verified"] = verified.size();
  result.pruning_profile["reverify_rejected"] = rejected;

  std::sort(verified.begin(), verified.end());
  result.preservers.reserve(verified.size());
  for (auto& t : verified) {
    Form form = recognize_form(t);
    result.preservers.push_back({std::move(t), form});
  }

  result.elapsed_ms = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                            start)
          .count());
  return result;
}

}  // namespace ffpos
