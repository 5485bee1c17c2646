#include "ffpos/preserver.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "doctest.h"

using namespace ffpos;

namespace {

std::set<std::vector<Elem>> tables_of(const ClassificationResult& r) {
  std::set<std::vector<Elem>> out;
  for (const auto& e : r.preservers) out.insert(e.table.values);
  return out;
}

std::set<std::vector<Elem>> positive_automorphism_multiples(const FieldSpec& f) {
  std::set<std::vector<Elem>> out;
  for (Elem c : f.positives())
    for (std::uint32_t ell = 0; ell < f.k(); ++ell)
      out.insert(FnTable::automorphism_multiple(f, c, ell).values);
  return out;
}

std::set<std::vector<Elem>> nonzero_automorphism_multiples(const FieldSpec& f) {
  std::set<std::vector<Elem>> out;
  for (Elem c = 1; c < f.q(); ++c)
    for (std::uint32_t ell = 0; ell < f.k(); ++ell)
      out.insert(FnTable::automorphism_multiple(f, c, ell).values);
  return out;
}

std::set<std::vector<Elem>> bijective_monomials(const FieldSpec& f) {
  std::set<std::vector<Elem>> out;
  for (Elem c = 1; c < f.q(); ++c)
    for (std::uint32_t e = 1; e <= f.q() - 1; ++e)
      if (std::gcd(e, f.q() - 1) == 1u) out.insert(FnTable::monomial(f, c, e).values);
  return out;
}

}  // namespace

TEST_CASE("interpolation") {
  auto f7 = field_new(7, 1);
  CHECK(interpolate(FnTable::identity(f7)) == std::vector<Elem>{0, 1});

  FnTable ind0{&f7, std::vector<Elem>(7, 0)};
  ind0.values[0] = 1;
  CHECK(interpolate(ind0) == std::vector<Elem>{1, 0, 0, 0, 0, 0, 6});  // 1 - x^6

  auto f9 = field_new(3, 2);
  FnTable frob{&f9, std::vector<Elem>(9)};
  for (Elem x = 0; x < 9; ++x) frob.values[x] = f9.frobenius(1, x);
  CHECK(interpolate(frob) == std::vector<Elem>{0, 0, 0, 1});  // x^3

  // interpolation round-trips on arbitrary tables
  for (std::uint32_t q : {5u, 8u, 9u}) {
    auto [p, k] = factor_prime_power(q);
    auto f = field_new(p, k);
    std::uint64_t state = 7;
    for (int trial = 0; trial < 25; ++trial) {
      FnTable t{&f, std::vector<Elem>(q)};
      for (auto& v : t.values) {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        v = static_cast<Elem>((state >> 33) % q);
      }
      auto coeffs = interpolate(t);
      CHECK(coeffs.size() <= q);
      for (Elem x = 0; x < q; ++x) {
        Elem acc = 0;
        for (std::size_t i = coeffs.size(); i-- > 0;) acc = f.add(f.mul(acc, x), coeffs[i]);
        CHECK(acc == t.values[x]);
      }
    }
  }
}

TEST_CASE("preserver predicate with witnesses") {
  auto f7 = field_new(7, 1);
  CHECK(is_preserver(FnTable::monomial(f7, 2, 1), 2).ok);

  auto bad = is_preserver(FnTable::monomial(f7, 3, 1), 2);
  CHECK_FALSE(bad.ok);
  REQUIRE(bad.witness.has_value());
  CHECK(bad.witness->upper() == std::vector<Elem>{1, 0, 1});  // lex-first PD matrix

  auto f4 = field_new(2, 2);
  CHECK(is_preserver(FnTable::monomial(f4, 1, 2), 3).ok);

  // n = 1 is the positivity-of-values condition
  CHECK(is_preserver(FnTable::monomial(f7, 2, 1), 1).ok);
  auto bad1 = is_preserver(FnTable::monomial(f7, 3, 1), 1);
  CHECK_FALSE(bad1.ok);
  CHECK(bad1.witness->upper() == std::vector<Elem>{1});
}

TEST_CASE("sign preserver predicate") {
  auto f5 = field_new(5, 1);
  CHECK(is_sign_preserver(FnTable::monomial(f5, 4, 1), 2).ok);

  auto f4 = field_new(2, 2);
  for (Elem c = 1; c < 4; ++c)
    for (std::uint32_t e : {1u, 2u}) CHECK(is_sign_preserver(FnTable::monomial(f4, c, e), 2).ok);

  auto f7 = field_new(7, 1);
  FnTable shift{&f7, std::vector<Elem>(7)};
  for (Elem x = 0; x < 7; ++x) shift.values[x] = f7.add(x, 1);
  CHECK_FALSE(is_sign_preserver(shift, 2).ok);
  CHECK_FALSE(is_preserver(shift, 2).ok);
}

TEST_CASE("necessary condition filters") {
  auto f7 = field_new(7, 1);
  auto lemmas7 = lemmas_for(f7);
  CHECK(lemmas7 == std::vector<LemmaId>{LemmaId::PositiveImage, LemmaId::PositiveBijection});

  PartialFnTable t1(f7);
  t1.values[1] = 3;
  auto r1 = necessary_filter(t1, lemmas7);
  CHECK_FALSE(r1.consistent);
  CHECK(r1.violated == LemmaId::PositiveImage);

  PartialFnTable t2(f7);
  t2.values[0] = 1;
  auto r2 = necessary_filter(t2, lemmas7);
  CHECK_FALSE(r2.consistent);
  CHECK(r2.violated == LemmaId::PositiveBijection);

  auto f5 = field_new(5, 1);
  CHECK(lemmas_for(f5) == std::vector<LemmaId>{LemmaId::PositiveImage,
                                               LemmaId::SquareDifference,
                                               LemmaId::NonzeroOnUnits});
  PartialFnTable t3(f5);
  t3.values[0] = 0;
  t3.values[1] = 0;
  std::vector<LemmaId> only_nonzero = {LemmaId::NonzeroOnUnits};
  auto r3 = necessary_filter(t3, only_nonzero);
  CHECK_FALSE(r3.consistent);
  CHECK(r3.violated == LemmaId::NonzeroOnUnits);

  // square-difference: f(4)-f(1) must stay a square when 4-1 = 3 is not...
  // over F_13, 4-1 = 3 is a square, 1 and 4 are squares
  auto f13 = field_new(13, 1);
  PartialFnTable t4(f13);
  t4.values[1] = 1;
  t4.values[4] = 3;  // 3-1 = 2, a non-square mod 13
  std::vector<LemmaId> only_sq = {LemmaId::SquareDifference};
  auto r4 = necessary_filter(t4, only_sq);
  CHECK_FALSE(r4.consistent);
  CHECK(r4.violated == LemmaId::SquareDifference);

  PartialFnTable ok(f7);
  ok.values[0] = 0;
  ok.values[1] = 2;
  CHECK(necessary_filter(ok, lemmas7).consistent);
}

TEST_CASE("classification reproduces the characterizations") {
  auto f7 = field_new(7, 1);
  auto r7 = classify(f7, 2, ClassifyMode::Preserver);
  CHECK(r7.exhaustive);
  CHECK(tables_of(r7) == positive_automorphism_multiples(f7));
  CHECK(r7.preservers.size() == 3);

  auto f4 = field_new(2, 2);
  auto r4 = classify(f4, 2, ClassifyMode::Preserver);
  CHECK(tables_of(r4) == bijective_monomials(f4));
  CHECK(r4.preservers.size() == 6);

  auto f9 = field_new(3, 2);
  auto r9 = classify(f9, 3, ClassifyMode::Preserver);
  CHECK(tables_of(r9) == positive_automorphism_multiples(f9));
  CHECK(r9.preservers.size() == 8);

  for (const auto& e : r9.preservers) CHECK(e.form.kind == FormKind::AutomorphismMultiple);
  for (const auto& e : r4.preservers) CHECK(e.form.kind != FormKind::Other);
}

TEST_CASE("open case evidence at q = 5") {
  auto f5 = field_new(5, 1);
  auto r = classify(f5, 2, ClassifyMode::Preserver, {.prune = false});
  CHECK(r.exhaustive);
  CHECK(r.pruning_profile.at("tables_scanned") == 3125);
  auto tables = tables_of(r);
  CHECK(tables.count(FnTable::identity(f5).values) == 1);
  CHECK(tables.count(FnTable::monomial(f5, 4, 1).values) == 1);
}

TEST_CASE("pruned and unpruned searches agree") {
  for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
    auto [p, k] = factor_prime_power(q);
    auto f = field_new(p, k);
    for (std::uint32_t n : {2u, 3u})
      CHECK(tables_of(classify(f, n, ClassifyMode::Preserver)) ==
            tables_of(classify(f, n, ClassifyMode::Preserver, {.prune = false})));
  }
  auto f7 = field_new(7, 1);
  CHECK(tables_of(classify(f7, 2, ClassifyMode::Preserver)) ==
        tables_of(classify(f7, 2, ClassifyMode::Preserver, {.prune = false})));
  for (std::uint32_t q : {3u, 4u, 5u}) {
    auto [p, k] = factor_prime_power(q);
    auto f = field_new(p, k);
    CHECK(tables_of(classify(f, 2, ClassifyMode::SignPreserver)) ==
          tables_of(classify(f, 2, ClassifyMode::SignPreserver, {.prune = false})));
  }
}

TEST_CASE("classification agrees across job counts and honors node budgets") {
  auto f9 = field_new(3, 2);
  auto seq = classify(f9, 2, ClassifyMode::Preserver, {.jobs = 1});
  auto par = classify(f9, 2, ClassifyMode::Preserver, {.jobs = 4});
  REQUIRE(seq.preservers.size() == par.preservers.size());
  for (std::size_t i = 0; i < seq.preservers.size(); ++i)
    CHECK(seq.preservers[i].table == par.preservers[i].table);
  CHECK(seq.pruning_profile.at("nodes") == par.pruning_profile.at("nodes"));

  auto cut = classify(f9, 2, ClassifyMode::Preserver, {.max_nodes = 10});
  CHECK_FALSE(cut.exhaustive);
}

TEST_CASE("soundness floor: positive automorphism multiples always appear") {
  for (std::uint32_t q : {3u, 4u, 5u, 7u, 8u, 9u}) {
    auto [p, k] = factor_prime_power(q);
    auto f = field_new(p, k);
    auto r = classify(f, 2, ClassifyMode::Preserver);
    auto tables = tables_of(r);
    for (const auto& want : positive_automorphism_multiples(f))
      CHECK(tables.count(want) == 1);
  }
}

TEST_CASE("odd-q theorem sets across dimensions") {
  for (std::uint32_t q : {3u, 7u, 11u}) {
    auto [p, k] = factor_prime_power(q);
    auto f = field_new(p, k);
    for (std::uint32_t n : {2u, 3u}) {
      auto r = classify(f, n, ClassifyMode::Preserver);
      CHECK(tables_of(r) == positive_automorphism_multiples(f));
      CHECK(r.preservers.size() == k * (q - 1) / 2);
      for (const auto& e : r.preservers) {
        CHECK(e.form.kind == FormKind::AutomorphismMultiple);
        CHECK(e.form.c_sign == Sign::Positive);
      }
    }
  }
  // the smallest even field: the only bijective monomial is the identity
  auto f2 = field_new(2, 1);
  auto r2 = classify(f2, 2, ClassifyMode::Preserver);
  CHECK(tables_of(r2) == bijective_monomials(f2));
  CHECK(r2.preservers.size() == 1);
}

TEST_CASE("classified n=3 preservers preserve the sign of all minors") {
  for (std::uint32_t q : {4u, 7u, 9u}) {
    auto [p, k] = factor_prime_power(q);
    auto f = field_new(p, k);
    auto r = classify(f, 3, ClassifyMode::Preserver);
    for (const auto& e : r.preservers) {
      const auto& t = e.table.values;
      for (std::uint32_t n = 1; n <= 3; ++n)
        scan_symmetric(f, n, [&](const SymMatrix& M) {
          Elem d = leading_minors(M).back();
          Elem d_img = leading_minors(apply_entrywise(t, M)).back();
          CHECK(f.eta(d_img) == f.eta(d));
          return true;
        });
    }
  }
}

TEST_CASE("sign preserver classification matches the two regimes") {
  for (std::uint32_t q : {3u, 4u, 5u, 7u, 8u, 9u}) {
    auto [p, k] = factor_prime_power(q);
    auto f = field_new(p, k);
    auto r = classify(f, 2, ClassifyMode::SignPreserver);
    if (q % 2 == 0)
      CHECK(tables_of(r) == bijective_monomials(f));
    else
      CHECK(tables_of(r) == positive_automorphism_multiples(f));
  }
  // in dimension 3 both parities collapse to automorphism multiples
  for (std::uint32_t q : {3u, 4u, 5u}) {
    auto [p, k] = factor_prime_power(q);
    auto f = field_new(p, k);
    auto r = classify(f, 3, ClassifyMode::SignPreserver);
    if (q % 2 == 0)
      CHECK(tables_of(r) == nonzero_automorphism_multiples(f));
    else
      CHECK(tables_of(r) == positive_automorphism_multiples(f));
  }
}

TEST_CASE("form recognition") {
  auto f9 = field_new(3, 2);
  auto form = recognize_form(FnTable::automorphism_multiple(f9, 2, 1));  // 2 = -1 is a square
  CHECK(form.kind == FormKind::AutomorphismMultiple);
  CHECK(form.c == 2);
  CHECK(form.exponent == 1);
  CHECK(form.c_sign == Sign::Positive);

  auto id = recognize_form(FnTable::identity(f9));
  CHECK(id.kind == FormKind::AutomorphismMultiple);
  CHECK(id.c == 1);
  CHECK(id.exponent == 0);

  auto f7 = field_new(7, 1);
  auto mono = recognize_form(FnTable::monomial(f7, 1, 5));
  CHECK(mono.kind == FormKind::BijectiveMonomial);
  CHECK(mono.c == 1);
  CHECK(mono.exponent == 5);

  // a non-square multiple of the Frobenius is reported as a monomial with a
  // negative leading sign, not as an automorphism multiple
  Elem g = f9.generator();
  CHECK(f9.eta(g) == Sign::Negative);
  auto neg = recognize_form(FnTable::monomial(f9, g, 3));
  CHECK(neg.kind == FormKind::BijectiveMonomial);
  CHECK(neg.c == g);
  CHECK(neg.exponent == 3);
  CHECK(neg.c_sign == Sign::Negative);

  FnTable constant{&f7, std::vector<Elem>(7, 2)};
  CHECK(recognize_form(constant).kind == FormKind::Other);
  FnTable zero_at_one{&f7, std::vector<Elem>(7, 0)};
  CHECK(recognize_form(zero_at_one).kind == FormKind::Other);
}

TEST_CASE("carlitz predicate and normalized solutions") {
  auto f9 = field_new(3, 2);
  CHECK(carlitz_predicate(FnTable::monomial(f9, 1, 3)));
  CHECK(carlitz_predicate(FnTable::identity(f9)));
  CHECK_FALSE(carlitz_predicate(FnTable::monomial(f9, 1, 5)));
  CHECK_THROWS_AS(carlitz_predicate(FnTable::identity(field_new(2, 2))), Error);

  for (std::uint32_t q : {3u, 5u, 7u, 9u, 13u}) {
    auto [p, k] = factor_prime_power(q);
    auto f = field_new(p, k);
    auto sols = carlitz_normalized_solutions(f);
    std::set<std::vector<Elem>> expected;
    for (std::uint32_t ell = 0; ell < k; ++ell)
      expected.insert(FnTable::automorphism_multiple(f, 1, ell).values);
    CHECK(std::set<std::vector<Elem>>{} != expected);
    std::set<std::vector<Elem>> got;
    for (const auto& s : sols) got.insert(s.values);
    CHECK(got == expected);
    // and every solution satisfies the full predicate
    for (const auto& s : sols) CHECK(carlitz_predicate(s));
  }
}

TEST_CASE("dimension-1 preserver counts") {
  CHECK(big_to_string(count_dim1_preservers(field_new(3, 1))) == "9");
  CHECK(big_to_string(count_dim1_preservers(field_new(2, 1))) == "2");
  CHECK(big_to_string(count_dim1_preservers(field_new(5, 1))) == "500");
  CHECK(big_to_string(count_dim1_preservers(field_new(2, 2))) == "108");
  CHECK(big_to_string(count_dim1_preservers(field_new(7, 1))) == "64827");
  CHECK(big_to_string(count_dim1_preservers(field_new(3, 2))) == "15116544");
  CHECK(big_to_string(count_dim1_preservers(field_new(2, 4))) == "7006302246093750000");
  CHECK(big_to_string(count_dim1_preservers(field_new(5, 2))) ==
        "13286025000000000000000000000000");
  CHECK(big_to_string(count_dim1_preservers(field_new(3, 3))) ==
        "33140287996423378305841540432607877");
}

TEST_CASE("monomial preservers over q = 3 (mod 4)") {
  auto f7 = field_new(7, 1);
  CHECK_FALSE(monomial_preserver_test(f7, 5));
  CHECK_FALSE(monomial_preserver_test(f7, 2));
  CHECK(monomial_preserver_test(f7, 1));

  auto f27 = field_new(3, 3);
  CHECK(monomial_preserver_test(f27, 3));
  CHECK(monomial_preserver_test(f27, 9));
  CHECK_FALSE(monomial_preserver_test(f27, 5));

  // both routes agree for every exponent; the power count is k
  for (auto [p, k] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{
           {7, 1}, {11, 1}, {3, 3}}) {
    auto f = field_new(p, k);
    std::uint32_t trues = 0;
    for (std::uint32_t e = 1; e <= f.q() - 1; ++e)
      if (monomial_preserver_test(f, e)) ++trues;
    CHECK(trues == k);
  }

  CHECK_THROWS_AS(monomial_preserver_test(field_new(5, 1), 1), Error);
  CHECK_THROWS_AS(monomial_preserver_test(f7, 0), Error);
  CHECK_THROWS_AS(monomial_preserver_test(f7, 7), Error);
}
