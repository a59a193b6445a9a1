#include <doctest.h>

#include "generators.hpp"
#include "seqsavage/preferences.hpp"
#include "seqsavage/representation.hpp"

using namespace seqsavage;

namespace {

ActionLibrary one_prop() {
  PropSet props({"p"});
  return ActionLibrary(props, {parse_formula("p", props),
                               parse_formula("~p", props),
                               parse_formula("true", props)});
}

// Two pairs with balanced per-atom canonical-map multisets:
//   {A, B} vs {C, D} where A = do(p), B = do(~p),
//   C = if p then do(p) else do(~p), D = if p then do(~p) else do(p).
// Any order with A >= C and B > D violates cancellation at n = 2.
std::vector<Action> balanced_quad(const ActionLibrary& lib) {
  return {parse_action("do(p)", lib), parse_action("do(~p)", lib),
          parse_action("if p then do(p) else do(~p)", lib),
          parse_action("if p then do(~p) else do(p)", lib)};
}

}  // namespace

TEST_CASE("tiers define the relation") {
  ActionLibrary lib = one_prop();
  std::vector<Action> pool = {parse_action("do(p)", lib),
                              parse_action("do(~p)", lib),
                              parse_action("noop", lib)};
  PreferenceOrder po = PreferenceOrder::from_tiers(pool, {{0, 2}, {1}});
  CHECK(relation(po, pool[0], pool[2]) == Relation::Indiff);
  CHECK(relation(po, pool[0], pool[1]) == Relation::Succ);
  CHECK(relation(po, pool[1], pool[2]) == Relation::Prec);
  CHECK(po.weakly_prefers(0, 0));  // reflexivity
  CHECK_THROWS(relation(po, pool[0], parse_action("do(true)", lib)));
  CHECK_THROWS(PreferenceOrder::from_tiers(pool, {{0}, {1}}));
  CHECK_THROWS(PreferenceOrder::from_tiers(pool, {{0, 1, 2, 3}}));
}

TEST_CASE("raw pairs importer validates completeness and transitivity") {
  ActionLibrary lib = one_prop();
  std::vector<Action> pool = {parse_action("do(p)", lib),
                              parse_action("do(~p)", lib),
                              parse_action("noop", lib)};
  // Complete transitive data: 0 > 1 ~ 2.
  PreferenceOrder po = PreferenceOrder::from_pairs(
      pool, {{0, 1}, {0, 2}, {1, 2}, {2, 1}});
  CHECK(po.tier_of(0) == 0);
  CHECK(po.tier_of(1) == 1);
  CHECK(po.tier_of(2) == 1);

  // Missing any relation between 1 and 2: incomplete.
  CHECK_THROWS(PreferenceOrder::from_pairs(pool, {{0, 1}, {0, 2}}));

  // A strict cycle is intransitive and must be rejected.
  CHECK_THROWS(PreferenceOrder::from_pairs(pool, {{0, 1}, {1, 2}, {2, 0}}));
}

TEST_CASE("well-definedness of the induced order") {
  PropSet props({"p", "q"});
  ActionLibrary lib(props, {parse_formula("p", props),
                            parse_formula("q", props)});
  std::vector<Action> pool = {
      parse_action("do(p)", lib),
      parse_action("do(p & (q | ~q))", lib),  // same canonical map
      parse_action("do(q)", lib)};

  PreferenceOrder bad = PreferenceOrder::from_tiers(pool, {{0}, {1}, {2}});
  auto counterexample = induced_order_welldefined(bad, lib);
  REQUIRE(counterexample);
  CHECK(counterexample->first == 0);
  CHECK(counterexample->second == 1);

  PreferenceOrder good = PreferenceOrder::from_tiers(pool, {{0, 1}, {2}});
  CHECK(!induced_order_welldefined(good, lib));
}

TEST_CASE("size-1 violations are found") {
  PropSet props({"p", "q"});
  ActionLibrary lib(props, {parse_formula("p", props)});
  std::vector<Action> pool = {parse_action("do(p)", lib),
                              parse_action("do(p & (q | ~q))", lib)};
  PreferenceOrder po = PreferenceOrder::from_tiers(pool, {{0}, {1}});
  auto witness = check_cancellation(po, lib, 4);
  REQUIRE(witness);
  CHECK(witness->n() == 1);
  CHECK(revalidate(*witness, po, lib));
}

TEST_CASE("balanced multisets with unbalanced strictness violate at n=2") {
  ActionLibrary lib = one_prop();
  std::vector<Action> pool = balanced_quad(lib);
  PreferenceOrder po = PreferenceOrder::from_tiers(pool, {{0, 1}, {2, 3}});

  auto witness = check_cancellation(po, lib, 4);
  REQUIRE(witness);
  CHECK(witness->n() >= 2);
  CHECK(revalidate(*witness, po, lib));

  auto certified = certify_cancellation(po, lib, 1);
  CHECK(!certified.ok());
  REQUIRE(certified.witness);
  CHECK(revalidate(*certified.witness, po, lib));
}

TEST_CASE("orders induced by a utility satisfy cancellation") {
  testgen::Rng rng(1001);
  ActionLibrary lib = one_prop();
  for (int round = 0; round < 20; ++round) {
    // Score entries randomly, rank actions by per-atom sums.
    std::vector<Action> pool;
    while (pool.size() < 8) {
      Action a = testgen::random_action(rng, lib, 2);
      bool dup = false;
      for (const auto& b : pool) dup = dup || a == b;
      if (!dup) pool.push_back(a);
    }
    std::map<StateDependentUtility::Key, Rational> score;
    std::vector<Rational> sums;
    for (const auto& a : pool) {
      CanonicalMap m = canonical_map(a, lib);
      Rational sum = 0;
      for (std::size_t atom = 1; atom <= 2; ++atom) {
        auto key = StateDependentUtility::Key{atom, m.at(atom)};
        auto it = score.find(key);
        if (it == score.end())
          it = score.emplace(key, Rational(static_cast<int>(
                                      testgen::pick(rng, 7)))).first;
        sum += it->second;
      }
      sums.push_back(sum);
    }
    // Higher sum = more preferred = lower tier.
    std::vector<Rational> sorted = sums;
    std::sort(sorted.rbegin(), sorted.rend());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<std::size_t> tiers;
    for (const auto& s : sums)
      tiers.push_back(static_cast<std::size_t>(
          std::find(sorted.begin(), sorted.end(), s) - sorted.begin()));
    PreferenceOrder po(pool, tiers);

    CHECK(!check_cancellation(po, lib, 4));
    CHECK(certify_cancellation(po, lib, 2).ok());
  }
}

TEST_CASE("checkers agree and witnesses revalidate on random pools") {
  testgen::Rng rng(1002);
  ActionLibrary lib = one_prop();
  for (int round = 0; round < 30; ++round) {
    PreferenceOrder po = testgen::random_order(rng, lib, 8, 2, 4);
    auto witness = check_cancellation(po, lib, 4);
    auto certified = certify_cancellation(po, lib, 2);
    if (certified.ok()) {
      CHECK(!witness);
    } else {
      REQUIRE(certified.witness);
      CHECK(revalidate(*certified.witness, po, lib));
      // The exhaustive route must confirm any witness it can reach.
      if (certified.witness->n() <= 4) CHECK(witness);
    }
    if (witness) {
      CHECK(revalidate(*witness, po, lib));
      CHECK(!certified.ok());
    }
  }
}

TEST_CASE("search budget failures report the n reached") {
  ActionLibrary lib = one_prop();
  std::vector<Action> pool = balanced_quad(lib);
  PreferenceOrder po = PreferenceOrder::from_tiers(pool, {{0, 1}, {2, 3}});
  CHECK_THROWS_AS(check_cancellation(po, lib, 4, BigInt(1)), BudgetError);
}
