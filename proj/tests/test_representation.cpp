#include <doctest.h>

#include "generators.hpp"
#include "seqsavage/representation.hpp"

using namespace seqsavage;

namespace {

ActionLibrary one_prop_full() {
  PropSet props({"p"});
  return ActionLibrary(props, {parse_formula("p", props),
                               parse_formula("~p", props),
                               parse_formula("true", props)});
}

ActionLibrary one_prop_single() {
  PropSet props({"p"});
  return ActionLibrary(props, {parse_formula("true", props)});
}

// Tiers induced by per-atom sums of a scored table (higher sum preferred).
PreferenceOrder order_from_utility(const std::vector<Action>& pool,
                                   const StateDependentUtility& v,
                                   const ActionLibrary& lib) {
  std::vector<Rational> sums;
  for (const auto& a : pool) sums.push_back(v.action_sum(canonical_map(a, lib)));
  std::vector<Rational> sorted = sums;
  std::sort(sorted.rbegin(), sorted.rend());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<std::size_t> tiers;
  for (const auto& s : sums)
    tiers.push_back(static_cast<std::size_t>(
        std::find(sorted.begin(), sorted.end(), s) - sorted.begin()));
  return PreferenceOrder(pool, tiers);
}

StateDependentUtility random_utility(testgen::Rng& rng,
                                     const ActionLibrary& lib, int k,
                                     const std::vector<Action>& pool) {
  StateDependentUtility v;
  v.k = k;
  for (const auto& a : pool) {
    CanonicalMap m = canonical_map(a, lib);
    for (std::size_t atom = 1; atom <= lib.props().num_atoms(); ++atom) {
      StateDependentUtility::Key key{atom, m.at(atom)};
      if (!v.table.count(key)) {
        v.table.emplace(key, Rational(static_cast<int>(testgen::pick(rng, 9)),
                                      1 + static_cast<int>(testgen::pick(rng, 3))));
      }
    }
  }
  return v;
}

std::vector<Action> random_pool(testgen::Rng& rng, const ActionLibrary& lib,
                                std::size_t size, int max_depth) {
  std::vector<Action> pool;
  while (pool.size() < size) {
    Action a = testgen::random_action(rng, lib, max_depth);
    bool dup = false;
    for (const auto& b : pool) dup = dup || a == b;
    if (!dup) pool.push_back(a);
  }
  return pool;
}

}  // namespace

TEST_CASE("normalization rescales into the unit interval") {
  StateDependentUtility v;
  v.k = 1;
  AtomSet all(2, {1, 2});
  v.table[{1, CanonicalEntry::noop()}] = Rational(-2);
  v.table[{1, CanonicalEntry::do_atoms(all)}] = Rational(6);
  v.table[{2, CanonicalEntry::noop()}] = Rational(2);
  StateDependentUtility n = v.normalized();
  CHECK(n.at(1, CanonicalEntry::noop()) == 0);
  CHECK(n.at(1, CanonicalEntry::do_atoms(all)) == 1);
  CHECK(n.at(2, CanonicalEntry::noop()) == Rational(1, 2));

  // Constant tables collapse to zero.
  StateDependentUtility c;
  c.table[{1, CanonicalEntry::noop()}] = Rational(5);
  CHECK(c.normalized().at(1, CanonicalEntry::noop()) == 0);
}

TEST_CASE("singleton pool solves trivially") {
  ActionLibrary lib = one_prop_full();
  PreferenceOrder po({Action::noop()}, {std::size_t{0}});
  auto solved = solve_state_dependent(po, lib, 1);
  REQUIRE(solved.ok());
  CHECK(solved.utility->normalized().table.empty());
}

TEST_CASE("matrix structure for the smallest system") {
  ActionLibrary lib = one_prop_single();  // |F~| = 1, N = 2
  MatrixSystem ms = build_matrix(1, 1, lib);
  CHECK(ms.rows.size() == 2);        // noop and do(true)
  CHECK(ms.olt_indices.size() == 2); // two depth-1 olts rooted at atom 1
  CHECK(ms.cols.size() == 4);

  // Each row hits exactly one column per olt.
  Mat dense = ms.dense();
  for (const auto& row : dense) {
    Rational sum = 0;
    for (const auto& x : row) sum += x;
    CHECK(sum == Rational(static_cast<int>(ms.olt_indices.size())));
  }
  // The noop row sits exactly on identity columns.
  for (std::size_t c = 0; c < ms.cols.size(); ++c) {
    bool hit = dense[0][c] == 1;
    CHECK(hit == ms.cols[c].second.is_identity());
  }
}

TEST_CASE("independence holds on the spec instances") {
  // N=2 with one, two, three effect classes at depths 1 and 2.
  {
    ActionLibrary lib = one_prop_full();
    for (int k = 1; k <= 2; ++k) {
      for (std::size_t a = 1; a <= 2; ++a) {
        auto res = verify_independence(build_matrix(a, k, lib));
        CHECK(res.ok);
        CHECK(res.rank == build_matrix(a, k, lib).rows.size());
      }
    }
  }
  // N=2, |F~|=1, depth 3.
  {
    ActionLibrary lib = one_prop_single();
    auto res = verify_independence(build_matrix(1, 3, lib));
    CHECK(res.ok);
    CHECK(res.rank == 26);
  }
}

TEST_CASE("duplicated rows are reported as dependent") {
  ActionLibrary lib = one_prop_single();
  MatrixSystem ms = build_matrix(1, 1, lib);
  ms.rows.push_back(ms.rows.back());
  ms.hit.push_back(ms.hit.back());
  auto res = verify_independence(ms);
  CHECK(!res.ok);
  REQUIRE(res.dependency);
  // The dependency combines the duplicate rows.
  Mat dense = ms.dense();
  for (std::size_t c = 0; c < ms.cols.size(); ++c) {
    Rational acc = 0;
    for (std::size_t r = 0; r < dense.size(); ++r)
      acc += (*res.dependency)[r] * dense[r][c];
    CHECK(acc == 0);
  }
}

TEST_CASE("witness trees isolate their entry") {
  ActionLibrary lib = one_prop_full();
  for (int k = 1; k <= 2; ++k) {
    auto entries = enumerate_CA_minus(k, lib, BigInt(100000));
    for (std::size_t a = 1; a <= 2; ++a) {
      for (const auto& entry : entries) {
        if (entry.is_noop()) continue;
        Olt tree = witness_tree(entry, k, lib, a);
        CHECK(tree.root_atom() == a);
        // The first hop goes through the child labeled by the atom set's
        // representative (its first member); sequenced entries continue
        // deeper from there.
        ProgressFunction g = progress_from_entry(tree, 0, entry);
        NodeId landed = g.apply(0);
        CHECK(tree.first_step_to(landed) ==
              tree.child(0, entry.atoms().indices().front()));
        if (entry.kind() == CanonicalEntry::Kind::DoA)
          CHECK(tree.node_label(landed) == entry.atoms().indices().front());
        // Any other entry colliding on this tree is strictly below.
        for (const auto& other : entries) {
          if (other == entry) continue;
          if (progress_from_entry(tree, 0, other) == g)
            CHECK(strictly_above(entry, other));
        }
      }
    }
  }
}

TEST_CASE("hand-checked two-row solve") {
  ActionLibrary lib = one_prop_single();
  StateDependentUtility v;
  v.k = 1;
  AtomSet all(2, {1, 2});
  v.table[{1, CanonicalEntry::noop()}] = Rational(1, 2);
  v.table[{1, CanonicalEntry::do_atoms(all)}] = Rational(3);
  UtilityTable u = solve_utilities(v, 1, lib);
  // |T^1| = 4; pivoting picks the first olt's columns.
  // Rows: noop -> 4 * 1/2 = 2 split across identity columns; do -> 12.
  Rational sum_id = 0;
  Rational sum_move = 0;
  for (const auto& [key, value] : u) {
    if (key.second.is_identity())
      sum_id += value;
    else
      sum_move += value;
  }
  CHECK(sum_id == 2);
  CHECK(sum_move == 12);

  // The zero table solves to the empty (all-zero) assignment.
  StateDependentUtility zero;
  zero.k = 1;
  CHECK(solve_utilities(zero, 1, lib).empty());
}

TEST_CASE("full pipeline round trip at depths 1 and 2") {
  testgen::Rng rng(2024);
  ActionLibrary lib = one_prop_full();
  for (int k = 1; k <= 2; ++k) {
    for (int round = 0; round < 5; ++round) {
      std::vector<Action> pool = random_pool(rng, lib, 10, k);
      StateDependentUtility seed = random_utility(rng, lib, k, pool);
      PreferenceOrder po = order_from_utility(pool, seed, lib);

      auto solved = solve_state_dependent(po, lib, k);
      REQUIRE(solved.ok());
      StateDependentUtility v = solved.utility->normalized();
      v.k = k;

      Representation rep = assemble(v, lib);
      CHECK(!verify_representation(rep, po, lib));
      CHECK(check_utility_identity(rep, v, lib));

      // The closing identity: expected utility equals the per-atom sum.
      for (const auto& action : pool) {
        CHECK(expected_utility(rep, action, lib) ==
              v.action_sum(canonical_map(action, lib)));
      }

      // Strict margins are at least one before normalization.
      Representation raw_rep = assemble(*solved.utility, lib);
      for (std::size_t i = 0; i < pool.size(); ++i) {
        for (std::size_t j = 0; j < pool.size(); ++j) {
          if (po.strictly_prefers(i, j)) {
            CHECK(expected_utility(raw_rep, pool[i], lib) >=
                  expected_utility(raw_rep, pool[j], lib) + 1);
          }
        }
      }
    }
  }
}

TEST_CASE("verification notices a corrupted utility") {
  testgen::Rng rng(2025);
  ActionLibrary lib = one_prop_full();
  std::vector<Action> pool = random_pool(rng, lib, 6, 1);
  StateDependentUtility seed = random_utility(rng, lib, 1, pool);
  PreferenceOrder po = order_from_utility(pool, seed, lib);
  auto solved = solve_state_dependent(po, lib, 1);
  REQUIRE(solved.ok());
  Representation rep = assemble(*solved.utility, lib);
  REQUIRE(!verify_representation(rep, po, lib));

  // Break one utility value; some pair must now be misordered, since the
  // pool contains actions with distinct and with equal canonical maps.
  REQUIRE(!rep.u.empty());
  rep.u.begin()->second += 1;
  bool violation_or_identity_failure =
      verify_representation(rep, po, lib).has_value() ||
      !check_utility_identity(rep, *solved.utility, lib);
  CHECK(violation_or_identity_failure);

  // Empty pools verify vacuously.
  PreferenceOrder empty_po(std::vector<Action>{}, std::vector<std::size_t>{});
  CHECK(!verify_representation(rep, empty_po, lib));
}

TEST_CASE("representation rejects too-deep queries") {
  ActionLibrary lib = one_prop_full();
  StateDependentUtility v;
  v.k = 1;
  Representation rep = assemble(v, lib);
  CHECK_THROWS(expected_utility(
      rep, parse_action("do(p); do(~p)", lib), lib));
}

TEST_CASE("stitching keeps compatible families unchanged") {
  testgen::Rng rng(2026);
  ActionLibrary lib = one_prop_full();
  std::vector<Action> pool = random_pool(rng, lib, 8, 2);
  StateDependentUtility seed = random_utility(rng, lib, 2, pool);
  PreferenceOrder po = order_from_utility(pool, seed, lib);

  auto deep = solve_state_dependent(po, lib, 2);
  REQUIRE(deep.ok());
  // Restrict the depth-2 table to depth-1 entries.
  StateDependentUtility shallow;
  shallow.k = 1;
  for (const auto& [key, value] : deep.utility->table) {
    if (key.second.depth() <= 1) shallow.table.emplace(key, value);
  }
  auto result = stitch_v({shallow, *deep.utility}, po, lib);
  REQUIRE(result.ok);
  CHECK(result.family[0].table == shallow.table);
  CHECK(result.family[1].table == deep.utility->table);
}

TEST_CASE("stitching reconciles independently solved depths") {
  testgen::Rng rng(2027);
  ActionLibrary lib = one_prop_full();
  for (int round = 0; round < 5; ++round) {
    std::vector<Action> pool = random_pool(rng, lib, 10, 2);
    StateDependentUtility seed = random_utility(rng, lib, 2, pool);
    PreferenceOrder po = order_from_utility(pool, seed, lib);

    // Solve each depth independently; the tables need not agree.
    std::vector<std::size_t> keep;
    PreferenceOrder po1 = [&] {
      std::vector<Action> p1;
      std::vector<std::size_t> t1;
      for (std::size_t i = 0; i < pool.size(); ++i) {
        if (depth(pool[i]) <= 1) {
          p1.push_back(pool[i]);
          t1.push_back(po.tier_of(i));
        }
      }
      return PreferenceOrder(p1, t1);
    }();
    auto v1 = solve_state_dependent(po1, lib, 1);
    auto v2 = solve_state_dependent(po, lib, 2);
    REQUIRE(v1.ok());
    REQUIRE(v2.ok());

    auto result = stitch_v({*v1.utility, *v2.utility}, po, lib);
    REQUIRE(result.ok);
    REQUIRE(result.family.size() == 2);

    // v-compatibility: pointwise agreement on shallow entries.
    for (const auto& [key, value] : result.family[0].table) {
      CHECK(result.family[1].at(key.first, key.second) == value);
    }
    for (const auto& [key, value] : result.family[1].table) {
      if (key.second.depth() <= 1)
        CHECK(result.family[0].at(key.first, key.second) == value);
    }

    // Each depth still orders its pool correctly (the defining relation).
    for (int k = 1; k <= 2; ++k) {
      const StateDependentUtility& vk = result.family[k - 1];
      const PreferenceOrder& pk = k == 1 ? po1 : po;
      for (std::size_t i = 0; i < pk.size(); ++i) {
        for (std::size_t j = 0; j < pk.size(); ++j) {
          bool preferred = pk.weakly_prefers(i, j);
          bool modeled = vk.action_sum(canonical_map(pk.pool()[i], lib)) >=
                         vk.action_sum(canonical_map(pk.pool()[j], lib));
          CHECK(preferred == modeled);
        }
      }
    }
  }
}

TEST_CASE("layered utilities inherit across depths") {
  testgen::Rng rng(2028);
  ActionLibrary lib = one_prop_full();
  std::vector<Action> pool = random_pool(rng, lib, 8, 2);
  StateDependentUtility seed = random_utility(rng, lib, 2, pool);
  PreferenceOrder po = order_from_utility(pool, seed, lib);

  auto deep = solve_state_dependent(po, lib, 2);
  REQUIRE(deep.ok());
  StateDependentUtility v2 = *deep.utility;
  v2.k = 2;
  StateDependentUtility v1;
  v1.k = 1;
  for (const auto& [key, value] : v2.table) {
    if (key.second.depth() <= 1) v1.table.emplace(key, value);
  }

  UtilityTable u1 = solve_utilities(v1, 1, lib);
  {
    UtilityTable more = solve_utilities(v1, 2, lib);
    u1.insert(more.begin(), more.end());
  }
  UtilityTable u2 = solve_utilities(v2, 1, lib);
  {
    UtilityTable more = solve_utilities(v2, 2, lib);
    u2.insert(more.begin(), more.end());
  }

  auto ws = stitch_u({u1, u2}, lib);
  REQUIRE(ws.size() == 2);
  CHECK(ws[0] == u1);

  auto olts1 = enumerate_olts(1, lib.props(), BigInt(100000));
  auto olts2 = enumerate_olts(2, lib.props(), BigInt(100000));

  // Defining clause: every 1-bounded depth-2 state carries the value of its
  // projection, other states keep their depth-2 value.
  auto value_in = [](const UtilityTable& t,
                     const std::pair<std::size_t, ProgressFunction>& key) {
    auto it = t.find(key);
    return it == t.end() ? Rational(0) : it->second;
  };
  std::map<Olt, std::size_t> index1;
  for (std::size_t i = 0; i < olts1.size(); ++i) index1.emplace(olts1[i], i);
  for (std::size_t i = 0; i < olts2.size(); ++i) {
    const Olt& tree = olts2[i];
    std::set<ProgressFunction> progresses;
    for (const auto& [key, value] : ws[1]) {
      if (key.first == i) progresses.insert(key.second);
    }
    for (const auto& [key, value] : u1) progresses.insert(key.second);
    progresses.insert(ProgressFunction::identity());
    for (const auto& g : progresses) {
      if (!g.is_k_bounded(tree, 1)) continue;
      std::size_t projected = index1.at(tree.project(1));
      CHECK(value_in(ws[1], {i, g}) == value_in(ws[0], {projected, g}));
    }
  }

  // The expected-utility identity survives stitching at both depths.
  Representation rep1{1, olts1, ws[0]};
  Representation rep2{2, olts2, ws[1]};
  for (const auto& action : pool) {
    if (depth(action) <= 1) {
      CHECK(expected_utility(rep1, action, lib) ==
            v1.action_sum(canonical_map(action, lib)));
    }
    CHECK(expected_utility(rep2, action, lib) ==
          v2.action_sum(canonical_map(action, lib)));
  }
}

TEST_CASE("probability compatibility across depths") {
  PropSet props({"p"});
  CHECK(!check_pr_compatibility(3, props));

  // Negative control: a non-uniform assignment must be flagged.
  auto lopsided = [](int k, std::size_t idx) {
    if (k == 1) return idx == 0 ? Rational(1, 2) : Rational(1, 6);
    return Rational(1, 16);
  };
  CHECK(check_pr_compatibility(2, props, BigInt(100000), lopsided));
}
