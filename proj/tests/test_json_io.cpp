#include <doctest.h>

#include "generators.hpp"
#include "seqsavage/json_io.hpp"

using namespace seqsavage;

namespace {

ActionLibrary library() {
  PropSet props({"p", "q"});
  return ActionLibrary(props, {parse_formula("p", props),
                               parse_formula("q", props),
                               parse_formula("p | q", props)});
}

}  // namespace

TEST_CASE("rational strings") {
  CHECK(to_fraction_string(Rational(3, 4)) == "3/4");
  CHECK(to_fraction_string(Rational(-6, 8)) == "-3/4");
  CHECK(to_fraction_string(Rational(0)) == "0/1");
  CHECK(rational_from_string("3/4") == Rational(3, 4));
  CHECK(rational_from_string("-7") == Rational(-7));
  CHECK_THROWS_AS(rational_from_string("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(rational_from_string("x"), std::invalid_argument);
}

TEST_CASE("formula JSON matches the documented shape") {
  ActionLibrary lib = library();
  Formula f = parse_formula("p & ~q", lib.props());
  Json j = formula_to_json(f);
  CHECK(j.dump() ==
        R"({"op":"and","args":[{"prop":"p"},{"op":"not","args":[{"prop":"q"}]}]})");
  CHECK(formula_from_json(j, lib.props()) == f);
}

TEST_CASE("round trips are structural and deterministic") {
  testgen::Rng rng(8080);
  ActionLibrary lib = library();
  for (int i = 0; i < 100; ++i) {
    Formula f = testgen::random_formula(rng, lib.props(), 3);
    CHECK(formula_from_json(formula_to_json(f), lib.props()) == f);

    Action a = testgen::random_action(rng, lib, 2);
    Json j = action_to_json(a);
    CHECK(action_from_json(j, lib.props()) == a);
    CHECK(j.dump() == action_to_json(a).dump());

    CanonicalMap m = canonical_map(a, lib);
    CHECK(canonical_map_from_json(canonical_map_to_json(m), lib.props()) == m);

    Olt tree = testgen::random_olt(rng, 2, lib.props());
    CHECK(olt_from_json(olt_to_json(tree)) == tree);

    ProgressFunction g = progress_of(a, tree, lib);
    CHECK(progress_from_json(progress_to_json(g, tree), tree) == g);
  }
}

TEST_CASE("selection model serialization") {
  testgen::Rng rng(8081);
  ActionLibrary lib = library();
  SelectionModel sm = testgen::random_selection_model(rng, lib, 5);
  Json j = model_to_json(sm);
  SelectionModel back = model_from_json(j, lib.props());
  CHECK(model_to_json(back).dump() == j.dump());
  for (const auto& s : sm.model().states()) {
    for (const auto& atoms : lib.f_tilde())
      CHECK(sm.select(s, atoms) == back.select(s, atoms));
  }
}

TEST_CASE("prefs files") {
  Json j = Json::parse(R"({
    "props": ["p"],
    "F": ["p", "~p"],
    "pool": ["do(p)", "noop"],
    "tiers": [[0], [1]]
  })");
  PrefsFile file = prefs_from_json(j);
  REQUIRE(file.props);
  CHECK(file.props->size() == 1);
  CHECK(file.pool.size() == 2);
  CHECK(file.tiers.size() == 2);
}

TEST_CASE("representation files reload exactly") {
  PropSet props({"p"});
  ActionLibrary lib(props, {parse_formula("p", props),
                            parse_formula("~p", props)});
  std::vector<Action> pool = {parse_action("do(p)", lib),
                              parse_action("do(~p)", lib),
                              parse_action("noop", lib)};
  PreferenceOrder po = PreferenceOrder::from_tiers(pool, {{0}, {1, 2}});
  auto solved = solve_state_dependent(po, lib, 1);
  REQUIRE(solved.ok());
  StateDependentUtility v = solved.utility->normalized();
  v.k = 1;
  Representation rep = assemble(v, lib);

  Json j = representation_to_json(rep, v, lib);
  CHECK(j.dump() == representation_to_json(rep, v, lib).dump());
  LoadedRepresentation back = representation_from_json(j, lib);
  CHECK(back.rep.k == rep.k);
  CHECK(back.rep.u == rep.u);
  CHECK(back.v.table == v.table);
  CHECK(!verify_representation(back.rep, po, lib));
}

TEST_CASE("witness JSON carries the tuples and multisets") {
  PropSet props({"p"});
  ActionLibrary lib(props, {parse_formula("p", props),
                            parse_formula("true", props)});
  std::vector<Action> pool = {parse_action("do(p)", lib),
                              parse_action("do(p & p)", lib)};
  PreferenceOrder po = PreferenceOrder::from_tiers(pool, {{0}, {1}});
  auto witness = check_cancellation(po, lib, 2);
  REQUIRE(witness);
  Json j = witness_to_json(*witness, po, lib);
  CHECK(j.at("n").get<std::size_t>() == witness->n());
  CHECK(j.at("alpha").size() == witness->n());
  CHECK(j.at("per_atom_multisets").size() == 2);
  for (const auto& [atom, sides] : j.at("per_atom_multisets").items()) {
    CHECK(sides.at("alpha_entries") == sides.at("beta_entries"));
  }
}

TEST_CASE("malformed inputs are rejected") {
  ActionLibrary lib = library();
  CHECK_THROWS_AS(formula_from_json(Json::parse(R"({"op":"nope"})"),
                                    lib.props()),
                  std::invalid_argument);
  CHECK_THROWS_AS(action_from_json(Json::parse(R"("zzz")"), lib.props()),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      canonical_map_from_json(Json::parse(R"({"1":"noop"})"), lib.props()),
      std::invalid_argument);
}
