#include <doctest.h>

#include "generators.hpp"
#include "seqsavage/oracle.hpp"
#include "seqsavage/semantics.hpp"

using namespace seqsavage;

namespace {

ActionLibrary library() {
  PropSet props({"p", "q"});
  return ActionLibrary(props, {parse_formula("p", props),
                               parse_formula("q", props),
                               parse_formula("p | q", props)});
}

// Two states, one satisfying p and q, one satisfying neither.
SelectionModel tiny_model(const ActionLibrary& lib) {
  BasicModel model(lib.props(), {"w0", "w1"},
                   {{"p", {"w0"}}, {"q", {"w0"}}});
  std::vector<SelectionModel::SelEntry> entries;
  for (const auto& atoms : lib.f_tilde()) {
    for (const auto& s : model.states())
      entries.push_back({s, atoms, "w0"});
  }
  return SelectionModel(std::move(model), std::move(entries));
}

}  // namespace

TEST_CASE("model validation") {
  PropSet props({"p"});
  CHECK_THROWS(BasicModel(props, {}, {{"p", {}}}));
  CHECK_THROWS(BasicModel(props, {"a", "a"}, {{"p", {}}}));
  CHECK_THROWS(BasicModel(props, {"a"}, {}));
  CHECK_THROWS(BasicModel(props, {"a"}, {{"p", {"zzz"}}}));
  CHECK_NOTHROW(BasicModel(props, {"a"}, {{"p", {"a"}}}));
}

TEST_CASE("state satisfaction is the recursive lift") {
  ActionLibrary lib = library();
  SelectionModel sm = tiny_model(lib);
  const BasicModel& m = sm.model();
  CHECK(state_satisfies(m, "w0", parse_formula("p", lib.props())));
  CHECK(state_satisfies(m, "w1", parse_formula("~p", lib.props())));
  CHECK(state_satisfies(m, "w0", parse_formula("p | q", lib.props())));
  CHECK(state_satisfies(m, "w1", parse_formula("p -> q", lib.props())));
  CHECK(!state_satisfies(m, "w1", parse_formula("p | q", lib.props())));
  CHECK_THROWS(state_satisfies(m, "nowhere", Formula::top()));
}

TEST_CASE("F-richness reports missing effects") {
  PropSet props({"p", "q"});
  ActionLibrary lib(props, {parse_formula("p", props),
                            parse_formula("q", props)});
  // No state satisfies q.
  BasicModel model(props, {"w0", "w1"}, {{"p", {"w0"}}, {"q", {}}});
  auto missing = unsatisfied_effects(model, lib);
  REQUIRE(missing.size() == 1);
  CHECK(to_string(missing[0]) == "q");
  CHECK(!is_F_rich(model, lib));
  CHECK(is_F_rich(tiny_model(library()).model(), library()));
}

TEST_CASE("selection entries must satisfy their effect") {
  ActionLibrary lib = library();
  BasicModel model(lib.props(), {"w0", "w1"}, {{"p", {"w0"}}, {"q", {"w0"}}});
  AtomSet p_atoms = atoms_of(parse_formula("p", lib.props()), lib.props());
  CHECK_THROWS(SelectionModel(model, {{"w0", p_atoms, "w1"}}));
  SelectionModel ok(model, {{"w0", p_atoms, "w0"}});
  CHECK(ok.select("w0", p_atoms) == "w0");
  CHECK_THROWS_AS(ok.select("w1", p_atoms), SelUndefinedError);
  CHECK(!ok.is_total(lib));
  CHECK(tiny_model(lib).is_total(lib));
}

TEST_CASE("interpretation clauses") {
  ActionLibrary lib = library();
  SelectionModel sm = tiny_model(lib);

  CHECK(interpret(parse_action("noop", lib), sm, "w1") == "w1");

  // do lands in the effect's extension.
  std::string landed = interpret(parse_action("do(p)", lib), sm, "w1");
  CHECK(state_satisfies(sm.model(), landed, parse_formula("p", lib.props())));

  // Conditionals resolve strictly by the current state.
  Action branchy = parse_action("if p then noop else do(q)", lib);
  CHECK(interpret(branchy, sm, "w0") == "w0");
  CHECK(interpret(branchy, sm, "w1") == "w0");

  // Sequencing is composition.
  Action two = parse_action("do(p); do(q)", lib);
  CHECK(interpret(two, sm, "w1") ==
        interpret(parse_action("do(q)", lib), sm,
                  interpret(parse_action("do(p)", lib), sm, "w1")));
}

TEST_CASE("sequencing is associative pointwise") {
  testgen::Rng rng(555);
  ActionLibrary lib = library();
  for (int i = 0; i < 50; ++i) {
    SelectionModel sm = testgen::random_selection_model(rng, lib, 6);
    Action a = testgen::random_action(rng, lib, 1);
    Action b = testgen::random_action(rng, lib, 1);
    Action c = testgen::random_action(rng, lib, 1);
    if (a.is_noop() || b.is_noop() || c.is_noop()) continue;
    Action left = Action::sequence(Action::sequence(a, b), c);
    Action right = Action::sequence(a, Action::sequence(b, c));
    for (const auto& s : sm.model().states())
      CHECK(interpret(left, sm, s) == interpret(right, sm, s));
  }
}

TEST_CASE("post-state satisfaction") {
  testgen::Rng rng(556);
  ActionLibrary lib = library();
  for (int i = 0; i < 30; ++i) {
    SelectionModel sm = testgen::random_selection_model(rng, lib, 5);
    for (const auto& effect : lib.effects()) {
      for (const auto& s : sm.model().states()) {
        std::string t = interpret(Action::do_effect(effect), sm, s);
        CHECK(state_satisfies(sm.model(), t, effect));
      }
    }
  }
}

TEST_CASE("small-step oracle agrees with the recursive interpreter") {
  testgen::Rng rng(557);
  ActionLibrary lib = library();
  for (int i = 0; i < 100; ++i) {
    SelectionModel sm = testgen::random_selection_model(rng, lib, 6);
    Action a = testgen::random_action(rng, lib, 3);
    for (const auto& s : sm.model().states())
      CHECK(interpret(a, sm, s) == oracle::interpret_small_step(a, sm, s));
  }
}
