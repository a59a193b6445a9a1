#include <doctest.h>

#include "generators.hpp"
#include "seqsavage/actions.hpp"
#include "seqsavage/oracle.hpp"

using namespace seqsavage;

namespace {

ActionLibrary demo_library() {
  PropSet props({"p", "q", "r", "r2"});
  std::vector<Formula> effects = {parse_formula("r", props),
                                  parse_formula("r2", props),
                                  parse_formula("~r", props)};
  return ActionLibrary(std::move(props), std::move(effects));
}

}  // namespace

TEST_CASE("library rejects unsatisfiable effects and quotients F") {
  PropSet props({"p", "q"});
  CHECK_THROWS(ActionLibrary(props, {parse_formula("p & ~p", props)}));
  ActionLibrary lib(props, {parse_formula("p", props),
                            parse_formula("p & (q | ~q)", props),
                            parse_formula("q", props)});
  // Two of the three effects are logically equivalent.
  CHECK(lib.f_tilde().size() == 2);
}

TEST_CASE("action parsing matches the grammar") {
  ActionLibrary lib = demo_library();
  Action a = parse_action(
      "if p then do(r) else do(r2); if q then do(~r) else noop", lib);
  REQUIRE(a.kind() == Action::Kind::Seq);
  CHECK(a.first().kind() == Action::Kind::IfThenElse);
  CHECK(a.second().kind() == Action::Kind::IfThenElse);
  CHECK(a.second().else_branch().is_noop());

  CHECK(parse_action("noop", lib).is_noop());

  // Missing else is sugar for else noop.
  Action sugar = parse_action("if p then do(r)", lib);
  CHECK(sugar.else_branch().is_noop());

  // Branches stop at the nearest unparenthesized semicolon.
  Action split = parse_action("if p then do(r); do(r2)", lib);
  CHECK(split.kind() == Action::Kind::Seq);
  Action grouped = parse_action("if p then (do(r); do(r2))", lib);
  CHECK(grouped.kind() == Action::Kind::IfThenElse);

  // Semicolon associates to the left.
  Action chain = parse_action("do(r); do(r2); do(~r)", lib);
  CHECK(chain.first().kind() == Action::Kind::Seq);
}

TEST_CASE("grammar violations are rejected") {
  ActionLibrary lib = demo_library();
  CHECK_THROWS_AS(parse_action("if p then noop else noop", lib),
                  ValidationError);
  CHECK_THROWS_AS(parse_action("noop; noop", lib), ValidationError);
  CHECK_THROWS_AS(parse_action("do(r &", lib), ParseError);
  CHECK_THROWS_AS(parse_action("do(r) do(r2)", lib), ParseError);
}

TEST_CASE("strict mode polices effects") {
  PropSet props({"p", "q"});
  ActionLibrary lib(props, {parse_formula("p", props)});
  CHECK_THROWS_AS(parse_action("do(q)", lib), ValidationError);
  // Equivalent rewrites of a library effect are admitted.
  CHECK_NOTHROW(parse_action("do(p & (q | ~q))", lib));
  // Lax mode admits any satisfiable effect but never contradictions.
  CHECK_NOTHROW(parse_action("do(q)", lib, false));
  CHECK_THROWS_AS(parse_action("do(q & ~q)", lib, false), ValidationError);
}

TEST_CASE("validate reports every violation") {
  ActionLibrary lib = demo_library();
  Action bad = Action::sequence(Action::noop(), Action::noop());
  auto violations = validate(bad, lib);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].message.find("sequence") != std::string::npos);

  Action contradiction =
      Action::do_effect(parse_formula("r & ~r", lib.props()));
  CHECK(validate(contradiction, lib).size() == 1);
  CHECK(validate(parse_action("if p then do(r) else do(r2)", lib), lib)
            .empty());
}

TEST_CASE("depth follows the inductive definition") {
  ActionLibrary lib = demo_library();
  CHECK(depth(parse_action("noop", lib)) == 0);
  CHECK(depth(parse_action("if p then do(r) else noop", lib)) == 1);
  CHECK(depth(parse_action("do(r); do(r2); do(r)", lib)) == 3);
  CHECK(oracle::min_depth_by_enumeration(
            parse_action("do(r); do(r2); do(r)", lib)) == 3);
}

TEST_CASE("depth agrees with the enumeration oracle") {
  testgen::Rng rng(99);
  ActionLibrary lib = demo_library();
  for (int i = 0; i < 300; ++i) {
    Action a = testgen::random_action(rng, lib, 4);
    CHECK(depth(a) == oracle::min_depth_by_enumeration(a));
  }
}

TEST_CASE("printer round-trips through the parser") {
  testgen::Rng rng(20240812);
  ActionLibrary lib = demo_library();
  for (int i = 0; i < 500; ++i) {
    Action a = testgen::random_action(rng, lib, 3);
    Action reparsed = parse_action(to_string(a), lib);
    CHECK(reparsed == a);
  }
}

TEST_CASE("lax mode can enlarge the library") {
  PropSet props({"p", "q"});
  ActionLibrary lib(props, {parse_formula("p", props)});
  Action a = parse_action("do(q); do(p)", lib, false);
  ActionLibrary enlarged = lib.extended_with_effects_of(a);
  CHECK(enlarged.f_tilde().size() == 2);
  CHECK(validate(a, enlarged).empty());
}
