#include <doctest.h>

#include "generators.hpp"
#include "seqsavage/logic.hpp"

using namespace seqsavage;

TEST_CASE("prop set validation") {
  CHECK_THROWS(PropSet({}));
  CHECK_THROWS(PropSet({"p", "p"}));
  CHECK_THROWS(PropSet({"do"}));
  CHECK_THROWS(PropSet({"2x"}));
  PropSet props({"p", "q"});
  CHECK(props.num_atoms() == 4);
  CHECK(props.index_of("q") == 1);
  CHECK(!props.index_of("r"));
}

TEST_CASE("atom enumeration is the descending bit order") {
  PropSet props({"p", "q"});
  // Atom 1 makes everything true; the mask is N - index.
  Atom a1 = Atom::from_index(props, 1);
  CHECK(a1.mask() == 3);
  CHECK(a1.contains(0));
  CHECK(a1.contains(1));
  Atom a4 = Atom::from_index(props, 4);
  CHECK(a4.mask() == 0);
  CHECK(a4.label(props) == "~p&~q");
  CHECK(Atom::from_true_props(props, {"q"}).index() == 3);
  CHECK(Atom::from_mask(props, 2).index() == 2);
  CHECK_THROWS(Atom::from_index(props, 0));
  CHECK_THROWS(Atom::from_index(props, 5));
}

TEST_CASE("parsing follows the declared precedence") {
  PropSet props({"p", "q"});
  Formula f = parse_formula("p & ~q", props);
  CHECK(f.kind() == Formula::Kind::And);
  CHECK(f.lhs().kind() == Formula::Kind::Prop);
  CHECK(f.rhs().kind() == Formula::Kind::Not);

  Formula g = parse_formula("p | q", props);
  CHECK(g.kind() == Formula::Kind::Or);

  Formula h = parse_formula("p -> (q <-> p)", props);
  CHECK(h.kind() == Formula::Kind::Implies);
  CHECK(h.rhs().kind() == Formula::Kind::Iff);

  // Without parens, <-> binds loosest.
  CHECK(parse_formula("p -> q <-> p", props).kind() == Formula::Kind::Iff);
  // -> is right associative.
  Formula r = parse_formula("p -> q -> p", props);
  CHECK(r.rhs().kind() == Formula::Kind::Implies);
}

TEST_CASE("parse errors carry positions") {
  PropSet props({"p"});
  CHECK_THROWS_AS(parse_formula("p &", props), ParseError);
  CHECK_THROWS_AS(parse_formula("unknown", props), ParseError);
  CHECK_THROWS_AS(parse_formula("p @ q", props), ParseError);
  CHECK_THROWS_AS(parse_formula("p q", props), ParseError);
  try {
    parse_formula("p & r", props);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("evaluation is the truth table") {
  PropSet props({"p", "q"});
  Formula p_or_q = parse_formula("p | q", props);
  CHECK(eval_formula(p_or_q, Atom::from_true_props(props, {"p"})));
  CHECK(!eval_formula(p_or_q, Atom::from_true_props(props, {})));
  Formula contradiction = parse_formula("p & ~p", props);
  for (std::size_t i = 1; i <= 4; ++i)
    CHECK(!eval_formula(contradiction, Atom::from_index(props, i)));

  // An atom's formula holds exactly at that atom.
  for (std::size_t i = 1; i <= 4; ++i) {
    Formula phi = Atom::from_index(props, i).formula(props);
    for (std::size_t j = 1; j <= 4; ++j)
      CHECK(eval_formula(phi, Atom::from_index(props, j)) == (i == j));
  }
}

TEST_CASE("atoms_of computes the unique atom set") {
  PropSet props({"p", "q"});
  CHECK(atoms_of(parse_formula("p | q", props), props).indices() ==
        std::vector<std::size_t>{1, 2, 3});
  CHECK(atoms_of(Formula::top(), props).size() == 4);
  CHECK(atoms_of(parse_formula("p & ~p", props), props).is_empty());
}

TEST_CASE("atom set formulas") {
  PropSet props({"p", "q"});
  AtomSet empty = AtomSet::empty(4);
  CHECK(empty.formula(props).kind() == Formula::Kind::Bottom);
  AtomSet some(4, {3, 1});
  CHECK(some.indices() == std::vector<std::size_t>{1, 3});
  CHECK(atoms_of(some.formula(props), props) == some);
  CHECK(AtomSet(4, {1}).subset_of(some));
  CHECK(some.strict_superset_of(AtomSet(4, {1})));
  CHECK(!some.strict_superset_of(some));
}

TEST_CASE("entailment settles every atom") {
  PropSet props({"p", "q"});
  CHECK(entails_atom(Atom::from_true_props(props, {"p"}),
                     parse_formula("p | q", props)) == Entailment::Implies);
  CHECK(entails_atom(Atom::from_true_props(props, {}),
                     parse_formula("p", props)) ==
        Entailment::ImpliesNegation);
  for (std::size_t i = 1; i <= 4; ++i)
    CHECK(entails_atom(Atom::from_index(props, i), Formula::top()) ==
          Entailment::Implies);
}

TEST_CASE("equivalence is semantic") {
  PropSet props({"p", "q"});
  CHECK(equivalent(parse_formula("p | q", props), parse_formula("q | p", props),
                   props));
  CHECK(equivalent(parse_formula("p", props),
                   parse_formula("p & (q | ~q)", props), props));
  CHECK(!equivalent(parse_formula("p", props), parse_formula("q", props),
                    props));
}

TEST_CASE("printer round-trips through the parser") {
  testgen::Rng rng(20240811);
  PropSet props({"p", "q", "r"});
  for (int i = 0; i < 500; ++i) {
    Formula f = testgen::random_formula(rng, props, 4);
    Formula reparsed = parse_formula(to_string(f), props);
    CHECK(reparsed == f);
  }
}

TEST_CASE("atom-set formula preserves equivalence class") {
  testgen::Rng rng(7);
  PropSet props({"p", "q", "r", "s"});  // 16 atoms
  for (int i = 0; i < 200; ++i) {
    Formula f = testgen::random_formula(rng, props, 4);
    AtomSet a = atoms_of(f, props);
    CHECK(equivalent(f, a.formula(props), props));
    // Uniqueness by brute force: pointwise agreement on every atom.
    for (std::size_t j = 1; j <= props.num_atoms(); ++j) {
      CHECK(eval_formula(f, Atom::from_index(props, j)) == a.contains(j));
    }
  }
}
