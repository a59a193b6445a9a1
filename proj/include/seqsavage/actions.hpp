#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "seqsavage/logic.hpp"

namespace seqsavage {

// Immutable sequential-action AST. The grammar forbids an if-then-else or a
// sequencing whose branches are both noop; the factories below do not
// enforce that (so malformed trees can be built and reported), validate()
// does.
class Action {
 public:
  enum class Kind : std::uint8_t { Noop, Do, IfThenElse, Seq };

  static Action noop();
  static Action do_effect(Formula effect);
  static Action if_then_else(Formula test, Action then_branch,
                             Action else_branch);
  static Action sequence(Action first, Action second);

  Kind kind() const;
  bool is_noop() const { return kind() == Kind::Noop; }
  const Formula& effect() const;  // Do only
  const Formula& test() const;    // IfThenElse only
  Action then_branch() const;     // IfThenElse only
  Action else_branch() const;     // IfThenElse only
  Action first() const;           // Seq only
  Action second() const;          // Seq only

  friend bool operator==(const Action& a, const Action& b);
  friend bool operator!=(const Action& a, const Action& b) {
    return !(a == b);
  }

 private:
  struct Node;
  friend struct ActionAccess;
  explicit Action(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// The finite effect vocabulary F together with its ambient propositions.
// Every member of F must be satisfiable. f_tilde() is the quotient of F by
// logical equivalence, represented as sorted atom sets.
class ActionLibrary {
 public:
  ActionLibrary(PropSet props, std::vector<Formula> effects);

  const PropSet& props() const { return props_; }
  const std::vector<Formula>& effects() const { return effects_; }
  const std::vector<AtomSet>& f_tilde() const { return f_tilde_; }

  // Strict admission: the effect is logically equivalent to a member of F
  // (equivalently, to phi_A for some A in f_tilde).
  bool admits_strict(const Formula& effect) const;

  // Returns a library whose F additionally contains every satisfiable
  // do-effect occurring in the action (lax mode).
  ActionLibrary extended_with_effects_of(const Action& action) const;

 private:
  PropSet props_;
  std::vector<Formula> effects_;
  std::vector<AtomSet> f_tilde_;
};

struct Violation {
  std::string where;    // subterm, pretty printed
  std::string message;  // what rule it breaks
};

// Reports every grammar or effect violation in the action; empty means ok.
// In strict mode do-effects must be admitted by the library; in lax mode
// they only need to be satisfiable.
std::vector<Violation> validate(const Action& action, const ActionLibrary& lib,
                                bool strict = true);

// Thrown by parse_action when the parsed tree fails validation.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

// Concrete action grammar:
//   action := part (';' part)*                  -- ';' lowest, left assoc
//   part   := 'noop' | 'do' '(' formula ')'
//           | 'if' formula 'then' part ['else' part]
//           | '(' action ')'
// An omitted else-branch is sugar for `else noop`. Branches extend to the
// nearest unparenthesized ';'.
Action parse_action(std::string_view text, const ActionLibrary& lib,
                    bool strict = true);

// Minimal depth under the inductive definition: noop is 0, do is 1, a
// conditional takes the maximum of its branches (at least 1), a sequence
// adds.
int depth(const Action& action);

std::string to_string(const Action& action);

}  // namespace seqsavage
