#include "seqsavage/actions.hpp"

#include <algorithm>
#include <stdexcept>

#include "parser_internal.hpp"

namespace seqsavage {

struct Action::Node {
  Kind kind;
  Formula formula = Formula::top();  // effect for Do, test for IfThenElse
  std::shared_ptr<const Node> a;     // then-branch / first
  std::shared_ptr<const Node> b;     // else-branch / second
};

struct ActionAccess {
  static Action wrap(std::shared_ptr<const Action::Node> n) {
    return Action(std::move(n));
  }
  static const std::shared_ptr<const Action::Node>& node(const Action& a) {
    return a.node_;
  }
};

Action Action::noop() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Noop;
  return Action(std::move(n));
}

Action Action::do_effect(Formula effect) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Do;
  n->formula = std::move(effect);
  return Action(std::move(n));
}

Action Action::if_then_else(Formula test, Action then_branch,
                            Action else_branch) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::IfThenElse;
  n->formula = std::move(test);
  n->a = ActionAccess::node(then_branch);
  n->b = ActionAccess::node(else_branch);
  return Action(std::move(n));
}

Action Action::sequence(Action first, Action second) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Seq;
  n->a = ActionAccess::node(first);
  n->b = ActionAccess::node(second);
  return Action(std::move(n));
}

Action::Kind Action::kind() const { return node_->kind; }

const Formula& Action::effect() const { return node_->formula; }

const Formula& Action::test() const { return node_->formula; }

Action Action::then_branch() const { return ActionAccess::wrap(node_->a); }
Action Action::else_branch() const { return ActionAccess::wrap(node_->b); }
Action Action::first() const { return ActionAccess::wrap(node_->a); }
Action Action::second() const { return ActionAccess::wrap(node_->b); }

bool operator==(const Action& x, const Action& y) {
  const auto& a = x.node_;
  const auto& b = y.node_;
  if (a == b) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Action::Kind::Noop:
      return true;
    case Action::Kind::Do:
      return a->formula == b->formula;
    case Action::Kind::IfThenElse:
      return a->formula == b->formula &&
             ActionAccess::wrap(a->a) == ActionAccess::wrap(b->a) &&
             ActionAccess::wrap(a->b) == ActionAccess::wrap(b->b);
    case Action::Kind::Seq:
      return ActionAccess::wrap(a->a) == ActionAccess::wrap(b->a) &&
             ActionAccess::wrap(a->b) == ActionAccess::wrap(b->b);
  }
  return false;
}

ActionLibrary::ActionLibrary(PropSet props, std::vector<Formula> effects)
    : props_(std::move(props)), effects_(std::move(effects)) {
  for (const auto& f : effects_) {
    AtomSet a = atoms_of(f, props_);
    if (a.is_empty())
      throw std::invalid_argument("effect formula is unsatisfiable: " +
                                  to_string(f));
    if (std::find(f_tilde_.begin(), f_tilde_.end(), a) == f_tilde_.end())
      f_tilde_.push_back(a);
  }
  std::sort(f_tilde_.begin(), f_tilde_.end());
}

bool ActionLibrary::admits_strict(const Formula& effect) const {
  AtomSet a = atoms_of(effect, props_);
  return std::binary_search(f_tilde_.begin(), f_tilde_.end(), a);
}

namespace {

void collect_effects(const Action& action, std::vector<Formula>& out) {
  switch (action.kind()) {
    case Action::Kind::Noop:
      return;
    case Action::Kind::Do:
      out.push_back(action.effect());
      return;
    case Action::Kind::IfThenElse:
      collect_effects(action.then_branch(), out);
      collect_effects(action.else_branch(), out);
      return;
    case Action::Kind::Seq:
      collect_effects(action.first(), out);
      collect_effects(action.second(), out);
      return;
  }
}

}  // namespace

ActionLibrary ActionLibrary::extended_with_effects_of(
    const Action& action) const {
  std::vector<Formula> effects = effects_;
  std::vector<Formula> found;
  collect_effects(action, found);
  for (auto& f : found) {
    if (!atoms_of(f, props_).is_empty()) effects.push_back(std::move(f));
  }
  return ActionLibrary(props_, std::move(effects));
}

namespace {

void validate_rec(const Action& action, const ActionLibrary& lib, bool strict,
                  std::vector<Violation>& out) {
  switch (action.kind()) {
    case Action::Kind::Noop:
      return;
    case Action::Kind::Do: {
      const Formula& f = action.effect();
      if (atoms_of(f, lib.props()).is_empty()) {
        out.push_back({to_string(action), "do-effect is unsatisfiable"});
      } else if (strict && !lib.admits_strict(f)) {
        out.push_back(
            {to_string(action),
             "do-effect is not equivalent to any effect in the library"});
      }
      return;
    }
    case Action::Kind::IfThenElse:
      if (action.then_branch().is_noop() && action.else_branch().is_noop())
        out.push_back(
            {to_string(action), "both branches of a conditional are noop"});
      validate_rec(action.then_branch(), lib, strict, out);
      validate_rec(action.else_branch(), lib, strict, out);
      return;
    case Action::Kind::Seq:
      if (action.first().is_noop() && action.second().is_noop())
        out.push_back(
            {to_string(action), "both parts of a sequence are noop"});
      validate_rec(action.first(), lib, strict, out);
      validate_rec(action.second(), lib, strict, out);
      return;
  }
}

}  // namespace

std::vector<Violation> validate(const Action& action, const ActionLibrary& lib,
                                bool strict) {
  std::vector<Violation> out;
  validate_rec(action, lib, strict, out);
  return out;
}

ValidationError::ValidationError(std::vector<Violation> violations)
    : std::runtime_error(
          violations.empty()
              ? std::string("validation failed")
              : "invalid action: " + violations.front().message + " in '" +
                    violations.front().where + "'" +
                    (violations.size() > 1
                         ? " (+" + std::to_string(violations.size() - 1) +
                               " more)"
                         : "")),
      violations_(std::move(violations)) {}

namespace {

using detail::Tok;
using detail::Token;

class ActionParser {
 public:
  ActionParser(const std::vector<Token>& toks, const PropSet& props)
      : toks_(toks), props_(props) {}

  Action parse() {
    Action a = parse_seq();
    if (peek().kind != Tok::End)
      throw ParseError("unexpected trailing input '" + peek().text + "'",
                       peek().pos);
    return a;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }

  Action parse_seq() {
    Action acc = parse_part();
    while (peek().kind == Tok::Semi) {
      ++pos_;
      acc = Action::sequence(std::move(acc), parse_part());
    }
    return acc;
  }

  Action parse_part() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::KwNoop:
        ++pos_;
        return Action::noop();
      case Tok::KwDo: {
        ++pos_;
        if (peek().kind != Tok::LParen)
          throw ParseError("expected '(' after do", peek().pos);
        ++pos_;
        detail::FormulaParser fp(toks_, pos_, props_);
        Formula effect = fp.parse();
        if (peek().kind != Tok::RParen)
          throw ParseError("expected ')' after do-effect", peek().pos);
        ++pos_;
        return Action::do_effect(std::move(effect));
      }
      case Tok::KwIf: {
        ++pos_;
        detail::FormulaParser fp(toks_, pos_, props_);
        Formula test = fp.parse();
        if (peek().kind != Tok::KwThen)
          throw ParseError("expected 'then'", peek().pos);
        ++pos_;
        Action then_branch = parse_part();
        Action else_branch = Action::noop();
        if (peek().kind == Tok::KwElse) {
          ++pos_;
          else_branch = parse_part();
        }
        return Action::if_then_else(std::move(test), std::move(then_branch),
                                    std::move(else_branch));
      }
      case Tok::LParen: {
        ++pos_;
        Action a = parse_seq();
        if (peek().kind != Tok::RParen)
          throw ParseError("expected ')'", peek().pos);
        ++pos_;
        return a;
      }
      default:
        throw ParseError("expected an action", t.pos);
    }
  }

  const std::vector<Token>& toks_;
  std::size_t pos_ = 0;
  const PropSet& props_;
};

}  // namespace

Action parse_action(std::string_view text, const ActionLibrary& lib,
                    bool strict) {
  auto toks = detail::lex(text);
  ActionParser parser(toks, lib.props());
  Action action = parser.parse();
  auto violations = validate(action, lib, strict);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  return action;
}

int depth(const Action& action) {
  switch (action.kind()) {
    case Action::Kind::Noop:
      return 0;
    case Action::Kind::Do:
      return 1;
    case Action::Kind::IfThenElse:
      return std::max(
          {1, depth(action.then_branch()), depth(action.else_branch())});
    case Action::Kind::Seq:
      return depth(action.first()) + depth(action.second());
  }
  return 0;
}

namespace {

void print_action(const Action& a, std::string& out) {
  switch (a.kind()) {
    case Action::Kind::Noop:
      out += "noop";
      return;
    case Action::Kind::Do:
      out += "do(";
      out += to_string(a.effect());
      out += ")";
      return;
    case Action::Kind::IfThenElse: {
      out += "if ";
      out += to_string(a.test());
      out += " then ";
      Action t = a.then_branch();
      bool tp = t.kind() == Action::Kind::Seq;
      if (tp) out += "(";
      print_action(t, out);
      if (tp) out += ")";
      out += " else ";
      Action e = a.else_branch();
      bool ep = e.kind() == Action::Kind::Seq;
      if (ep) out += "(";
      print_action(e, out);
      if (ep) out += ")";
      return;
    }
    case Action::Kind::Seq: {
      print_action(a.first(), out);
      out += "; ";
      Action s = a.second();
      bool sp = s.kind() == Action::Kind::Seq;
      if (sp) out += "(";
      print_action(s, out);
      if (sp) out += ")";
      return;
    }
  }
}

}  // namespace

std::string to_string(const Action& action) {
  std::string out;
  print_action(action, out);
  return out;
}

}  // namespace seqsavage
