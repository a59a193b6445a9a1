#include "seqsavage/logic.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

namespace seqsavage {

namespace {

bool is_ident(std::string_view s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
    return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
      return false;
  }
  return true;
}

const std::set<std::string, std::less<>>& reserved_words() {
  static const std::set<std::string, std::less<>> words{
      "noop", "do", "if", "then", "else", "true", "false"};
  return words;
}

}  // namespace

PropSet::PropSet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty())
    throw std::invalid_argument("proposition set must be nonempty");
  if (names_.size() > 63)
    throw std::invalid_argument("proposition set too large");
  std::set<std::string_view> seen;
  for (const auto& n : names_) {
    if (!is_ident(n))
      throw std::invalid_argument("invalid proposition name: '" + n + "'");
    if (reserved_words().count(n))
      throw std::invalid_argument("proposition name is a reserved word: '" +
                                  n + "'");
    if (!seen.insert(n).second)
      throw std::invalid_argument("duplicate proposition name: '" + n + "'");
  }
}

std::optional<std::size_t> PropSet::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

Atom Atom::from_index(const PropSet& props, std::size_t index) {
  const std::size_t n = props.num_atoms();
  if (index < 1 || index > n)
    throw std::out_of_range("atom index out of range: " +
                            std::to_string(index));
  return Atom(static_cast<std::uint64_t>(n - index), index, props.size());
}

Atom Atom::from_mask(const PropSet& props, std::uint64_t mask) {
  const std::size_t n = props.num_atoms();
  if (mask >= n) throw std::out_of_range("atom mask out of range");
  return Atom(mask, n - static_cast<std::size_t>(mask), props.size());
}

Atom Atom::from_true_props(const PropSet& props,
                           const std::vector<std::string>& true_props) {
  std::uint64_t mask = 0;
  for (const auto& p : true_props) {
    auto idx = props.index_of(p);
    if (!idx)
      throw std::invalid_argument("unknown proposition: '" + p + "'");
    mask |= std::uint64_t{1} << (props.size() - 1 - *idx);
  }
  return from_mask(props, mask);
}

Formula Atom::formula(const PropSet& props) const {
  Formula acc = contains(0) ? Formula::prop(props, props.name(0))
                            : Formula::negation(
                                  Formula::prop(props, props.name(0)));
  for (std::size_t i = 1; i < props.size(); ++i) {
    Formula lit = Formula::prop(props, props.name(i));
    if (!contains(i)) lit = Formula::negation(std::move(lit));
    acc = Formula::conjunction(std::move(acc), std::move(lit));
  }
  return acc;
}

std::string Atom::label(const PropSet& props) const {
  std::string out;
  for (std::size_t i = 0; i < props.size(); ++i) {
    if (i > 0) out += "&";
    if (!contains(i)) out += "~";
    out += props.name(i);
  }
  return out;
}

AtomSet::AtomSet(std::size_t num_atoms, std::vector<std::size_t> indices)
    : num_atoms_(num_atoms), indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()),
                 indices_.end());
  for (std::size_t i : indices_) {
    if (i < 1 || i > num_atoms_)
      throw std::out_of_range("atom index out of range in atom set");
  }
}

bool AtomSet::contains(std::size_t atom_index) const {
  return std::binary_search(indices_.begin(), indices_.end(), atom_index);
}

bool AtomSet::subset_of(const AtomSet& other) const {
  return std::includes(other.indices_.begin(), other.indices_.end(),
                       indices_.begin(), indices_.end());
}

Formula AtomSet::formula(const PropSet& props) const {
  if (indices_.empty()) return Formula::bottom();
  Formula acc = Atom::from_index(props, indices_[0]).formula(props);
  for (std::size_t i = 1; i < indices_.size(); ++i) {
    acc = Formula::disjunction(
        std::move(acc), Atom::from_index(props, indices_[i]).formula(props));
  }
  return acc;
}

struct Formula::Node {
  Kind kind;
  std::string name;        // Prop
  std::size_t prop_index;  // Prop
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

Formula Formula::prop(std::string name, std::size_t prop_index) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Prop;
  n->name = std::move(name);
  n->prop_index = prop_index;
  return Formula(std::move(n));
}

Formula Formula::prop(const PropSet& props, std::string_view name) {
  auto idx = props.index_of(name);
  if (!idx)
    throw std::invalid_argument("unknown proposition: '" + std::string(name) +
                                "'");
  return prop(std::string(name), *idx);
}

struct FormulaAccess {
  static Formula wrap(std::shared_ptr<const Formula::Node> n) {
    return Formula(std::move(n));
  }
  static Formula make_unary(Formula::Kind kind, const Formula& child) {
    auto n = std::make_shared<Formula::Node>();
    n->kind = kind;
    n->lhs = child.node_;
    return wrap(std::move(n));
  }
  static Formula make_binary(Formula::Kind kind, const Formula& l,
                             const Formula& r) {
    auto n = std::make_shared<Formula::Node>();
    n->kind = kind;
    n->lhs = l.node_;
    n->rhs = r.node_;
    return wrap(std::move(n));
  }
  static Formula make_leaf(Formula::Kind kind) {
    auto n = std::make_shared<Formula::Node>();
    n->kind = kind;
    return wrap(std::move(n));
  }
};

Formula Formula::negation(Formula f) {
  return FormulaAccess::make_unary(Kind::Not, f);
}
Formula Formula::conjunction(Formula l, Formula r) {
  return FormulaAccess::make_binary(Kind::And, l, r);
}
Formula Formula::disjunction(Formula l, Formula r) {
  return FormulaAccess::make_binary(Kind::Or, l, r);
}
Formula Formula::implication(Formula l, Formula r) {
  return FormulaAccess::make_binary(Kind::Implies, l, r);
}
Formula Formula::biconditional(Formula l, Formula r) {
  return FormulaAccess::make_binary(Kind::Iff, l, r);
}
Formula Formula::top() { return FormulaAccess::make_leaf(Kind::Top); }
Formula Formula::bottom() { return FormulaAccess::make_leaf(Kind::Bottom); }

Formula::Kind Formula::kind() const { return node_->kind; }

const std::string& Formula::prop_name() const { return node_->name; }

std::size_t Formula::prop_index() const { return node_->prop_index; }

Formula Formula::lhs() const { return FormulaAccess::wrap(node_->lhs); }

Formula Formula::rhs() const { return FormulaAccess::wrap(node_->rhs); }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Formula::Kind::Prop:
      return a.prop_index() == b.prop_index() && a.prop_name() == b.prop_name();
    case Formula::Kind::Top:
    case Formula::Kind::Bottom:
      return true;
    case Formula::Kind::Not:
      return a.lhs() == b.lhs();
    default:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

bool eval_formula(const Formula& f, const Atom& a) {
  switch (f.kind()) {
    case Formula::Kind::Prop:
      return a.contains(f.prop_index());
    case Formula::Kind::Not:
      return !eval_formula(f.lhs(), a);
    case Formula::Kind::And:
      return eval_formula(f.lhs(), a) && eval_formula(f.rhs(), a);
    case Formula::Kind::Or:
      return eval_formula(f.lhs(), a) || eval_formula(f.rhs(), a);
    case Formula::Kind::Implies:
      return !eval_formula(f.lhs(), a) || eval_formula(f.rhs(), a);
    case Formula::Kind::Iff:
      return eval_formula(f.lhs(), a) == eval_formula(f.rhs(), a);
    case Formula::Kind::Top:
      return true;
    case Formula::Kind::Bottom:
      return false;
  }
  return false;
}

AtomSet atoms_of(const Formula& f, const PropSet& props) {
  std::vector<std::size_t> indices;
  const std::size_t n = props.num_atoms();
  for (std::size_t i = 1; i <= n; ++i) {
    if (eval_formula(f, Atom::from_index(props, i))) indices.push_back(i);
  }
  return AtomSet(n, std::move(indices));
}

Entailment entails_atom(const Atom& a, const Formula& f) {
  return eval_formula(f, a) ? Entailment::Implies
                            : Entailment::ImpliesNegation;
}

bool equivalent(const Formula& f, const Formula& g, const PropSet& props) {
  return atoms_of(f, props) == atoms_of(g, props);
}

namespace {

// Precedence: higher binds tighter. Implies/Iff are right associative,
// And/Or left associative.
int prec_of(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Iff:
      return 1;
    case Formula::Kind::Implies:
      return 2;
    case Formula::Kind::Or:
      return 3;
    case Formula::Kind::And:
      return 4;
    case Formula::Kind::Not:
      return 5;
    default:
      return 6;
  }
}

bool right_assoc(Formula::Kind k) {
  return k == Formula::Kind::Implies || k == Formula::Kind::Iff;
}

void print_formula(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Formula::Kind::Prop:
      out += f.prop_name();
      return;
    case Formula::Kind::Top:
      out += "true";
      return;
    case Formula::Kind::Bottom:
      out += "false";
      return;
    case Formula::Kind::Not: {
      out += "~";
      Formula child = f.lhs();
      bool parens = prec_of(child.kind()) < prec_of(Formula::Kind::Not);
      if (parens) out += "(";
      print_formula(child, out);
      if (parens) out += ")";
      return;
    }
    default:
      break;
  }
  const int p = prec_of(f.kind());
  const char* op = f.kind() == Formula::Kind::And       ? " & "
                   : f.kind() == Formula::Kind::Or      ? " | "
                   : f.kind() == Formula::Kind::Implies ? " -> "
                                                        : " <-> ";
  Formula l = f.lhs();
  Formula r = f.rhs();
  const bool lp = prec_of(l.kind()) < p ||
                  (prec_of(l.kind()) == p && right_assoc(f.kind()));
  const bool rp = prec_of(r.kind()) < p ||
                  (prec_of(r.kind()) == p && !right_assoc(f.kind()));
  if (lp) out += "(";
  print_formula(l, out);
  if (lp) out += ")";
  out += op;
  if (rp) out += "(";
  print_formula(r, out);
  if (rp) out += ")";
}

}  // namespace

std::string to_string(const Formula& f) {
  std::string out;
  print_formula(f, out);
  return out;
}

}  // namespace seqsavage
