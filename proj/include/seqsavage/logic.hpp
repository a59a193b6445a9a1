#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seqsavage/errors.hpp"

namespace seqsavage {

class Formula;

// Ordered set of primitive propositions. The order is fixed for the
// lifetime of the set and determines the atom enumeration: an atom is a bit
// vector over the propositions (first proposition = most significant bit),
// and atoms are numbered 1..N in descending numeric order of that vector.
// Atom 1 therefore makes every proposition true, atom N makes none true.
//
// Names must be identifiers and may not collide with the reserved words of
// the action language (noop, do, if, then, else, true, false).
class PropSet {
 public:
  explicit PropSet(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  std::size_t num_atoms() const { return std::size_t{1} << names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t prop_index) const {
    return names_.at(prop_index);
  }
  std::optional<std::size_t> index_of(std::string_view name) const;

  friend bool operator==(const PropSet& a, const PropSet& b) {
    return a.names_ == b.names_;
  }

 private:
  std::vector<std::string> names_;
};

// A total truth assignment, stored as the set of true propositions (one bit
// per proposition, first proposition = most significant bit) together with
// its 1-based rank in the fixed enumeration.
class Atom {
 public:
  static Atom from_index(const PropSet& props, std::size_t index);
  static Atom from_mask(const PropSet& props, std::uint64_t mask);
  static Atom from_true_props(const PropSet& props,
                              const std::vector<std::string>& true_props);

  std::size_t index() const { return index_; }
  std::uint64_t mask() const { return mask_; }
  std::size_t num_props() const { return num_props_; }

  // Whether the proposition at this 0-based position in the PropSet is true.
  bool contains(std::size_t prop_index) const {
    return (mask_ >> (num_props_ - 1 - prop_index)) & 1u;
  }

  // The defining conjunction of literals, e.g. p & ~q.
  Formula formula(const PropSet& props) const;
  // Parseable display form, e.g. "p&~q".
  std::string label(const PropSet& props) const;

  friend bool operator==(const Atom& a, const Atom& b) {
    return a.mask_ == b.mask_ && a.num_props_ == b.num_props_;
  }

 private:
  Atom(std::uint64_t mask, std::size_t index, std::size_t num_props)
      : mask_(mask), index_(index), num_props_(num_props) {}

  std::uint64_t mask_;
  std::size_t index_;
  std::size_t num_props_;
};

// A set of atoms, stored as sorted 1-based atom indices. Ordered and
// comparable so it can key maps and be deduplicated deterministically.
class AtomSet {
 public:
  AtomSet(std::size_t num_atoms, std::vector<std::size_t> indices);
  static AtomSet empty(std::size_t num_atoms) { return AtomSet(num_atoms, {}); }

  std::size_t num_atoms() const { return num_atoms_; }
  std::size_t size() const { return indices_.size(); }
  bool is_empty() const { return indices_.empty(); }
  bool contains(std::size_t atom_index) const;
  const std::vector<std::size_t>& indices() const { return indices_; }

  bool subset_of(const AtomSet& other) const;
  bool strict_superset_of(const AtomSet& other) const {
    return other.subset_of(*this) && indices_ != other.indices_;
  }

  // The disjunction of the member atoms' formulas; bottom when empty.
  Formula formula(const PropSet& props) const;

  friend bool operator==(const AtomSet& a, const AtomSet& b) {
    return a.num_atoms_ == b.num_atoms_ && a.indices_ == b.indices_;
  }
  friend bool operator<(const AtomSet& a, const AtomSet& b) {
    return a.indices_ < b.indices_;
  }

 private:
  std::size_t num_atoms_;
  std::vector<std::size_t> indices_;
};

// Immutable propositional formula AST. Propositions are stored with both
// their name and their resolved position in the ambient PropSet.
class Formula {
 public:
  enum class Kind : std::uint8_t {
    Prop,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Top,
    Bottom,
  };

  static Formula prop(std::string name, std::size_t prop_index);
  static Formula prop(const PropSet& props, std::string_view name);
  static Formula negation(Formula f);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula implication(Formula lhs, Formula rhs);
  static Formula biconditional(Formula lhs, Formula rhs);
  static Formula top();
  static Formula bottom();

  Kind kind() const;
  const std::string& prop_name() const;  // Kind::Prop only
  std::size_t prop_index() const;        // Kind::Prop only
  Formula lhs() const;                   // unary child for Not
  Formula rhs() const;                   // binary nodes only

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) {
    return !(a == b);
  }

 private:
  struct Node;
  friend struct FormulaAccess;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

bool eval_formula(const Formula& f, const Atom& a);

// The unique atom set A with phi_A logically equivalent to f, computed by
// evaluating f on every atom.
AtomSet atoms_of(const Formula& f, const PropSet& props);

enum class Entailment { Implies, ImpliesNegation };

// Every atom settles every formula: exactly one branch holds.
Entailment entails_atom(const Atom& a, const Formula& f);

bool equivalent(const Formula& f, const Formula& g, const PropSet& props);

// Concrete grammar, by descending precedence: ~ (prefix), &, |, -> (right
// associative), <-> (right associative); identifiers, true, false, parens.
Formula parse_formula(std::string_view text, const PropSet& props);

std::string to_string(const Formula& f);

}  // namespace seqsavage
