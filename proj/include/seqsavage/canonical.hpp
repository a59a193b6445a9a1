#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "seqsavage/actions.hpp"
#include "seqsavage/logic.hpp"

namespace seqsavage {

class CanonicalAction;
using CanonicalActionPtr = std::shared_ptr<const CanonicalAction>;

// One normal-form first-step description: noop, do(phi_A), or do(phi_A)
// followed by a canonical action. A trailing noop continuation collapses to
// the plain do(phi_A) form, so equal behaviour means equal entry.
class CanonicalEntry {
 public:
  enum class Kind : std::uint8_t { Noop, DoA, DoASeq };

  static CanonicalEntry noop();
  static CanonicalEntry do_atoms(AtomSet atoms);
  static CanonicalEntry do_atoms_then(AtomSet atoms, CanonicalActionPtr rest);

  Kind kind() const { return kind_; }
  bool is_noop() const { return kind_ == Kind::Noop; }
  const AtomSet& atoms() const;             // DoA / DoASeq
  const CanonicalActionPtr& rest() const;   // DoASeq only

  int depth() const;
  Action realize(const PropSet& props) const;

  friend bool operator==(const CanonicalEntry& a, const CanonicalEntry& b) {
    return compare(a, b) == 0;
  }
  friend bool operator!=(const CanonicalEntry& a, const CanonicalEntry& b) {
    return compare(a, b) != 0;
  }
  friend bool operator<(const CanonicalEntry& a, const CanonicalEntry& b) {
    return compare(a, b) < 0;
  }
  friend int compare(const CanonicalEntry& a, const CanonicalEntry& b);

 private:
  CanonicalEntry(Kind kind, AtomSet atoms, CanonicalActionPtr rest);

  Kind kind_;
  AtomSet atoms_;
  CanonicalActionPtr rest_;
};

// A total map from atoms (by index 1..N) to canonical entries.
class CanonicalMap {
 public:
  explicit CanonicalMap(std::vector<CanonicalEntry> entries);
  static CanonicalMap constant(std::size_t num_atoms, CanonicalEntry entry);

  std::size_t num_atoms() const { return entries_.size(); }
  const CanonicalEntry& at(std::size_t atom_index) const {
    return entries_.at(atom_index - 1);
  }
  const std::vector<CanonicalEntry>& entries() const { return entries_; }

  int depth() const;
  bool all_noop() const;

  friend bool operator==(const CanonicalMap& a, const CanonicalMap& b) {
    return compare(a, b) == 0;
  }
  friend bool operator!=(const CanonicalMap& a, const CanonicalMap& b) {
    return compare(a, b) != 0;
  }
  friend bool operator<(const CanonicalMap& a, const CanonicalMap& b) {
    return compare(a, b) < 0;
  }
  friend int compare(const CanonicalMap& a, const CanonicalMap& b);

 private:
  std::vector<CanonicalEntry> entries_;
};

// A canonical map together with the nested-conditional action realizing it:
//   if phi_a1 then e1 else (if phi_a2 then e2 else (... else e_N))
// truncated after the greatest non-noop entry when the last two entries are
// both noop, and collapsing to noop when every entry is.
class CanonicalAction {
 public:
  static CanonicalActionPtr make(CanonicalMap map, const PropSet& props);

  const CanonicalMap& map() const { return map_; }
  const Action& action() const { return action_; }
  bool is_noop() const { return map_.all_noop(); }
  int depth() const { return map_.depth(); }

 private:
  CanonicalAction(CanonicalMap map, Action action)
      : map_(std::move(map)), action_(std::move(action)) {}

  CanonicalMap map_;
  Action action_;
};

// The per-atom normal form of an action; precondition: validate(action) ok.
CanonicalMap canonical_map(const Action& action, const ActionLibrary& lib);

CanonicalActionPtr canonical_action(const Action& action,
                                    const ActionLibrary& lib);

// Cardinalities of the normal-form families (after deduplication), used for
// budget checks before any enumeration is materialized.
BigInt count_CA_minus(int k, const ActionLibrary& lib);
BigInt count_CA(int k, const ActionLibrary& lib);

// All canonical entries of depth at most k: {noop} + {do(phi_A)} +
// {do(phi_A); gamma} for A in f_tilde and non-noop gamma in CA^{k-1}.
std::vector<CanonicalEntry> enumerate_CA_minus(int k, const ActionLibrary& lib,
                                               const BigInt& budget);

// All canonical actions of depth at most k, one per total map into
// CA^{k,-}; enumeration order is deterministic.
std::vector<CanonicalActionPtr> enumerate_CA(int k, const ActionLibrary& lib,
                                             const BigInt& budget);

// The strict structural order used in the row-independence argument:
// noop is minimal; do(phi_A)-forms (with an implicit noop continuation) and
// do(phi_A);gamma-forms compare by strict atom-set inclusion, or by equal
// atom sets with the continuation maps related pointwise (every entry equal
// or strictly above, and not all equal).
bool strictly_above(const CanonicalEntry& a, const CanonicalEntry& b);

}  // namespace seqsavage
