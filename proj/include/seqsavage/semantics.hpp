#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "seqsavage/actions.hpp"
#include "seqsavage/logic.hpp"

namespace seqsavage {

// Finite state space with a valuation per proposition. States are named by
// caller-supplied identifiers.
class BasicModel {
 public:
  BasicModel(PropSet props, std::vector<std::string> states,
             std::map<std::string, std::set<std::string>> valuation);

  const PropSet& props() const { return props_; }
  const std::vector<std::string>& states() const { return states_; }
  bool has_state(const std::string& id) const;
  bool prop_true_at(std::size_t prop_index, const std::string& state) const;
  const std::map<std::string, std::set<std::string>>& valuation() const {
    return valuation_;
  }

 private:
  PropSet props_;
  std::vector<std::string> states_;
  std::map<std::string, std::set<std::string>> valuation_;
};

bool state_satisfies(const BasicModel& m, const std::string& state,
                     const Formula& f);

// Effects with empty extension in the model, in library order; empty = ok.
std::vector<Formula> unsatisfied_effects(const BasicModel& m,
                                         const ActionLibrary& lib);

inline bool is_F_rich(const BasicModel& m, const ActionLibrary& lib) {
  return unsatisfied_effects(m, lib).empty();
}

// A basic model plus an extensional selection table. Entries are keyed by
// the effect's atom set, so logically equivalent effects share entries.
// The table may be partial; interpretation fails loudly on a missing entry.
class SelectionModel {
 public:
  struct SelEntry {
    std::string from;
    AtomSet effect_atoms;
    std::string to;
  };

  SelectionModel(BasicModel model, std::vector<SelEntry> entries);

  const BasicModel& model() const { return model_; }
  const std::vector<SelEntry>& entries() const { return entries_; }

  // The selected state; throws SelUndefinedError when absent.
  const std::string& select(const std::string& state,
                            const AtomSet& effect_atoms) const;

  // Whether every (state, member of f_tilde) pair has an entry.
  bool is_total(const ActionLibrary& lib) const;

 private:
  BasicModel model_;
  std::vector<SelEntry> entries_;
  std::map<std::pair<std::string, AtomSet>, std::string> table_;
};

// Denotational interpretation: do(phi) selects, conditionals test the
// current state, sequences compose, noop is the identity.
std::string interpret(const Action& action, const SelectionModel& sm,
                      const std::string& state);

}  // namespace seqsavage
