#include "seqsavage/semantics.hpp"

#include <algorithm>
#include <stdexcept>

namespace seqsavage {

BasicModel::BasicModel(PropSet props, std::vector<std::string> states,
                       std::map<std::string, std::set<std::string>> valuation)
    : props_(std::move(props)),
      states_(std::move(states)),
      valuation_(std::move(valuation)) {
  if (states_.empty())
    throw std::invalid_argument("model needs a nonempty state set");
  std::set<std::string> state_set(states_.begin(), states_.end());
  if (state_set.size() != states_.size())
    throw std::invalid_argument("duplicate state identifier");
  for (const auto& name : props_.names()) {
    if (!valuation_.count(name))
      throw std::invalid_argument("valuation missing proposition '" + name +
                                  "'");
  }
  for (const auto& [name, extension] : valuation_) {
    if (!props_.index_of(name))
      throw std::invalid_argument("valuation names unknown proposition '" +
                                  name + "'");
    for (const auto& s : extension) {
      if (!state_set.count(s))
        throw std::invalid_argument("valuation of '" + name +
                                    "' names unknown state '" + s + "'");
    }
  }
}

bool BasicModel::has_state(const std::string& id) const {
  return std::find(states_.begin(), states_.end(), id) != states_.end();
}

bool BasicModel::prop_true_at(std::size_t prop_index,
                              const std::string& state) const {
  const auto& extension = valuation_.at(props_.name(prop_index));
  return extension.count(state) > 0;
}

bool state_satisfies(const BasicModel& m, const std::string& state,
                     const Formula& f) {
  if (!m.has_state(state))
    throw std::invalid_argument("unknown state '" + state + "'");
  switch (f.kind()) {
    case Formula::Kind::Prop:
      return m.prop_true_at(f.prop_index(), state);
    case Formula::Kind::Not:
      return !state_satisfies(m, state, f.lhs());
    case Formula::Kind::And:
      return state_satisfies(m, state, f.lhs()) &&
             state_satisfies(m, state, f.rhs());
    case Formula::Kind::Or:
      return state_satisfies(m, state, f.lhs()) ||
             state_satisfies(m, state, f.rhs());
    case Formula::Kind::Implies:
      return !state_satisfies(m, state, f.lhs()) ||
             state_satisfies(m, state, f.rhs());
    case Formula::Kind::Iff:
      return state_satisfies(m, state, f.lhs()) ==
             state_satisfies(m, state, f.rhs());
    case Formula::Kind::Top:
      return true;
    case Formula::Kind::Bottom:
      return false;
  }
  return false;
}

std::vector<Formula> unsatisfied_effects(const BasicModel& m,
                                         const ActionLibrary& lib) {
  std::vector<Formula> out;
  for (const auto& f : lib.effects()) {
    bool satisfied = false;
    for (const auto& s : m.states()) {
      if (state_satisfies(m, s, f)) {
        satisfied = true;
        break;
      }
    }
    if (!satisfied) out.push_back(f);
  }
  return out;
}

SelectionModel::SelectionModel(BasicModel model, std::vector<SelEntry> entries)
    : model_(std::move(model)), entries_(std::move(entries)) {
  for (const auto& e : entries_) {
    if (!model_.has_state(e.from))
      throw std::invalid_argument("selection entry from unknown state '" +
                                  e.from + "'");
    if (!model_.has_state(e.to))
      throw std::invalid_argument("selection entry to unknown state '" +
                                  e.to + "'");
    // The defining constraint: the selected state satisfies the effect.
    Formula phi = e.effect_atoms.formula(model_.props());
    if (!state_satisfies(model_, e.to, phi))
      throw std::invalid_argument(
          "selection target '" + e.to + "' does not satisfy the effect " +
          to_string(phi));
    auto key = std::make_pair(e.from, e.effect_atoms);
    auto [it, inserted] = table_.emplace(key, e.to);
    if (!inserted && it->second != e.to)
      throw std::invalid_argument(
          "conflicting selection entries for state '" + e.from + "'");
  }
}

const std::string& SelectionModel::select(const std::string& state,
                                          const AtomSet& effect_atoms) const {
  auto it = table_.find(std::make_pair(state, effect_atoms));
  if (it == table_.end())
    throw SelUndefinedError(state,
                            to_string(effect_atoms.formula(model_.props())));
  return it->second;
}

bool SelectionModel::is_total(const ActionLibrary& lib) const {
  for (const auto& s : model_.states()) {
    for (const auto& a : lib.f_tilde()) {
      if (!table_.count(std::make_pair(s, a))) return false;
    }
  }
  return true;
}

std::string interpret(const Action& action, const SelectionModel& sm,
                      const std::string& state) {
  switch (action.kind()) {
    case Action::Kind::Noop:
      return state;
    case Action::Kind::Do: {
      AtomSet a = atoms_of(action.effect(), sm.model().props());
      return sm.select(state, a);
    }
    case Action::Kind::IfThenElse:
      return state_satisfies(sm.model(), state, action.test())
                 ? interpret(action.then_branch(), sm, state)
                 : interpret(action.else_branch(), sm, state);
    case Action::Kind::Seq:
      return interpret(action.second(), sm,
                       interpret(action.first(), sm, state));
  }
  throw std::logic_error("unreachable action kind");
}

}  // namespace seqsavage
