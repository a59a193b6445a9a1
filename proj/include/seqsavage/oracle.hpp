#pragma once

#include <functional>
#include <string>
#include <vector>

#include "seqsavage/actions.hpp"
#include "seqsavage/semantics.hpp"

namespace seqsavage::oracle {

// Reference interpreter built as a small-step machine with an explicit
// frame stack, deliberately independent of the recursive interpreter.
template <typename State>
State run_small_step(
    const Action& action,
    const std::function<bool(const State&, const Formula&)>& test,
    const std::function<State(const State&, const Formula&)>& select,
    State start) {
  std::vector<Action> stack{action};
  State current = std::move(start);
  while (!stack.empty()) {
    Action a = stack.back();
    stack.pop_back();
    switch (a.kind()) {
      case Action::Kind::Noop:
        break;
      case Action::Kind::Do:
        current = select(current, a.effect());
        break;
      case Action::Kind::IfThenElse:
        stack.push_back(test(current, a.test()) ? a.then_branch()
                                                : a.else_branch());
        break;
      case Action::Kind::Seq:
        stack.push_back(a.second());
        stack.push_back(a.first());
        break;
    }
  }
  return current;
}

std::string interpret_small_step(const Action& action,
                                 const SelectionModel& sm, std::string state);

// Minimal depth recomputed directly from the inductive definition of
// depth-k action families, as a cross-check for the structural recursion.
int min_depth_by_enumeration(const Action& action);

}  // namespace seqsavage::oracle
