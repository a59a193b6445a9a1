#include "seqsavage/oracle.hpp"

namespace seqsavage::oracle {

std::string interpret_small_step(const Action& action,
                                 const SelectionModel& sm, std::string state) {
  return run_small_step<std::string>(
      action,
      [&](const std::string& s, const Formula& f) {
        return state_satisfies(sm.model(), s, f);
      },
      [&](const std::string& s, const Formula& f) {
        return sm.select(s, atoms_of(f, sm.model().props()));
      },
      std::move(state));
}

namespace {

// Membership in the depth-m family, clause by clause.
bool is_depth(const Action& a, int m) {
  if (m < 0) return false;
  switch (a.kind()) {
    case Action::Kind::Noop:
      return true;
    case Action::Kind::Do:
      return m >= 1;
    case Action::Kind::IfThenElse:
      return m >= 1 && is_depth(a.then_branch(), m) &&
             is_depth(a.else_branch(), m);
    case Action::Kind::Seq:
      for (int k1 = 0; k1 <= m; ++k1) {
        if (is_depth(a.first(), k1) && is_depth(a.second(), m - k1))
          return true;
      }
      return false;
  }
  return false;
}

}  // namespace

int min_depth_by_enumeration(const Action& action) {
  for (int m = 0;; ++m) {
    if (is_depth(action, m)) return m;
  }
}

}  // namespace seqsavage::oracle
