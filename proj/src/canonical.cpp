#include "seqsavage/canonical.hpp"

#include <stdexcept>

namespace seqsavage {

CanonicalEntry::CanonicalEntry(Kind kind, AtomSet atoms,
                               CanonicalActionPtr rest)
    : kind_(kind), atoms_(std::move(atoms)), rest_(std::move(rest)) {}

CanonicalEntry CanonicalEntry::noop() {
  return CanonicalEntry(Kind::Noop, AtomSet::empty(0), nullptr);
}

CanonicalEntry CanonicalEntry::do_atoms(AtomSet atoms) {
  if (atoms.is_empty())
    throw std::invalid_argument("canonical do-entry needs a nonempty atom set");
  return CanonicalEntry(Kind::DoA, std::move(atoms), nullptr);
}

CanonicalEntry CanonicalEntry::do_atoms_then(AtomSet atoms,
                                             CanonicalActionPtr rest) {
  if (!rest || rest->is_noop()) return do_atoms(std::move(atoms));
  if (atoms.is_empty())
    throw std::invalid_argument("canonical do-entry needs a nonempty atom set");
  return CanonicalEntry(Kind::DoASeq, std::move(atoms), std::move(rest));
}

const AtomSet& CanonicalEntry::atoms() const {
  if (kind_ == Kind::Noop)
    throw std::logic_error("noop entry has no atom set");
  return atoms_;
}

const CanonicalActionPtr& CanonicalEntry::rest() const {
  if (kind_ != Kind::DoASeq)
    throw std::logic_error("entry has no continuation");
  return rest_;
}

int CanonicalEntry::depth() const {
  switch (kind_) {
    case Kind::Noop:
      return 0;
    case Kind::DoA:
      return 1;
    case Kind::DoASeq:
      return 1 + rest_->depth();
  }
  return 0;
}

Action CanonicalEntry::realize(const PropSet& props) const {
  switch (kind_) {
    case Kind::Noop:
      return Action::noop();
    case Kind::DoA:
      return Action::do_effect(atoms_.formula(props));
    case Kind::DoASeq:
      return Action::sequence(Action::do_effect(atoms_.formula(props)),
                              rest_->action());
  }
  return Action::noop();
}

int compare(const CanonicalEntry& a, const CanonicalEntry& b) {
  if (a.kind_ != b.kind_)
    return static_cast<int>(a.kind_) < static_cast<int>(b.kind_) ? -1 : 1;
  if (a.kind_ == CanonicalEntry::Kind::Noop) return 0;
  if (a.atoms_ != b.atoms_) return a.atoms_ < b.atoms_ ? -1 : 1;
  if (a.kind_ == CanonicalEntry::Kind::DoA) return 0;
  return compare(a.rest_->map(), b.rest_->map());
}

CanonicalMap::CanonicalMap(std::vector<CanonicalEntry> entries)
    : entries_(std::move(entries)) {
  if (entries_.empty())
    throw std::invalid_argument("canonical map must cover at least one atom");
}

CanonicalMap CanonicalMap::constant(std::size_t num_atoms,
                                    CanonicalEntry entry) {
  return CanonicalMap(std::vector<CanonicalEntry>(num_atoms, entry));
}

int CanonicalMap::depth() const {
  int d = 0;
  for (const auto& e : entries_) d = std::max(d, e.depth());
  return d;
}

bool CanonicalMap::all_noop() const {
  for (const auto& e : entries_) {
    if (!e.is_noop()) return false;
  }
  return true;
}

int compare(const CanonicalMap& a, const CanonicalMap& b) {
  if (a.entries_.size() != b.entries_.size())
    return a.entries_.size() < b.entries_.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.entries_.size(); ++i) {
    int c = compare(a.entries_[i], b.entries_[i]);
    if (c != 0) return c;
  }
  return 0;
}

CanonicalActionPtr CanonicalAction::make(CanonicalMap map,
                                         const PropSet& props) {
  const std::size_t n = map.num_atoms();
  if (n != props.num_atoms())
    throw std::invalid_argument("canonical map does not match prop set");

  Action realized = Action::noop();
  if (!map.all_noop()) {
    std::size_t last;  // 1-based index where the conditional chain ends
    bool truncated;
    if (n >= 2 && (!map.at(n - 1).is_noop() || !map.at(n).is_noop())) {
      last = n;
      truncated = false;
    } else {
      last = n;
      while (map.at(last).is_noop()) --last;
      truncated = true;
    }
    Action chain = truncated
                       ? Action::if_then_else(
                             Atom::from_index(props, last).formula(props),
                             map.at(last).realize(props), Action::noop())
                       : Action::if_then_else(
                             Atom::from_index(props, last - 1).formula(props),
                             map.at(last - 1).realize(props),
                             map.at(last).realize(props));
    std::size_t top = truncated ? last : last - 1;
    for (std::size_t i = top; i-- >= 2;) {
      chain = Action::if_then_else(Atom::from_index(props, i).formula(props),
                                   map.at(i).realize(props), std::move(chain));
    }
    realized = std::move(chain);
  }
  return CanonicalActionPtr(
      new CanonicalAction(std::move(map), std::move(realized)));
}

CanonicalMap canonical_map(const Action& action, const ActionLibrary& lib) {
  const PropSet& props = lib.props();
  const std::size_t n = props.num_atoms();
  switch (action.kind()) {
    case Action::Kind::Noop:
      return CanonicalMap::constant(n, CanonicalEntry::noop());
    case Action::Kind::Do: {
      AtomSet a = atoms_of(action.effect(), props);
      if (a.is_empty())
        throw std::invalid_argument("do-effect is unsatisfiable: " +
                                    to_string(action.effect()));
      return CanonicalMap::constant(n, CanonicalEntry::do_atoms(std::move(a)));
    }
    case Action::Kind::IfThenElse: {
      CanonicalMap then_map = canonical_map(action.then_branch(), lib);
      CanonicalMap else_map = canonical_map(action.else_branch(), lib);
      std::vector<CanonicalEntry> entries;
      entries.reserve(n);
      for (std::size_t i = 1; i <= n; ++i) {
        bool test_holds =
            eval_formula(action.test(), Atom::from_index(props, i));
        entries.push_back(test_holds ? then_map.at(i) : else_map.at(i));
      }
      return CanonicalMap(std::move(entries));
    }
    case Action::Kind::Seq: {
      CanonicalMap first_map = canonical_map(action.first(), lib);
      CanonicalMap second_map = canonical_map(action.second(), lib);
      CanonicalActionPtr gamma_second = nullptr;
      std::vector<CanonicalEntry> entries;
      entries.reserve(n);
      for (std::size_t i = 1; i <= n; ++i) {
        const CanonicalEntry& e = first_map.at(i);
        switch (e.kind()) {
          case CanonicalEntry::Kind::Noop:
            entries.push_back(second_map.at(i));
            break;
          case CanonicalEntry::Kind::DoA:
            if (!gamma_second)
              gamma_second = CanonicalAction::make(second_map, props);
            entries.push_back(
                CanonicalEntry::do_atoms_then(e.atoms(), gamma_second));
            break;
          case CanonicalEntry::Kind::DoASeq: {
            Action continued = Action::sequence(e.rest()->action(),
                                                action.second());
            entries.push_back(CanonicalEntry::do_atoms_then(
                e.atoms(), canonical_action(continued, lib)));
            break;
          }
        }
      }
      return CanonicalMap(std::move(entries));
    }
  }
  throw std::logic_error("unreachable action kind");
}

CanonicalActionPtr canonical_action(const Action& action,
                                    const ActionLibrary& lib) {
  return CanonicalAction::make(canonical_map(action, lib), lib.props());
}

BigInt count_CA_minus(int k, const ActionLibrary& lib) {
  if (k <= 0) return 1;
  const BigInt f = static_cast<unsigned>(lib.f_tilde().size());
  return 1 + f + f * (count_CA(k - 1, lib) - 1);
}

BigInt count_CA(int k, const ActionLibrary& lib) {
  if (k <= 0) return 1;
  BigInt base = count_CA_minus(k, lib);
  BigInt result = 1;
  for (std::size_t i = 0; i < lib.props().num_atoms(); ++i) result *= base;
  return result;
}

std::vector<CanonicalEntry> enumerate_CA_minus(int k, const ActionLibrary& lib,
                                               const BigInt& budget) {
  BigInt total = count_CA_minus(k, lib);
  if (total > budget) throw BudgetError("CA^{k,-} enumeration", total, budget);

  std::vector<CanonicalEntry> out;
  out.push_back(CanonicalEntry::noop());
  if (k <= 0) return out;
  for (const AtomSet& a : lib.f_tilde())
    out.push_back(CanonicalEntry::do_atoms(a));
  if (k == 1) return out;
  auto shallower = enumerate_CA(k - 1, lib, budget);
  for (const AtomSet& a : lib.f_tilde()) {
    for (const auto& gamma : shallower) {
      if (gamma->is_noop()) continue;
      out.push_back(CanonicalEntry::do_atoms_then(a, gamma));
    }
  }
  return out;
}

std::vector<CanonicalActionPtr> enumerate_CA(int k, const ActionLibrary& lib,
                                             const BigInt& budget) {
  BigInt total = count_CA(k, lib);
  if (total > budget) throw BudgetError("CA^k enumeration", total, budget);

  auto entries = enumerate_CA_minus(k, lib, budget);
  const std::size_t n = lib.props().num_atoms();
  std::vector<CanonicalActionPtr> out;
  std::vector<std::size_t> odometer(n, 0);
  for (;;) {
    std::vector<CanonicalEntry> map_entries;
    map_entries.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
      map_entries.push_back(entries[odometer[i]]);
    out.push_back(
        CanonicalAction::make(CanonicalMap(std::move(map_entries)),
                              lib.props()));
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++odometer[i] < entries.size()) break;
      odometer[i] = 0;
      if (i == 0) return out;
    }
  }
}

bool strictly_above(const CanonicalEntry& a, const CanonicalEntry& b) {
  if (a.is_noop()) return false;
  if (b.is_noop()) return true;
  if (a.atoms().strict_superset_of(b.atoms())) return true;
  if (!(a.atoms() == b.atoms())) return false;
  // Equal atom sets: compare continuations pointwise, treating the plain
  // do-form as an all-noop continuation.
  const bool a_seq = a.kind() == CanonicalEntry::Kind::DoASeq;
  const bool b_seq = b.kind() == CanonicalEntry::Kind::DoASeq;
  if (!a_seq) return false;          // a's continuation is noop everywhere
  if (!b_seq) return true;           // noop continuation is strictly below
  const CanonicalMap& ma = a.rest()->map();
  const CanonicalMap& mb = b.rest()->map();
  bool some_strict = false;
  for (std::size_t i = 1; i <= ma.num_atoms(); ++i) {
    const CanonicalEntry& ea = ma.at(i);
    const CanonicalEntry& eb = mb.at(i);
    if (ea == eb) continue;
    if (!strictly_above(ea, eb)) return false;
    some_strict = true;
  }
  return some_strict;
}

}  // namespace seqsavage
