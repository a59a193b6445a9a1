#include "seqsavage/olt.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace seqsavage {

namespace {

std::vector<std::size_t> level_starts(int k, std::size_t n) {
  std::vector<std::size_t> starts(k + 2);
  starts[0] = 0;
  std::size_t level_size = 1;
  for (int d = 0; d <= k; ++d) {
    starts[d + 1] = starts[d] + level_size;
    level_size *= n;
  }
  return starts;
}

}  // namespace

Olt::Olt(int k, std::size_t num_atoms, std::size_t root_atom,
         std::vector<std::vector<std::uint16_t>> orders)
    : k_(k),
      num_atoms_(num_atoms),
      root_atom_(root_atom),
      orders_(std::move(orders)),
      level_start_(level_starts(k, num_atoms)) {
  if (k < 0) throw std::invalid_argument("negative olt depth");
  if (root_atom < 1 || root_atom > num_atoms)
    throw std::invalid_argument("root atom index out of range");
  if (orders_.size() != internal_count())
    throw std::invalid_argument("olt needs one child order per internal node");
  for (const auto& order : orders_) {
    if (order.size() != num_atoms)
      throw std::invalid_argument("child order must cover every atom");
    std::vector<bool> seen(num_atoms + 1, false);
    for (auto a : order) {
      if (a < 1 || a > num_atoms || seen[a])
        throw std::invalid_argument("child order is not a permutation");
      seen[a] = true;
    }
  }
}

Olt Olt::uniform(int k, std::size_t num_atoms, std::size_t root_atom) {
  std::vector<std::uint16_t> id_order(num_atoms);
  std::iota(id_order.begin(), id_order.end(), std::uint16_t{1});
  std::size_t internal = level_starts(k, num_atoms)[k];
  return Olt(k, num_atoms, root_atom,
             std::vector<std::vector<std::uint16_t>>(internal, id_order));
}

int Olt::node_depth(NodeId t) const {
  for (int d = 0; d <= k_; ++d) {
    if (t < level_start_[d + 1]) return d;
  }
  throw std::out_of_range("node id out of range");
}

std::size_t Olt::node_label(NodeId t) const {
  if (t == 0) return root_atom_;
  return (t - 1) % num_atoms_ + 1;
}

NodeId Olt::first_step_to(NodeId t) const {
  if (t == 0) throw std::invalid_argument("root has no first step");
  while (parent(t) != 0) t = parent(t);
  return t;
}

Olt Olt::project(int k) const {
  if (k < 0 || k > k_) throw std::invalid_argument("bad projection depth");
  std::size_t internal = level_starts(k, num_atoms_)[k];
  return Olt(k, num_atoms_, root_atom_,
             std::vector<std::vector<std::uint16_t>>(
                 orders_.begin(), orders_.begin() + internal));
}

bool operator<(const Olt& a, const Olt& b) {
  return std::tie(a.k_, a.num_atoms_, a.root_atom_, a.orders_) <
         std::tie(b.k_, b.num_atoms_, b.root_atom_, b.orders_);
}

NodeId ProgressFunction::apply(NodeId t) const {
  auto it = std::lower_bound(
      moves_.begin(), moves_.end(), t,
      [](const auto& move, NodeId key) { return move.first < key; });
  if (it != moves_.end() && it->first == t) return it->second;
  return t;
}

void ProgressFunction::set(NodeId from, NodeId to) {
  auto it = std::lower_bound(
      moves_.begin(), moves_.end(), from,
      [](const auto& move, NodeId key) { return move.first < key; });
  if (it != moves_.end() && it->first == from) {
    if (to == from)
      moves_.erase(it);
    else
      it->second = to;
    return;
  }
  if (to != from) moves_.insert(it, {from, to});
}

bool ProgressFunction::is_k_bounded(const Olt& tree, int k) const {
  for (const auto& [from, to] : moves_) {
    if (tree.node_depth(from) > k) return false;  // deeper nodes must be fixed
    if (tree.node_depth(to) > k) return false;
  }
  return true;
}

BigInt count_olts(int k, const PropSet& props) {
  const std::size_t n = props.num_atoms();
  BigInt factorial = 1;
  for (std::size_t i = 2; i <= n; ++i) factorial *= static_cast<unsigned>(i);
  std::size_t internal = level_starts(k, n)[k];
  BigInt total = static_cast<unsigned>(n);
  for (std::size_t i = 0; i < internal; ++i) total *= factorial;
  return total;
}

namespace {

// Advances a vector of per-node permutations like an odometer (rightmost
// fastest, lexicographic within a node). Returns false after the last one.
bool next_order_assignment(std::vector<std::vector<std::uint16_t>>& orders) {
  for (std::size_t i = orders.size(); i-- > 0;) {
    if (std::next_permutation(orders[i].begin(), orders[i].end()))
      return true;
    // wrapped back to the identity permutation; carry on leftward
  }
  return false;
}

std::vector<std::vector<std::uint16_t>> identity_orders(std::size_t count,
                                                        std::size_t n) {
  std::vector<std::uint16_t> id_order(n);
  std::iota(id_order.begin(), id_order.end(), std::uint16_t{1});
  return std::vector<std::vector<std::uint16_t>>(count, id_order);
}

}  // namespace

std::vector<Olt> enumerate_olts(int k, const PropSet& props,
                                const BigInt& budget) {
  BigInt total = count_olts(k, props);
  if (total > budget) throw BudgetError("olt enumeration", total, budget);

  const std::size_t n = props.num_atoms();
  const std::size_t internal = level_starts(k, n)[k];
  std::vector<Olt> out;
  for (std::size_t root = 1; root <= n; ++root) {
    auto orders = identity_orders(internal, n);
    do {
      out.emplace_back(k, n, root, orders);
    } while (next_order_assignment(orders));
  }
  return out;
}

BigInt count_extensions(const Olt& tree, int k2) {
  const std::size_t n = tree.num_atoms();
  BigInt factorial = 1;
  for (std::size_t i = 2; i <= n; ++i) factorial *= static_cast<unsigned>(i);
  std::size_t old_internal = tree.internal_count();
  std::size_t new_internal = level_starts(k2, n)[k2];
  BigInt total = 1;
  for (std::size_t i = old_internal; i < new_internal; ++i) total *= factorial;
  return total;
}

std::vector<Olt> enumerate_extensions(const Olt& tree, int k2,
                                      const BigInt& budget) {
  if (k2 < tree.depth())
    throw std::invalid_argument("extension depth below tree depth");
  BigInt total = count_extensions(tree, k2);
  if (total > budget) throw BudgetError("olt extensions", total, budget);

  const std::size_t n = tree.num_atoms();
  const std::size_t old_internal = tree.internal_count();
  const std::size_t new_internal = level_starts(k2, n)[k2];
  std::vector<Olt> out;
  auto fresh = identity_orders(new_internal - old_internal, n);
  for (;;) {
    auto orders = tree.orders();
    orders.insert(orders.end(), fresh.begin(), fresh.end());
    out.emplace_back(k2, n, tree.root_atom(), std::move(orders));
    if (!next_order_assignment(fresh)) break;
  }
  return out;
}

namespace {

// The closest child of `t` whose label lies in `atoms`, per t's order.
NodeId closest_child_in(const Olt& tree, NodeId t, const AtomSet& atoms) {
  for (auto a : tree.order_at(t)) {
    if (atoms.contains(a)) return tree.child(t, a);
  }
  throw std::logic_error("atom set has no representative child");
}

void merge_progress(ProgressFunction& into, const ProgressFunction& from) {
  for (const auto& [src, dst] : from.moves()) into.set(src, dst);
}

ProgressFunction progress_entry_rec(const Olt& tree, NodeId from,
                                    const CanonicalEntry& entry,
                                    int depth_remaining);

ProgressFunction progress_map_rec(const Olt& tree, NodeId from,
                                  const CanonicalMap& map,
                                  int depth_remaining) {
  return progress_entry_rec(tree, from, map.at(tree.node_label(from)),
                            depth_remaining);
}

ProgressFunction progress_entry_rec(const Olt& tree, NodeId from,
                                    const CanonicalEntry& entry,
                                    int depth_remaining) {
  ProgressFunction g;
  switch (entry.kind()) {
    case CanonicalEntry::Kind::Noop:
      return g;
    case CanonicalEntry::Kind::DoA: {
      if (depth_remaining < 1)
        throw std::invalid_argument("action deeper than tree");
      g.set(from, closest_child_in(tree, from, entry.atoms()));
      return g;
    }
    case CanonicalEntry::Kind::DoASeq: {
      if (depth_remaining < entry.depth())
        throw std::invalid_argument("action deeper than tree");
      const CanonicalMap& rest = entry.rest()->map();
      for (std::size_t a = 1; a <= tree.num_atoms(); ++a) {
        merge_progress(g, progress_map_rec(tree, tree.child(from, a), rest,
                                           depth_remaining - 1));
      }
      NodeId closest = closest_child_in(tree, from, entry.atoms());
      g.set(from, g.apply(closest));
      return g;
    }
  }
  return g;
}

}  // namespace

ProgressFunction progress_from_entry(const Olt& tree, NodeId from,
                                     const CanonicalEntry& entry) {
  return progress_entry_rec(tree, from, entry,
                            tree.depth() - tree.node_depth(from));
}

ProgressFunction progress_from_map(const CanonicalMap& map, const Olt& tree) {
  if (map.num_atoms() != tree.num_atoms())
    throw std::invalid_argument("canonical map does not match olt");
  return progress_entry_rec(tree, 0, map.at(tree.root_atom()), tree.depth());
}

ProgressFunction progress_of(const Action& action, const Olt& tree,
                             const ActionLibrary& lib) {
  if (depth(action) > tree.depth())
    throw std::invalid_argument("action deeper than tree");
  return progress_from_map(canonical_map(action, lib), tree);
}

OltState apply_f(const Action& action, const OltState& state,
                 const ActionLibrary& lib) {
  if (action.is_noop()) return state;
  if (state.progress.is_identity()) {
    return {state.tree, progress_of(action, state.tree, lib), action};
  }
  if (!state.provenance.has_value())
    throw ProvenanceError(
        "state has a non-identity progress function of unknown origin");
  Action combined = Action::sequence(*state.provenance, action);
  return {state.tree, progress_of(combined, state.tree, lib), combined};
}

bool olt_valuation(const OltState& state, std::size_t prop_index) {
  NodeId target = state.progress.apply(0);
  std::size_t atom_index = state.tree.node_label(target);
  // Reconstruct the atom from its index: mask = N - index.
  std::size_t n = state.tree.num_atoms();
  std::uint64_t mask = static_cast<std::uint64_t>(n - atom_index);
  std::size_t num_props = 0;
  while ((std::size_t{1} << num_props) < n) ++num_props;
  return (mask >> (num_props - 1 - prop_index)) & 1u;
}

OltState olt_selection(const OltState& state, const Formula& effect,
                       const ActionLibrary& lib) {
  AtomSet atoms = atoms_of(effect, lib.props());
  if (atoms.is_empty())
    throw std::invalid_argument("selection effect is unsatisfiable");
  return apply_f(Action::do_effect(atoms.formula(lib.props())), state, lib);
}

}  // namespace seqsavage
