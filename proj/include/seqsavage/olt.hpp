#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "seqsavage/actions.hpp"
#include "seqsavage/canonical.hpp"

namespace seqsavage {

// Nodes are numbered heap-style: the root is 0 and the child of node t
// labeled by atom j (1-based) is t*N + j. Node identity and non-root labels
// are therefore shared across all trees of the same shape; two olts differ
// only in the root label and the per-node child orders. Numbering is
// level by level, so the nodes of the depth-k prefix of a deeper tree are
// exactly the ids below the depth-(k+1) boundary.
using NodeId = std::size_t;

class Olt {
 public:
  // orders[t] lists the child atom indices of internal node t from closest
  // to farthest.
  Olt(int k, std::size_t num_atoms, std::size_t root_atom,
      std::vector<std::vector<std::uint16_t>> orders);

  // Identity child order at every internal node.
  static Olt uniform(int k, std::size_t num_atoms, std::size_t root_atom);

  int depth() const { return k_; }
  std::size_t num_atoms() const { return num_atoms_; }
  std::size_t root_atom() const { return root_atom_; }

  std::size_t node_count() const { return level_start_[k_ + 1]; }
  std::size_t internal_count() const { return level_start_[k_]; }
  bool is_leaf(NodeId t) const { return t >= internal_count(); }
  int node_depth(NodeId t) const;
  // The atom labeling a node; for the root this is the root label.
  std::size_t node_label(NodeId t) const;
  NodeId child(NodeId t, std::size_t atom_index) const {
    return t * num_atoms_ + atom_index;
  }
  NodeId parent(NodeId t) const { return (t - 1) / num_atoms_; }
  // First step on the root-to-t path (t must not be the root).
  NodeId first_step_to(NodeId t) const;

  const std::vector<std::uint16_t>& order_at(NodeId t) const {
    return orders_.at(t);
  }
  const std::vector<std::vector<std::uint16_t>>& orders() const {
    return orders_;
  }

  // The depth-k prefix.
  Olt project(int k) const;

  friend bool operator==(const Olt& a, const Olt& b) {
    return a.k_ == b.k_ && a.num_atoms_ == b.num_atoms_ &&
           a.root_atom_ == b.root_atom_ && a.orders_ == b.orders_;
  }
  friend bool operator<(const Olt& a, const Olt& b);

 private:
  int k_;
  std::size_t num_atoms_;
  std::size_t root_atom_;
  std::vector<std::vector<std::uint16_t>> orders_;
  std::vector<std::size_t> level_start_;  // level_start_[d] = first id at depth d
};

// Sparse map from nodes to descendants; only non-fixed points are stored.
class ProgressFunction {
 public:
  static ProgressFunction identity() { return ProgressFunction(); }

  NodeId apply(NodeId t) const;
  bool is_identity() const { return moves_.empty(); }
  void set(NodeId from, NodeId to);
  const std::vector<std::pair<NodeId, NodeId>>& moves() const {
    return moves_;
  }

  // Every node of depth <= k maps to depth <= k and deeper nodes are fixed.
  bool is_k_bounded(const Olt& tree, int k) const;

  friend bool operator==(const ProgressFunction& a,
                         const ProgressFunction& b) {
    return a.moves_ == b.moves_;
  }
  friend bool operator!=(const ProgressFunction& a,
                         const ProgressFunction& b) {
    return !(a == b);
  }
  friend bool operator<(const ProgressFunction& a,
                        const ProgressFunction& b) {
    return a.moves_ < b.moves_;
  }

 private:
  std::vector<std::pair<NodeId, NodeId>> moves_;  // sorted by source
};

// Number of k-olts: N * (N!)^(number of internal nodes).
BigInt count_olts(int k, const PropSet& props);

// All k-olts in a stable order (root label outer, child orders in
// lexicographic permutation order, node by node).
std::vector<Olt> enumerate_olts(int k, const PropSet& props,
                                const BigInt& budget);

// All depth-k2 extensions of a depth-k1 olt (k2 >= k1): same prefix, every
// assignment of orders to the new internal levels.
std::vector<Olt> enumerate_extensions(const Olt& tree, int k2,
                                      const BigInt& budget);

BigInt count_extensions(const Olt& tree, int k2);

// The progress function a canonical entry induces on the subtree rooted at
// `from`: noop fixes everything; do(phi_A) moves `from` to its closest child
// labeled in A; do(phi_A);gamma moves `from` there and then on through
// gamma, and records on every other subtree node where gamma would take it.
ProgressFunction progress_from_entry(const Olt& tree, NodeId from,
                                     const CanonicalEntry& entry);

// g_{alpha,s}: the entry applied at the root is the canonical map's entry
// for the root label.
ProgressFunction progress_of(const Action& action, const Olt& tree,
                             const ActionLibrary& lib);
ProgressFunction progress_from_map(const CanonicalMap& map, const Olt& tree);

// A state of the constructed model: a tree, how far some action has already
// progressed it, and (when known) that action. The transition rule for a
// non-identity progress function is defined through its generating action,
// so states reached by the library always carry provenance.
struct OltState {
  Olt tree;
  ProgressFunction progress;
  std::optional<Action> provenance;

  static OltState initial(Olt tree) {
    return {std::move(tree), ProgressFunction::identity(), std::nullopt};
  }
};

// f_alpha. From (s, id) this is (s, g_{alpha,s}); from a state produced by
// beta it is f_{beta;alpha}(s, id). Throws ProvenanceError on a non-identity
// progress function with no recorded action.
OltState apply_f(const Action& action, const OltState& state,
                 const ActionLibrary& lib);

// Truth of a proposition at a state: read off the atom labeling g(root).
bool olt_valuation(const OltState& state, std::size_t prop_index);

// The constructed selection function: do the effect's atom-set formula.
OltState olt_selection(const OltState& state, const Formula& effect,
                       const ActionLibrary& lib);

}  // namespace seqsavage
