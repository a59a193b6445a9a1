#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "seqsavage/canonical.hpp"
#include "seqsavage/linsolve.hpp"
#include "seqsavage/olt.hpp"
#include "seqsavage/preferences.hpp"

namespace seqsavage {

inline constexpr long kDefaultBudget = 100000;

// State-dependent utility: a total function on (atom, canonical entry)
// pairs, stored sparsely with default 0.
class StateDependentUtility {
 public:
  using Key = std::pair<std::size_t, CanonicalEntry>;

  int k = 0;
  std::map<Key, Rational> table;

  Rational at(std::size_t atom_index, const CanonicalEntry& entry) const;

  // Sum over atoms of the value at (a, map(a)); the quantity that orders
  // actions.
  Rational action_sum(const CanonicalMap& map) const;

  // Affine rescale of the stored values into [0,1] (constant tables map to
  // 0). Preserves the induced order.
  StateDependentUtility normalized() const;
};

// The per-atom linear system: one row per canonical entry in CA^{k,-}, one
// column per (olt with root a, progress function) pair some row reaches,
// and a 0/1 entry marking which column each row hits on each olt.
struct MatrixSystem {
  std::size_t atom_index = 0;
  int k = 0;
  std::vector<CanonicalEntry> rows;
  // Column keys; olt indices refer to the shared depth-k enumeration.
  std::vector<std::pair<std::size_t, ProgressFunction>> cols;
  // hit[r][i] = column index reached by row r on the i-th olt of T^k_a.
  std::vector<std::vector<std::size_t>> hit;
  std::vector<std::size_t> olt_indices;  // T^k_a within the enumeration
  Vec rhs;                               // |T^k| * v(a, row), when built with a utility

  Mat dense() const;
};

MatrixSystem build_matrix(std::size_t atom_index, int k,
                          const ActionLibrary& lib,
                          const BigInt& budget = BigInt(kDefaultBudget));
MatrixSystem build_matrix(std::size_t atom_index, int k,
                          const ActionLibrary& lib,
                          const std::vector<Olt>& all_olts,
                          const BigInt& budget);

struct IndependenceResult {
  bool ok = false;
  std::size_t rank = 0;
  std::optional<Vec> dependency;  // nontrivial row combination when not ok
};

IndependenceResult verify_independence(const MatrixSystem& ms);

// The tree from the independence proof: the root order ends with the
// entry's atom set (its chosen representative first), and for a sequenced
// entry each child subtree reuses the witness orders of the continuation's
// entry at that child's atom. Any other entry that induces the same
// progress on this tree is strictly below the given one.
Olt witness_tree(const CanonicalEntry& entry, int k, const ActionLibrary& lib,
                 std::size_t root_atom);

using UtilityTable =
    std::map<std::pair<std::size_t, ProgressFunction>, Rational>;

// Exact solution of M X = U for one atom with pivot columns chosen left to
// right and free variables at zero; keys are (shared olt index, progress).
UtilityTable solve_utilities(const StateDependentUtility& v,
                             std::size_t atom_index, const ActionLibrary& lib,
                             const BigInt& budget = BigInt(kDefaultBudget));

// The synthesized representation. The probability is uniform on identity
// states, zero elsewhere; utility defaults to 0 on states never reached.
struct Representation {
  int k = 0;
  std::vector<Olt> olts;  // the full depth-k enumeration
  UtilityTable u;

  Rational pr_identity() const {
    return Rational(1, static_cast<unsigned long>(olts.size()));
  }
  Rational u_at(std::size_t olt_index, const ProgressFunction& g) const;
};

struct SolveStateDependentResult {
  std::optional<StateDependentUtility> utility;  // raw, unit strict margins
  std::optional<CancellationWitness> witness;    // when infeasible
  bool ok() const { return utility.has_value(); }
};

// Finds a state-dependent utility for the pool order at depth k, or a
// cancellation witness extracted from the infeasibility certificate.
SolveStateDependentResult solve_state_dependent(const PreferenceOrder& po,
                                                const ActionLibrary& lib,
                                                int k);

Representation assemble(const StateDependentUtility& v,
                        const ActionLibrary& lib,
                        const BigInt& budget = BigInt(kDefaultBudget));

Rational expected_utility(const Representation& rep, const Action& action,
                          const ActionLibrary& lib);

struct RepresentationViolation {
  std::size_t alpha;  // pool indices
  std::size_t beta;
  Rational eu_alpha;
  Rational eu_beta;
};

// Checks the defining biconditional for every pool pair, exactly.
std::optional<RepresentationViolation> verify_representation(
    const Representation& rep, const PreferenceOrder& po,
    const ActionLibrary& lib);

// Per-atom identity between the state-dependent utility and the assembled
// table: |T^k| v(a, entry) = sum over T^k_a of u at the entry's progress.
bool check_utility_identity(const Representation& rep,
                            const StateDependentUtility& v,
                            const ActionLibrary& lib,
                            const BigInt& budget = BigInt(kDefaultBudget));

struct StitchVResult {
  bool ok = true;
  int failed_depth = 0;  // when not ok
  std::vector<StateDependentUtility> family;
};

// Makes per-depth utilities agree on shared entries, keeping each depth's
// order intact: depth 1 is kept, each deeper table is re-solved (when
// needed) with the shallower values pinned and the strict margin maximized;
// newly determined shallow entries are propagated back. Fails honestly if a
// pinned step admits no positive margin.
StitchVResult stitch_v(const std::vector<StateDependentUtility>& vs,
                       const PreferenceOrder& po, const ActionLibrary& lib);

// The layered utility rewrite: w^1 = u^1, and at depth k+1 a k-bounded
// state inherits the depth-k value of its projection while any other state
// keeps its own value.
std::vector<UtilityTable> stitch_u(const std::vector<UtilityTable>& us,
                                   const ActionLibrary& lib,
                                   const BigInt& budget = BigInt(kDefaultBudget));

struct PrCompatibilityViolation {
  int k = 0;
  int k2 = 0;
  std::size_t olt_index = 0;
  Rational base;
  Rational extended_sum;
};

// For every k < k2 <= K and every depth-k olt, the probability of the
// identity state equals the summed probability of its depth-k2 extensions.
// The probability defaults to uniform; a custom assignment can be checked
// as a negative control.
std::optional<PrCompatibilityViolation> check_pr_compatibility(
    int K, const PropSet& props, const BigInt& budget = BigInt(kDefaultBudget),
    const std::function<Rational(int, std::size_t)>& pr = {});

}  // namespace seqsavage
