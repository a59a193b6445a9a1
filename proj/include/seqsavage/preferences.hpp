#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "seqsavage/canonical.hpp"

namespace seqsavage {

class StateDependentUtility;  // representation.hpp

// A complete transitive preference relation over a finite action pool,
// stored as tiers: tier 0 is most preferred, equal tier means indifference.
class PreferenceOrder {
 public:
  PreferenceOrder(std::vector<Action> pool, std::vector<std::size_t> tier_of);

  static PreferenceOrder from_tiers(
      std::vector<Action> pool,
      const std::vector<std::vector<std::size_t>>& tiers);

  // Builds an order from raw weak-preference pairs (i >= j). Rejects
  // incomplete or intransitive data.
  static PreferenceOrder from_pairs(
      std::vector<Action> pool,
      const std::vector<std::pair<std::size_t, std::size_t>>& weak_pairs);

  const std::vector<Action>& pool() const { return pool_; }
  std::size_t size() const { return pool_.size(); }
  std::size_t tier_of(std::size_t i) const { return tier_of_.at(i); }
  std::size_t num_tiers() const { return num_tiers_; }
  std::vector<std::vector<std::size_t>> tiers() const;

  bool weakly_prefers(std::size_t i, std::size_t j) const {
    return tier_of_.at(i) <= tier_of_.at(j);
  }
  bool strictly_prefers(std::size_t i, std::size_t j) const {
    return tier_of_.at(i) < tier_of_.at(j);
  }

  // Index of a structurally equal pool member.
  std::optional<std::size_t> index_of(const Action& action) const;

 private:
  std::vector<Action> pool_;
  std::vector<std::size_t> tier_of_;
  std::size_t num_tiers_ = 0;
};

enum class Relation { Succ, Prec, Indiff };

// Throws std::invalid_argument when either action is not in the pool.
Relation relation(const PreferenceOrder& po, const Action& alpha,
                  const Action& beta);

// A concrete violation of the cancellation axiom: per-atom multisets of
// canonical entries agree across the two tuples, every pair but the last is
// a weak preference, and the balancing conclusion fails (strictly).
struct CancellationWitness {
  std::vector<std::size_t> alphas;  // pool indices, length n
  std::vector<std::size_t> betas;   // pool indices, length n

  std::size_t n() const { return alphas.size(); }
};

// Re-checks a witness from scratch; true iff it is a genuine violation.
bool revalidate(const CancellationWitness& witness, const PreferenceOrder& po,
                const ActionLibrary& lib);

// Pairs of pool actions with equal canonical maps but different tiers; the
// first such pair if any (itself a size-1 cancellation violation).
std::optional<std::pair<std::size_t, std::size_t>> induced_order_welldefined(
    const PreferenceOrder& po, const ActionLibrary& lib);

// Exhaustive search for violations with tuples of size n <= max_n drawn
// from the pool (with repetition). Sound, and complete up to max_n.
std::optional<CancellationWitness> check_cancellation(
    const PreferenceOrder& po, const ActionLibrary& lib, int max_n,
    const BigInt& budget = BigInt(100000000));

// Decides cancellation at every n for the pool via exact feasibility of the
// state-dependent utility system: feasible yields the utility as a
// certificate, infeasible yields a witness unfolded from the Farkas
// multipliers.
struct CertifyResult {
  std::shared_ptr<const StateDependentUtility> certificate;  // when ok
  std::optional<CancellationWitness> witness;                // when violated
  bool ok() const { return certificate != nullptr; }
};

CertifyResult certify_cancellation(const PreferenceOrder& po,
                                   const ActionLibrary& lib, int k);

}  // namespace seqsavage
