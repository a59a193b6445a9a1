#pragma once

#include <map>
#include <utility>
#include <vector>

#include "seqsavage/canonical.hpp"
#include "seqsavage/linsolve.hpp"
#include "seqsavage/preferences.hpp"

namespace seqsavage::detail {

// The linear system whose feasibility is equivalent to the pool order
// having a state-dependent utility: one variable per (atom, canonical
// entry) pair touched by the pool, per-tier equality chains, and a
// unit-margin inequality between consecutive tiers.
struct SdSystem {
  using VarKey = std::pair<std::size_t, CanonicalEntry>;  // (atom index, entry)

  std::vector<VarKey> vars;                 // column order
  std::map<VarKey, std::size_t> var_index;
  std::vector<CanonicalMap> maps;           // per pool action

  Mat eq_lhs;
  Vec eq_rhs;
  Mat ge_lhs;
  Vec ge_rhs;
  // Pool-index pairs annotating each row, oriented (preferred, other);
  // equality rows relate indifferent actions, inequality rows strict ones.
  std::vector<std::pair<std::size_t, std::size_t>> eq_pairs;
  std::vector<std::pair<std::size_t, std::size_t>> ge_pairs;
};

SdSystem build_sd_system(const PreferenceOrder& po, const ActionLibrary& lib);

// The +1/-1 column pattern of sum_a v(a, c_alpha(a)) - sum_a v(a, c_beta(a)).
Vec pair_row(const SdSystem& sys, std::size_t alpha, std::size_t beta);

}  // namespace seqsavage::detail
