#include "seqsavage/preferences.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "seqsavage/representation.hpp"
#include "sd_system.hpp"

namespace seqsavage {

PreferenceOrder::PreferenceOrder(std::vector<Action> pool,
                                 std::vector<std::size_t> tier_of)
    : pool_(std::move(pool)), tier_of_(std::move(tier_of)) {
  if (pool_.size() != tier_of_.size())
    throw std::invalid_argument("one tier per pool action required");
  if (pool_.empty()) {
    num_tiers_ = 0;
    return;
  }
  // Normalize tier values to dense ranks 0..T-1.
  std::vector<std::size_t> values = tier_of_;
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  for (auto& t : tier_of_) {
    t = static_cast<std::size_t>(
        std::lower_bound(values.begin(), values.end(), t) - values.begin());
  }
  num_tiers_ = values.size();
}

PreferenceOrder PreferenceOrder::from_tiers(
    std::vector<Action> pool,
    const std::vector<std::vector<std::size_t>>& tiers) {
  std::vector<std::size_t> tier_of(pool.size(), pool.size());
  std::size_t assigned = 0;
  for (std::size_t t = 0; t < tiers.size(); ++t) {
    for (std::size_t i : tiers[t]) {
      if (i >= pool.size())
        throw std::invalid_argument("tier names an out-of-range pool index");
      if (tier_of[i] != pool.size())
        throw std::invalid_argument("pool index appears in two tiers");
      tier_of[i] = t;
      ++assigned;
    }
  }
  if (assigned != pool.size())
    throw std::invalid_argument("every pool action needs a tier");
  return PreferenceOrder(std::move(pool), std::move(tier_of));
}

PreferenceOrder PreferenceOrder::from_pairs(
    std::vector<Action> pool,
    const std::vector<std::pair<std::size_t, std::size_t>>& weak_pairs) {
  const std::size_t n = pool.size();
  std::vector<std::vector<bool>> geq(n, std::vector<bool>(n, false));
  for (auto [i, j] : weak_pairs) {
    if (i >= n || j >= n)
      throw std::invalid_argument("pair names an out-of-range pool index");
    geq[i][j] = true;
  }
  for (std::size_t i = 0; i < n; ++i) geq[i][i] = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && !geq[i][j] && !geq[j][i])
        throw std::invalid_argument(
            "incomplete preference data: indices " + std::to_string(i) +
            " and " + std::to_string(j) + " are unrelated");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!geq[i][j]) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (geq[j][k] && !geq[i][k])
          throw std::invalid_argument(
              "intransitive preference data via indices " +
              std::to_string(i) + ", " + std::to_string(j) + ", " +
              std::to_string(k));
      }
    }
  }
  // tier(i) = number of actions strictly preferred to i, compressed.
  std::vector<std::size_t> tier_of(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (geq[j][i] && !geq[i][j]) ++tier_of[i];
    }
  }
  return PreferenceOrder(std::move(pool), std::move(tier_of));
}

std::vector<std::vector<std::size_t>> PreferenceOrder::tiers() const {
  std::vector<std::vector<std::size_t>> out(num_tiers_);
  for (std::size_t i = 0; i < pool_.size(); ++i) out[tier_of_[i]].push_back(i);
  return out;
}

std::optional<std::size_t> PreferenceOrder::index_of(
    const Action& action) const {
  for (std::size_t i = 0; i < pool_.size(); ++i) {
    if (pool_[i] == action) return i;
  }
  return std::nullopt;
}

Relation relation(const PreferenceOrder& po, const Action& alpha,
                  const Action& beta) {
  auto i = po.index_of(alpha);
  auto j = po.index_of(beta);
  if (!i || !j) throw std::invalid_argument("action not in the pool");
  if (po.tier_of(*i) == po.tier_of(*j)) return Relation::Indiff;
  return po.tier_of(*i) < po.tier_of(*j) ? Relation::Succ : Relation::Prec;
}

bool revalidate(const CancellationWitness& witness, const PreferenceOrder& po,
                const ActionLibrary& lib) {
  const std::size_t n = witness.n();
  if (n == 0 || witness.betas.size() != n) return false;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!po.weakly_prefers(witness.alphas[i], witness.betas[i])) return false;
  }
  if (!po.strictly_prefers(witness.alphas[n - 1], witness.betas[n - 1]))
    return false;
  std::vector<CanonicalMap> alpha_maps, beta_maps;
  for (std::size_t i = 0; i < n; ++i) {
    alpha_maps.push_back(canonical_map(po.pool()[witness.alphas[i]], lib));
    beta_maps.push_back(canonical_map(po.pool()[witness.betas[i]], lib));
  }
  const std::size_t atoms = lib.props().num_atoms();
  for (std::size_t a = 1; a <= atoms; ++a) {
    std::vector<CanonicalEntry> lhs, rhs;
    for (std::size_t i = 0; i < n; ++i) {
      lhs.push_back(alpha_maps[i].at(a));
      rhs.push_back(beta_maps[i].at(a));
    }
    std::sort(lhs.begin(), lhs.end());
    std::sort(rhs.begin(), rhs.end());
    if (!(lhs == rhs)) return false;
  }
  return true;
}

std::optional<std::pair<std::size_t, std::size_t>> induced_order_welldefined(
    const PreferenceOrder& po, const ActionLibrary& lib) {
  std::map<CanonicalMap, std::size_t> seen;
  for (std::size_t i = 0; i < po.size(); ++i) {
    CanonicalMap m = canonical_map(po.pool()[i], lib);
    auto [it, inserted] = seen.emplace(std::move(m), i);
    if (!inserted && po.tier_of(it->second) != po.tier_of(i)) {
      return std::make_pair(it->second, i);
    }
  }
  return std::nullopt;
}

namespace {

using Pair = std::pair<std::size_t, std::size_t>;
using Delta = std::vector<int>;

// Per-pair difference of canonical-entry indicator vectors, indexed by
// (atom, entry id).
Delta pair_delta(const std::vector<CanonicalMap>& maps,
                 const std::map<CanonicalEntry, std::size_t>& entry_ids,
                 std::size_t atoms, const Pair& p) {
  Delta d(atoms * entry_ids.size(), 0);
  for (std::size_t a = 1; a <= atoms; ++a) {
    d[(a - 1) * entry_ids.size() + entry_ids.at(maps[p.first].at(a))] += 1;
    d[(a - 1) * entry_ids.size() + entry_ids.at(maps[p.second].at(a))] -= 1;
  }
  return d;
}

Delta add(const Delta& a, const Delta& b) {
  Delta out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Delta neg(const Delta& a) {
  Delta out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
  return out;
}

bool is_zero(const Delta& a) {
  return std::all_of(a.begin(), a.end(), [](int v) { return v == 0; });
}

}  // namespace

std::optional<CancellationWitness> check_cancellation(const PreferenceOrder& po,
                                                      const ActionLibrary& lib,
                                                      int max_n,
                                                      const BigInt& budget) {
  if (max_n < 1) throw std::invalid_argument("max_n must be at least 1");
  const std::size_t atoms = lib.props().num_atoms();

  std::vector<CanonicalMap> maps;
  std::map<CanonicalEntry, std::size_t> entry_ids;
  for (const auto& action : po.pool()) {
    maps.push_back(canonical_map(action, lib));
    for (const auto& e : maps.back().entries()) {
      entry_ids.emplace(e, entry_ids.size());
    }
  }
  // Re-number entries by their sorted order so ids are deterministic.
  {
    std::size_t next = 0;
    for (auto& [entry, id] : entry_ids) id = next++;
  }

  std::vector<Pair> weak, strict;
  for (std::size_t i = 0; i < po.size(); ++i) {
    for (std::size_t j = 0; j < po.size(); ++j) {
      if (po.weakly_prefers(i, j)) weak.emplace_back(i, j);
      if (po.strictly_prefers(i, j)) strict.emplace_back(i, j);
    }
  }
  std::vector<Delta> weak_d, strict_d;
  for (const auto& p : weak)
    weak_d.push_back(pair_delta(maps, entry_ids, atoms, p));
  for (const auto& p : strict)
    strict_d.push_back(pair_delta(maps, entry_ids, atoms, p));

  auto over_budget = [&](int n_reached, const BigInt& work) {
    if (work > budget)
      throw BudgetError("cancellation search at n = " +
                            std::to_string(n_reached),
                        work, budget);
  };

  // n = 1: a strict pair with identical canonical maps.
  over_budget(1, BigInt(strict.size()));
  for (std::size_t s = 0; s < strict.size(); ++s) {
    if (is_zero(strict_d[s]))
      return CancellationWitness{{strict[s].first}, {strict[s].second}};
  }
  if (max_n == 1) return std::nullopt;

  // Index of single weak-pair deltas (first pair wins per delta).
  std::map<Delta, std::size_t> weak_by_delta;
  for (std::size_t q = 0; q < weak.size(); ++q)
    weak_by_delta.emplace(weak_d[q], q);

  // n = 2: strict delta cancelled by one weak delta.
  over_budget(2, BigInt(strict.size()));
  for (std::size_t s = 0; s < strict.size(); ++s) {
    auto it = weak_by_delta.find(neg(strict_d[s]));
    if (it != weak_by_delta.end()) {
      const Pair& q = weak[it->second];
      return CancellationWitness{{q.first, strict[s].first},
                                 {q.second, strict[s].second}};
    }
  }
  if (max_n == 2) return std::nullopt;

  // n = 3: strict delta plus one weak delta cancelled by another weak delta.
  over_budget(3, BigInt(strict.size()) * BigInt(weak.size()));
  for (std::size_t s = 0; s < strict.size(); ++s) {
    for (std::size_t q = 0; q < weak.size(); ++q) {
      auto it = weak_by_delta.find(neg(add(strict_d[s], weak_d[q])));
      if (it != weak_by_delta.end()) {
        const Pair& r = weak[it->second];
        return CancellationWitness{
            {r.first, weak[q].first, strict[s].first},
            {r.second, weak[q].second, strict[s].second}};
      }
    }
  }
  if (max_n == 3) return std::nullopt;
  if (max_n > 4)
    throw std::invalid_argument(
        "exhaustive cancellation search supports max_n <= 4; use the "
        "certificate route beyond that");

  // n = 4: meet in the middle over pairs of weak deltas.
  over_budget(4, BigInt(weak.size()) * BigInt(weak.size()));
  std::map<Delta, Pair> weak2_by_delta;  // delta -> (q1, q2) indices
  for (std::size_t q1 = 0; q1 < weak.size(); ++q1) {
    for (std::size_t q2 = q1; q2 < weak.size(); ++q2) {
      weak2_by_delta.emplace(add(weak_d[q1], weak_d[q2]),
                             Pair{q1, q2});
    }
  }
  for (std::size_t s = 0; s < strict.size(); ++s) {
    for (std::size_t q = 0; q < weak.size(); ++q) {
      auto it = weak2_by_delta.find(neg(add(strict_d[s], weak_d[q])));
      if (it != weak2_by_delta.end()) {
        const Pair& r1 = weak[it->second.first];
        const Pair& r2 = weak[it->second.second];
        return CancellationWitness{
            {r1.first, r2.first, weak[q].first, strict[s].first},
            {r1.second, r2.second, weak[q].second, strict[s].second}};
      }
    }
  }
  return std::nullopt;
}

CertifyResult certify_cancellation(const PreferenceOrder& po,
                                   const ActionLibrary& lib, int k) {
  for (const auto& action : po.pool()) {
    if (depth(action) > k)
      throw std::invalid_argument("pool action deeper than k");
  }
  detail::SdSystem sys = detail::build_sd_system(po, lib);
  LpResult lp = solve_lp(sys.vars.size(), sys.eq_lhs, sys.eq_rhs,
                         sys.ge_lhs, sys.ge_rhs, std::nullopt);
  CertifyResult result;
  if (lp.status == LpResult::Status::Feasible) {
    auto cert = std::make_shared<StateDependentUtility>();
    cert->k = k;
    for (std::size_t i = 0; i < sys.vars.size(); ++i)
      cert->table.emplace(sys.vars[i], lp.solution[i]);
    result.certificate = std::move(cert);
    return result;
  }

  // Unfold the Farkas certificate into tuple multiplicities: scale the
  // multipliers to smallest integers, orient equality pairs by sign, and
  // repeat each pair per its multiplicity, one strict pair last.
  BigInt lcm_den = 1;
  for (const auto& m : lp.farkas_eq)
    if (m != 0) lcm_den = boost::multiprecision::lcm(lcm_den, denominator(m));
  for (const auto& m : lp.farkas_ge)
    if (m != 0) lcm_den = boost::multiprecision::lcm(lcm_den, denominator(m));
  std::vector<std::pair<Pair, BigInt>> weak_counts;  // oriented (>=) pairs
  std::vector<std::pair<Pair, BigInt>> strict_counts;
  BigInt gcd_all = 0;
  auto record = [&](const Pair& pair, const Rational& mult, bool strict) {
    if (mult == 0) return;
    Rational scaled = mult * Rational(lcm_den);
    BigInt count = numerator(scaled);
    Pair oriented = pair;
    if (count < 0) {
      if (strict) throw std::logic_error("negative strict multiplier");
      oriented = {pair.second, pair.first};
      count = -count;
    }
    gcd_all = boost::multiprecision::gcd(gcd_all, count);
    (strict ? strict_counts : weak_counts).emplace_back(oriented, count);
  };
  for (std::size_t i = 0; i < sys.eq_pairs.size(); ++i)
    record(sys.eq_pairs[i], lp.farkas_eq[i], false);
  for (std::size_t i = 0; i < sys.ge_pairs.size(); ++i)
    record(sys.ge_pairs[i], lp.farkas_ge[i], true);
  if (strict_counts.empty())
    throw std::logic_error("Farkas certificate without a strict pair");

  CancellationWitness witness;
  auto emit = [&](const Pair& pair, const BigInt& count) {
    for (BigInt c = 0; c < count; ++c) {
      witness.alphas.push_back(pair.first);
      witness.betas.push_back(pair.second);
    }
  };
  for (const auto& [pair, count] : weak_counts) emit(pair, count / gcd_all);
  // All strict pairs are premises too, except one copy saved for last.
  for (std::size_t i = 0; i < strict_counts.size(); ++i) {
    BigInt count = strict_counts[i].second / gcd_all;
    if (i + 1 == strict_counts.size()) count -= 1;
    emit(strict_counts[i].first, count);
  }
  emit(strict_counts.back().first, 1);

  if (!revalidate(witness, po, lib))
    throw std::logic_error("extracted witness failed revalidation");
  result.witness = std::move(witness);
  return result;
}

}  // namespace seqsavage
