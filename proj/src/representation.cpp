#include "seqsavage/representation.hpp"

#include <algorithm>
#include <stdexcept>

#include "sd_system.hpp"

namespace seqsavage {

Rational StateDependentUtility::at(std::size_t atom_index,
                                   const CanonicalEntry& entry) const {
  auto it = table.find(Key{atom_index, entry});
  return it == table.end() ? Rational(0) : it->second;
}

Rational StateDependentUtility::action_sum(const CanonicalMap& map) const {
  Rational sum = 0;
  for (std::size_t a = 1; a <= map.num_atoms(); ++a) sum += at(a, map.at(a));
  return sum;
}

StateDependentUtility StateDependentUtility::normalized() const {
  StateDependentUtility out;
  out.k = k;
  if (table.empty()) return out;
  Rational lo = table.begin()->second;
  Rational hi = lo;
  for (const auto& [key, value] : table) {
    lo = std::min(lo, value);
    hi = std::max(hi, value);
  }
  if (lo == hi) return out;  // constant table rescales to all zeros
  Rational span = hi - lo;
  for (const auto& [key, value] : table)
    out.table.emplace(key, (value - lo) / span);
  return out;
}

namespace detail {

SdSystem build_sd_system(const PreferenceOrder& po, const ActionLibrary& lib) {
  SdSystem sys;
  const std::size_t atoms = lib.props().num_atoms();
  for (const auto& action : po.pool())
    sys.maps.push_back(canonical_map(action, lib));
  for (const auto& map : sys.maps) {
    for (std::size_t a = 1; a <= atoms; ++a) {
      SdSystem::VarKey key{a, map.at(a)};
      if (sys.var_index.emplace(key, sys.vars.size()).second)
        sys.vars.push_back(key);
    }
  }
  auto tiers = po.tiers();
  for (const auto& tier : tiers) {
    for (std::size_t i = 0; i + 1 < tier.size(); ++i) {
      sys.eq_lhs.push_back(pair_row(sys, tier[i], tier[i + 1]));
      sys.eq_rhs.push_back(0);
      sys.eq_pairs.emplace_back(tier[i], tier[i + 1]);
    }
  }
  for (std::size_t t = 0; t + 1 < tiers.size(); ++t) {
    sys.ge_lhs.push_back(pair_row(sys, tiers[t][0], tiers[t + 1][0]));
    sys.ge_rhs.push_back(1);
    sys.ge_pairs.emplace_back(tiers[t][0], tiers[t + 1][0]);
  }
  return sys;
}

Vec pair_row(const SdSystem& sys, std::size_t alpha, std::size_t beta) {
  Vec row(sys.vars.size(), 0);
  const std::size_t atoms = sys.maps[alpha].num_atoms();
  for (std::size_t a = 1; a <= atoms; ++a) {
    row[sys.var_index.at({a, sys.maps[alpha].at(a)})] += 1;
    row[sys.var_index.at({a, sys.maps[beta].at(a)})] -= 1;
  }
  return row;
}

}  // namespace detail

MatrixSystem build_matrix(std::size_t atom_index, int k,
                          const ActionLibrary& lib, const BigInt& budget) {
  return build_matrix(atom_index, k, lib,
                      enumerate_olts(k, lib.props(), budget), budget);
}

MatrixSystem build_matrix(std::size_t atom_index, int k,
                          const ActionLibrary& lib,
                          const std::vector<Olt>& all_olts,
                          const BigInt& budget) {
  MatrixSystem ms;
  ms.atom_index = atom_index;
  ms.k = k;
  ms.rows = enumerate_CA_minus(k, lib, budget);
  for (std::size_t i = 0; i < all_olts.size(); ++i) {
    if (all_olts[i].root_atom() == atom_index) ms.olt_indices.push_back(i);
  }
  std::map<std::pair<std::size_t, ProgressFunction>, std::size_t> col_ids;
  ms.hit.assign(ms.rows.size(), {});
  for (std::size_t r = 0; r < ms.rows.size(); ++r) {
    ms.hit[r].reserve(ms.olt_indices.size());
    for (std::size_t olt_index : ms.olt_indices) {
      ProgressFunction g =
          progress_from_entry(all_olts[olt_index], 0, ms.rows[r]);
      auto key = std::make_pair(olt_index, std::move(g));
      auto [it, inserted] = col_ids.emplace(key, ms.cols.size());
      if (inserted) ms.cols.push_back(key);
      ms.hit[r].push_back(it->second);
    }
  }
  return ms;
}

Mat MatrixSystem::dense() const {
  Mat m(rows.size(), Vec(cols.size(), 0));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c : hit[r]) m[r][c] += 1;
  }
  return m;
}

IndependenceResult verify_independence(const MatrixSystem& ms) {
  RankResult rr = row_rank(ms.dense());
  IndependenceResult out;
  out.rank = rr.rank;
  out.ok = rr.rank == ms.rows.size();
  out.dependency = rr.dependency;
  return out;
}

namespace {

std::vector<std::size_t> path_of(NodeId t, std::size_t num_atoms) {
  std::vector<std::size_t> path;
  while (t != 0) {
    path.push_back((t - 1) % num_atoms + 1);
    t = (t - 1) / num_atoms;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

Olt witness_tree(const CanonicalEntry& entry, int k, const ActionLibrary& lib,
                 std::size_t root_atom) {
  if (entry.is_noop())
    throw std::invalid_argument("noop needs no witness tree");
  if (entry.depth() > k)
    throw std::invalid_argument("entry deeper than the requested tree");
  const std::size_t n = lib.props().num_atoms();
  Olt tree = Olt::uniform(k, n, root_atom);
  auto orders = tree.orders();

  // Root order: atoms outside A ascending, then the representative, then
  // the rest of A ascending.
  const AtomSet& atom_set = entry.atoms();
  std::vector<std::uint16_t> root_order;
  for (std::size_t a = 1; a <= n; ++a) {
    if (!atom_set.contains(a)) root_order.push_back(a);
  }
  root_order.push_back(static_cast<std::uint16_t>(atom_set.indices().front()));
  for (std::size_t a : atom_set.indices()) {
    if (a != atom_set.indices().front())
      root_order.push_back(static_cast<std::uint16_t>(a));
  }
  orders[0] = root_order;

  if (entry.kind() == CanonicalEntry::Kind::DoASeq) {
    const CanonicalMap& rest = entry.rest()->map();
    for (std::size_t a = 1; a <= n; ++a) {
      const CanonicalEntry& sub_entry = rest.at(a);
      if (sub_entry.is_noop()) continue;
      Olt sub = witness_tree(sub_entry, k - 1, lib, a);
      for (std::size_t m = 0; m < sub.internal_count(); ++m) {
        // Embed the sub-witness node at the child-a subtree position.
        NodeId target = a;
        for (std::size_t step : path_of(m, n)) target = target * n + step;
        orders[target] = sub.order_at(m);
      }
    }
  }
  return Olt(k, n, root_atom, std::move(orders));
}

SolveStateDependentResult solve_state_dependent(const PreferenceOrder& po,
                                                const ActionLibrary& lib,
                                                int k) {
  CertifyResult certified = certify_cancellation(po, lib, k);
  SolveStateDependentResult out;
  if (certified.ok()) {
    out.utility = *certified.certificate;
    out.utility->k = k;
  } else {
    out.witness = certified.witness;
  }
  return out;
}

UtilityTable solve_utilities(const StateDependentUtility& v,
                             std::size_t atom_index, const ActionLibrary& lib,
                             const BigInt& budget) {
  auto all_olts = enumerate_olts(v.k, lib.props(), budget);
  MatrixSystem ms = build_matrix(atom_index, v.k, lib, all_olts, budget);
  const Rational total(static_cast<unsigned long>(all_olts.size()));
  ms.rhs.clear();
  for (const auto& row : ms.rows) ms.rhs.push_back(total * v.at(atom_index, row));

  auto solution = solve_minimal_support(ms.dense(), ms.rhs);
  if (!solution)
    throw std::logic_error("utility system inconsistent despite independence");
  // Exact residual check.
  Mat m = ms.dense();
  for (std::size_t r = 0; r < m.size(); ++r) {
    Rational acc = 0;
    for (std::size_t c = 0; c < m[r].size(); ++c)
      acc += m[r][c] * (*solution)[c];
    if (acc != ms.rhs[r])
      throw std::logic_error("nonzero residual in utility solve");
  }
  UtilityTable out;
  for (std::size_t c = 0; c < ms.cols.size(); ++c) {
    if ((*solution)[c] != 0) out.emplace(ms.cols[c], (*solution)[c]);
  }
  return out;
}

Rational Representation::u_at(std::size_t olt_index,
                              const ProgressFunction& g) const {
  auto it = u.find({olt_index, g});
  return it == u.end() ? Rational(0) : it->second;
}

Representation assemble(const StateDependentUtility& v,
                        const ActionLibrary& lib, const BigInt& budget) {
  Representation rep;
  rep.k = v.k;
  rep.olts = enumerate_olts(v.k, lib.props(), budget);
  for (std::size_t a = 1; a <= lib.props().num_atoms(); ++a) {
    UtilityTable partial = solve_utilities(v, a, lib, budget);
    rep.u.insert(partial.begin(), partial.end());
  }
  return rep;
}

Rational expected_utility(const Representation& rep, const Action& action,
                          const ActionLibrary& lib) {
  if (depth(action) > rep.k)
    throw std::invalid_argument("action deeper than the representation");
  CanonicalMap map = canonical_map(action, lib);
  Rational sum = 0;
  for (std::size_t i = 0; i < rep.olts.size(); ++i)
    sum += rep.u_at(i, progress_from_map(map, rep.olts[i]));
  return sum * rep.pr_identity();
}

std::optional<RepresentationViolation> verify_representation(
    const Representation& rep, const PreferenceOrder& po,
    const ActionLibrary& lib) {
  std::vector<Rational> eu;
  eu.reserve(po.size());
  for (const auto& action : po.pool())
    eu.push_back(expected_utility(rep, action, lib));
  for (std::size_t i = 0; i < po.size(); ++i) {
    for (std::size_t j = 0; j < po.size(); ++j) {
      bool preferred = po.weakly_prefers(i, j);
      bool modeled = eu[i] >= eu[j];
      if (preferred != modeled)
        return RepresentationViolation{i, j, eu[i], eu[j]};
    }
  }
  return std::nullopt;
}

bool check_utility_identity(const Representation& rep,
                            const StateDependentUtility& v,
                            const ActionLibrary& lib, const BigInt& budget) {
  auto entries = enumerate_CA_minus(rep.k, lib, budget);
  const Rational total(static_cast<unsigned long>(rep.olts.size()));
  for (std::size_t a = 1; a <= lib.props().num_atoms(); ++a) {
    for (const auto& entry : entries) {
      Rational sum = 0;
      for (std::size_t i = 0; i < rep.olts.size(); ++i) {
        if (rep.olts[i].root_atom() != a) continue;
        sum += rep.u_at(i, progress_from_entry(rep.olts[i], 0, entry));
      }
      if (sum != total * v.at(a, entry)) return false;
    }
  }
  return true;
}

namespace {

// Restriction of the pool to actions of depth <= k, keeping tier order.
PreferenceOrder restrict_pool(const PreferenceOrder& po, int k,
                              std::vector<std::size_t>& original_index) {
  std::vector<Action> pool;
  std::vector<std::size_t> tiers;
  original_index.clear();
  for (std::size_t i = 0; i < po.size(); ++i) {
    if (depth(po.pool()[i]) <= k) {
      pool.push_back(po.pool()[i]);
      tiers.push_back(po.tier_of(i));
      original_index.push_back(i);
    }
  }
  return PreferenceOrder(std::move(pool), std::move(tiers));
}

// Do the stored tables agree as total functions on the shallow domain?
bool tables_compatible(const StateDependentUtility& shallow,
                       const StateDependentUtility& deep, int shallow_k) {
  for (const auto& [key, value] : shallow.table) {
    if (deep.at(key.first, key.second) != value) return false;
  }
  for (const auto& [key, value] : deep.table) {
    if (key.second.depth() <= shallow_k &&
        shallow.at(key.first, key.second) != value)
      return false;
  }
  return true;
}

}  // namespace

StitchVResult stitch_v(const std::vector<StateDependentUtility>& vs,
                       const PreferenceOrder& po, const ActionLibrary& lib) {
  StitchVResult result;
  if (vs.empty()) return result;
  result.family.push_back(vs[0]);
  for (std::size_t step = 1; step < vs.size(); ++step) {
    const int k = vs[step].k;
    const StateDependentUtility& prev = result.family.back();
    if (tables_compatible(prev, vs[step], prev.k)) {
      result.family.push_back(vs[step]);
      continue;
    }
    // Re-solve depth k with every previously determined value pinned and a
    // maximized strict margin t.
    std::vector<std::size_t> original_index;
    PreferenceOrder sub = restrict_pool(po, k, original_index);
    detail::SdSystem sys = detail::build_sd_system(sub, lib);

    std::vector<std::optional<Rational>> pin(sys.vars.size());
    std::vector<std::size_t> free_index(sys.vars.size(), 0);
    std::size_t num_free = 0;
    for (std::size_t i = 0; i < sys.vars.size(); ++i) {
      const auto& [atom, entry] = sys.vars[i];
      if (entry.depth() <= prev.k &&
          prev.table.count(StateDependentUtility::Key{atom, entry})) {
        pin[i] = prev.at(atom, entry);
      } else {
        free_index[i] = num_free++;
      }
    }
    const std::size_t t_var = num_free;  // margin variable, last column

    auto shrink = [&](const Vec& row, bool with_margin) {
      Vec out(num_free + 1, 0);
      Rational offset = 0;
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (pin[i])
          offset += row[i] * *pin[i];
        else
          out[free_index[i]] = row[i];
      }
      if (with_margin) out[t_var] = -1;
      return std::make_pair(std::move(out), -offset);
    };

    Mat eq_lhs;
    Vec eq_rhs;
    for (const auto& row : sys.eq_lhs) {
      auto [lhs, rhs] = shrink(row, false);
      eq_lhs.push_back(std::move(lhs));
      eq_rhs.push_back(rhs);
    }
    Mat ge_lhs;
    Vec ge_rhs;
    for (const auto& row : sys.ge_lhs) {
      auto [lhs, rhs] = shrink(row, true);
      ge_lhs.push_back(std::move(lhs));
      ge_rhs.push_back(rhs);
    }
    {
      Vec t_nonneg(num_free + 1, 0);
      t_nonneg[t_var] = 1;
      ge_lhs.push_back(std::move(t_nonneg));
      ge_rhs.push_back(0);
    }
    Vec objective(num_free + 1, 0);
    objective[t_var] = 1;

    LpResult lp =
        solve_lp(num_free + 1, eq_lhs, eq_rhs, ge_lhs, ge_rhs, objective);
    bool strict_ok =
        lp.status == LpResult::Status::Unbounded ||
        (lp.status == LpResult::Status::Feasible && lp.objective_value > 0);
    if (!strict_ok) {
      result.ok = false;
      result.failed_depth = k;
      return result;
    }

    StateDependentUtility stitched;
    stitched.k = k;
    stitched.table = prev.table;  // carry every previously stored key
    for (std::size_t i = 0; i < sys.vars.size(); ++i) {
      Rational value = pin[i] ? *pin[i] : lp.solution[free_index[i]];
      stitched.table[StateDependentUtility::Key{sys.vars[i].first,
                                                sys.vars[i].second}] = value;
    }
    // Newly determined shallow entries were unconstrained at lower depths;
    // propagate them back so the family stays pointwise equal.
    for (std::size_t i = 0; i < sys.vars.size(); ++i) {
      if (pin[i]) continue;
      const auto& [atom, entry] = sys.vars[i];
      for (auto& member : result.family) {
        if (entry.depth() <= member.k)
          member.table[StateDependentUtility::Key{atom, entry}] =
              lp.solution[free_index[i]];
      }
    }
    result.family.push_back(std::move(stitched));
  }
  return result;
}

std::vector<UtilityTable> stitch_u(const std::vector<UtilityTable>& us,
                                   const ActionLibrary& lib,
                                   const BigInt& budget) {
  std::vector<UtilityTable> ws;
  if (us.empty()) return ws;
  ws.push_back(us[0]);
  for (std::size_t step = 1; step < us.size(); ++step) {
    const int k = static_cast<int>(step);      // previous depth
    const int k_next = k + 1;
    auto olts_prev = enumerate_olts(k, lib.props(), budget);
    auto olts_next = enumerate_olts(k_next, lib.props(), budget);
    std::map<Olt, std::size_t> next_index;
    for (std::size_t i = 0; i < olts_next.size(); ++i)
      next_index.emplace(olts_next[i], i);

    UtilityTable w;
    for (const auto& [key, value] : us[step]) {
      if (!key.second.is_k_bounded(olts_next[key.first], k))
        w.emplace(key, value);
    }
    for (const auto& [key, value] : ws.back()) {
      const auto& [olt_index, g] = key;
      for (const auto& ext :
           enumerate_extensions(olts_prev[olt_index], k_next, budget)) {
        // The lift of g fixes every new node, so its moves are unchanged.
        w[{next_index.at(ext), g}] = value;
      }
    }
    ws.push_back(std::move(w));
  }
  return ws;
}

std::optional<PrCompatibilityViolation> check_pr_compatibility(
    int K, const PropSet& props, const BigInt& budget,
    const std::function<Rational(int, std::size_t)>& pr) {
  auto prob = [&](int k, std::size_t idx, std::size_t total) -> Rational {
    if (pr) return pr(k, idx);
    return Rational(1, static_cast<unsigned long>(total));
  };
  for (int k = 1; k < K; ++k) {
    auto base = enumerate_olts(k, props, budget);
    for (int k2 = k + 1; k2 <= K; ++k2) {
      auto extended = enumerate_olts(k2, props, budget);
      std::map<Olt, std::size_t> index;
      for (std::size_t i = 0; i < extended.size(); ++i)
        index.emplace(extended[i], i);
      for (std::size_t s = 0; s < base.size(); ++s) {
        Rational sum = 0;
        for (const auto& ext : enumerate_extensions(base[s], k2, budget))
          sum += prob(k2, index.at(ext), extended.size());
        Rational lhs = prob(k, s, base.size());
        if (lhs != sum)
          return PrCompatibilityViolation{k, k2, s, lhs, sum};
      }
    }
  }
  return std::nullopt;
}

}  // namespace seqsavage
