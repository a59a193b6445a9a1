#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "seqsavage/canonical.hpp"
#include "seqsavage/olt.hpp"
#include "seqsavage/preferences.hpp"
#include "seqsavage/representation.hpp"
#include "seqsavage/semantics.hpp"

namespace seqsavage {

// Insertion-ordered JSON keeps every emitted document byte-stable.
using Json = nlohmann::ordered_json;

Json formula_to_json(const Formula& f);
Formula formula_from_json(const Json& j, const PropSet& props);

// Actions serialize as "noop" | {"do": formula} | {"ite": [test, then,
// else]} | {"seq": [first, second]}.
Json action_to_json(const Action& a);
Action action_from_json(const Json& j, const PropSet& props);

// Canonical entries serialize as "noop" | {"doA": [atom indices]} |
// {"doA_seq": [[atom indices], map]} with maps keyed by atom index.
Json canonical_entry_to_json(const CanonicalEntry& e);
CanonicalEntry canonical_entry_from_json(const Json& j, const PropSet& props);
Json canonical_map_to_json(const CanonicalMap& m);
CanonicalMap canonical_map_from_json(const Json& j, const PropSet& props);

// Olts: {"k": int, "root_atom": index, "orders": {path: [indices]}} with
// node paths of dot-joined atom indices from the root ("") downward.
Json olt_to_json(const Olt& tree);
Olt olt_from_json(const Json& j);

// Progress functions: {source path: target path} for non-fixed points.
Json progress_to_json(const ProgressFunction& g, const Olt& tree);
ProgressFunction progress_from_json(const Json& j, const Olt& tree);

Json model_to_json(const SelectionModel& sm);
SelectionModel model_from_json(const Json& j, const PropSet& props);

struct PrefsFile {
  std::optional<std::vector<std::string>> props;
  std::optional<std::vector<std::string>> effects;
  std::vector<std::string> pool;
  std::vector<std::vector<std::size_t>> tiers;
};

PrefsFile prefs_from_json(const Json& j);
Json prefs_to_json(const PreferenceOrder& po, const ActionLibrary& lib);

Json witness_to_json(const CancellationWitness& w, const PreferenceOrder& po,
                     const ActionLibrary& lib);

Json representation_to_json(const Representation& rep,
                            const StateDependentUtility& v,
                            const ActionLibrary& lib);

struct LoadedRepresentation {
  Representation rep;
  StateDependentUtility v;
};

LoadedRepresentation representation_from_json(
    const Json& j, const ActionLibrary& lib,
    const BigInt& budget = BigInt(kDefaultBudget));

}  // namespace seqsavage
