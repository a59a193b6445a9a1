// Command-line front end. Exit codes: 0 success, 1 user error, 2 a check
// failed and a witness/violation was emitted, 3 enumeration budget exceeded.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "seqsavage/json_io.hpp"
#include "seqsavage/oracle.hpp"

namespace ss = seqsavage;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUserError = 1;
constexpr int kExitCheckFailed = 2;
constexpr int kExitBudget = 3;

struct RunConfig {
  std::vector<std::string> props;
  std::vector<std::string> effects;
  std::string action_text;
  std::string prefs_path;
  std::string rep_path;
  std::string model_path;
  std::string olt_path;
  std::string state;
  std::string root_order;
  std::string out_path;
  int depth_override = -1;
  int max_n = 4;
  int olt_depth = -1;
  long budget = ss::kDefaultBudget;
  unsigned long seed = 0;
  bool lax = false;
};

ss::Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file '" + path + "'");
  ss::Json j;
  in >> j;
  return j;
}

void emit(const ss::Json& j, const RunConfig& cfg) {
  if (cfg.out_path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(cfg.out_path);
  if (!out)
    throw std::invalid_argument("cannot write file '" + cfg.out_path + "'");
  out << j.dump(2) << "\n";
}

ss::PropSet props_from(const RunConfig& cfg) {
  if (cfg.props.empty())
    throw std::invalid_argument("no propositions given (use --props)");
  if (cfg.props.size() > 8)
    throw std::invalid_argument("the CLI caps the proposition set at 8");
  return ss::PropSet(cfg.props);
}

ss::ActionLibrary library_from(const RunConfig& cfg) {
  ss::PropSet props = props_from(cfg);
  std::vector<ss::Formula> effects;
  for (const auto& text : cfg.effects)
    effects.push_back(ss::parse_formula(text, props));
  return ss::ActionLibrary(std::move(props), std::move(effects));
}

// Loads prefs; file-embedded props/F are used unless flags were given.
std::pair<ss::ActionLibrary, ss::PreferenceOrder> load_prefs(
    const RunConfig& cfg) {
  ss::PrefsFile file = ss::prefs_from_json(read_json_file(cfg.prefs_path));
  RunConfig merged = cfg;
  if (merged.props.empty() && file.props) merged.props = *file.props;
  if (merged.effects.empty() && file.effects) merged.effects = *file.effects;
  ss::ActionLibrary lib = library_from(merged);
  std::vector<ss::Action> pool;
  for (const auto& text : file.pool)
    pool.push_back(ss::parse_action(text, lib, !merged.lax));
  return {lib, ss::PreferenceOrder::from_tiers(std::move(pool), file.tiers)};
}

int pool_depth(const ss::PreferenceOrder& po) {
  int k = 1;
  for (const auto& a : po.pool()) k = std::max(k, ss::depth(a));
  return k;
}

int cmd_canon(const RunConfig& cfg) {
  ss::ActionLibrary lib = library_from(cfg);
  if (cfg.lax) {
    ss::ActionLibrary lax_lib = lib.extended_with_effects_of(
        ss::parse_action(cfg.action_text, lib, false));
    lib = lax_lib;
  }
  ss::Action action = ss::parse_action(cfg.action_text, lib, !cfg.lax);
  auto gamma = ss::canonical_action(action, lib);
  ss::Json out{{"props", lib.props().names()},
               {"action", ss::to_string(action)},
               {"depth", ss::depth(action)},
               {"map", ss::canonical_map_to_json(gamma->map())},
               {"canonical_action", ss::to_string(gamma->action())},
               {"canonical_action_json", ss::action_to_json(gamma->action())},
               {"canonical_depth", ss::depth(gamma->action())}};
  emit(out, cfg);
  return kExitOk;
}

// Shared by `eval` and `oracle interp`.
int run_eval(const RunConfig& cfg, bool small_step) {
  ss::ActionLibrary lib = library_from(cfg);
  ss::Action action = ss::parse_action(cfg.action_text, lib, !cfg.lax);

  if (cfg.olt_depth >= 0) {
    // Evaluate inside the constructed tree model.
    ss::Olt tree = [&]() {
      if (!cfg.olt_path.empty())
        return ss::olt_from_json(read_json_file(cfg.olt_path));
      std::size_t n = lib.props().num_atoms();
      ss::Olt uniform = ss::Olt::uniform(cfg.olt_depth, n, 1);
      if (cfg.root_order.empty()) return uniform;
      auto orders = uniform.orders();
      std::vector<std::uint16_t> root_order;
      std::stringstream stream(cfg.root_order);
      std::string part;
      while (std::getline(stream, part, ',')) {
        ss::AtomSet atoms =
            ss::atoms_of(ss::parse_formula(part, lib.props()), lib.props());
        if (atoms.size() != 1)
          throw std::invalid_argument(
              "--root-order entries must each pick out one atom");
        root_order.push_back(
            static_cast<std::uint16_t>(atoms.indices().front()));
      }
      orders[0] = root_order;
      return ss::Olt(cfg.olt_depth, n, uniform.root_atom(),
                     std::move(orders));
    }();
    if (!cfg.state.empty()) {
      ss::AtomSet atoms =
          ss::atoms_of(ss::parse_formula(cfg.state, lib.props()), lib.props());
      if (atoms.size() != 1)
        throw std::invalid_argument("--state must pick out one atom");
      tree = ss::Olt(tree.depth(), tree.num_atoms(), atoms.indices().front(),
                     tree.orders());
    }
    ss::OltState start = ss::OltState::initial(tree);
    ss::OltState end =
        small_step
            ? ss::oracle::run_small_step<ss::OltState>(
                  action,
                  [&](const ss::OltState& s, const ss::Formula& f) {
                    std::size_t atom_index =
                        s.tree.node_label(s.progress.apply(0));
                    return ss::eval_formula(
                        f, ss::Atom::from_index(lib.props(), atom_index));
                  },
                  [&](const ss::OltState& s, const ss::Formula& f) {
                    return ss::olt_selection(s, f, lib);
                  },
                  start)
            : ss::apply_f(action, start, lib);
    ss::NodeId target = end.progress.apply(0);
    ss::Json out{
        {"olt", ss::olt_to_json(tree)},
        {"progress", ss::progress_to_json(end.progress, tree)},
        {"final_node_depth", tree.node_depth(target)},
        {"final_atom", tree.node_label(target)},
        {"final_atom_label",
         ss::Atom::from_index(lib.props(), tree.node_label(target))
             .label(lib.props())}};
    emit(out, cfg);
    return kExitOk;
  }

  if (cfg.model_path.empty())
    throw std::invalid_argument("eval needs --model or --olt");
  ss::SelectionModel sm =
      ss::model_from_json(read_json_file(cfg.model_path), lib.props());
  if (cfg.state.empty()) throw std::invalid_argument("eval needs --state");
  std::string result =
      small_step ? ss::oracle::interpret_small_step(action, sm, cfg.state)
                 : ss::interpret(action, sm, cfg.state);
  emit(ss::Json{{"state", result}}, cfg);
  return kExitOk;
}

int cmd_check(const RunConfig& cfg) {
  auto [lib, po] = load_prefs(cfg);
  if (auto pair = ss::induced_order_welldefined(po, lib)) {
    ss::CancellationWitness witness{{pair->first}, {pair->second}};
    if (!po.strictly_prefers(pair->first, pair->second))
      witness = ss::CancellationWitness{{pair->second}, {pair->first}};
    ss::Json out{{"ok", false},
                 {"reason", "induced order not well-defined"},
                 {"witness", ss::witness_to_json(witness, po, lib)}};
    emit(out, cfg);
    return kExitCheckFailed;
  }
  auto witness =
      ss::check_cancellation(po, lib, cfg.max_n, ss::BigInt(cfg.budget));
  auto certified = ss::certify_cancellation(po, lib, pool_depth(po));
  if (!witness && certified.ok()) {
    emit(ss::Json{{"ok", true},
                  {"max_n_searched", cfg.max_n},
                  {"certified", true}},
         cfg);
    return kExitOk;
  }
  const ss::CancellationWitness& w = witness ? *witness : *certified.witness;
  emit(ss::Json{{"ok", false},
                {"reason", "cancellation violated"},
                {"witness", ss::witness_to_json(w, po, lib)}},
       cfg);
  return kExitCheckFailed;
}

int cmd_synthesize(const RunConfig& cfg) {
  auto [lib, po] = load_prefs(cfg);
  int k = cfg.depth_override > 0 ? cfg.depth_override : pool_depth(po);
  if (k < pool_depth(po))
    throw std::invalid_argument("--depth is below the pool's depth");
  auto solved = ss::solve_state_dependent(po, lib, k);
  if (!solved.ok()) {
    emit(ss::Json{{"ok", false},
                  {"reason", "cancellation violated"},
                  {"witness", ss::witness_to_json(*solved.witness, po, lib)}},
         cfg);
    return kExitCheckFailed;
  }
  ss::StateDependentUtility v = solved.utility->normalized();
  v.k = k;
  ss::Representation rep = ss::assemble(v, lib, ss::BigInt(cfg.budget));
  if (auto violation = ss::verify_representation(rep, po, lib))
    throw std::logic_error("synthesized representation failed verification");
  emit(ss::representation_to_json(rep, v, lib), cfg);
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg) {
  auto [lib, po] = load_prefs(cfg);
  auto loaded = ss::representation_from_json(read_json_file(cfg.rep_path),
                                             lib, ss::BigInt(cfg.budget));
  if (auto violation = ss::verify_representation(loaded.rep, po, lib)) {
    emit(ss::Json{{"ok", false},
                  {"alpha", ss::to_string(po.pool()[violation->alpha])},
                  {"beta", ss::to_string(po.pool()[violation->beta])},
                  {"eu_alpha", ss::to_fraction_string(violation->eu_alpha)},
                  {"eu_beta", ss::to_fraction_string(violation->eu_beta)}},
         cfg);
    return kExitCheckFailed;
  }
  bool identity = ss::check_utility_identity(loaded.rep, loaded.v, lib,
                                             ss::BigInt(cfg.budget));
  if (auto pr = ss::check_pr_compatibility(loaded.rep.k, lib.props(),
                                           ss::BigInt(cfg.budget))) {
    emit(ss::Json{{"ok", false}, {"reason", "probability incompatibility"}},
         cfg);
    return kExitCheckFailed;
  }
  emit(ss::Json{{"ok", identity},
                {"pairs_checked", po.size() * po.size()},
                {"utility_identity", identity}},
       cfg);
  return identity ? kExitOk : kExitCheckFailed;
}

int cmd_oracle(const RunConfig& cfg, const std::string& sub) {
  if (sub == "interp") return run_eval(cfg, /*small_step=*/true);
  if (sub == "truth-table") {
    ss::PropSet props = props_from(cfg);
    ss::Formula f = ss::parse_formula(cfg.action_text, props);
    ss::Json rows = ss::Json::array();
    for (std::size_t i = 1; i <= props.num_atoms(); ++i) {
      ss::Atom a = ss::Atom::from_index(props, i);
      rows.push_back(ss::Json{{"atom", i},
                              {"label", a.label(props)},
                              {"value", ss::eval_formula(f, a)}});
    }
    emit(ss::Json{{"formula", ss::to_string(f)}, {"rows", rows}}, cfg);
    return kExitOk;
  }
  if (sub == "canc") {
    auto [lib, po] = load_prefs(cfg);
    auto witness =
        ss::check_cancellation(po, lib, cfg.max_n, ss::BigInt(cfg.budget));
    if (!witness) {
      emit(ss::Json{{"ok", true}, {"max_n_searched", cfg.max_n}}, cfg);
      return kExitOk;
    }
    emit(ss::Json{{"ok", false},
                  {"witness", ss::witness_to_json(*witness, po, lib)}},
         cfg);
    return kExitCheckFailed;
  }
  throw std::invalid_argument("unknown oracle subcommand '" + sub + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sequential language-based decision toolkit"};
  app.require_subcommand(1);

  RunConfig cfg;
  if (const char* env = std::getenv("SEQSAVAGE_BUDGET"))
    cfg.budget = std::strtol(env, nullptr, 10);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--props", cfg.props, "comma separated propositions")
        ->delimiter(',');
    sub->add_option("--F", cfg.effects, "effect formula (repeatable)");
    sub->add_option("--budget", cfg.budget, "enumeration budget");
    sub->add_option("--seed", cfg.seed, "seed for generated inputs");
    sub->add_option("--out", cfg.out_path, "write JSON output to a file");
    sub->add_flag("--lax", cfg.lax,
                  "admit any satisfiable do-effect, enlarging F");
  };

  CLI::App* canon = app.add_subcommand("canon", "canonical map and action");
  add_common(canon);
  canon->add_option("--action", cfg.action_text, "action text")->required();

  CLI::App* eval = app.add_subcommand("eval", "interpret an action");
  add_common(eval);
  eval->add_option("--action", cfg.action_text, "action text")->required();
  eval->add_option("--model", cfg.model_path, "selection model JSON file");
  eval->add_option("--state", cfg.state,
                   "start state id (or atom label with --olt)");
  eval->add_option("--olt", cfg.olt_depth, "evaluate in a depth-k tree model");
  eval->add_option("--olt-file", cfg.olt_path, "tree JSON file");
  eval->add_option("--root-order", cfg.root_order,
                   "comma separated atom labels, closest first");

  CLI::App* check = app.add_subcommand("check", "cancellation checks");
  add_common(check);
  check->add_option("--prefs", cfg.prefs_path, "preferences JSON file")
      ->required();
  check->add_option("--max-n", cfg.max_n, "exhaustive search bound");

  CLI::App* synthesize =
      app.add_subcommand("synthesize", "construct a representation");
  add_common(synthesize);
  synthesize->add_option("--prefs", cfg.prefs_path, "preferences JSON file")
      ->required();
  synthesize->add_option("--depth", cfg.depth_override,
                         "representation depth (default: pool depth)");

  CLI::App* verify = app.add_subcommand("verify", "verify a representation");
  add_common(verify);
  verify->add_option("--prefs", cfg.prefs_path, "preferences JSON file")
      ->required();
  verify->add_option("--rep", cfg.rep_path, "representation JSON file")
      ->required();

  CLI::App* oracle = app.add_subcommand("oracle", "brute-force references");
  oracle->require_subcommand(1);
  std::vector<std::string> oracle_names = {"interp", "truth-table", "canc"};
  for (const auto& name : oracle_names) {
    CLI::App* sub = oracle->add_subcommand(name);
    add_common(sub);
    if (name == "interp") {
      sub->add_option("--action", cfg.action_text, "action text")->required();
      sub->add_option("--model", cfg.model_path, "selection model JSON file");
      sub->add_option("--state", cfg.state, "start state");
      sub->add_option("--olt", cfg.olt_depth, "tree depth");
      sub->add_option("--olt-file", cfg.olt_path, "tree JSON file");
      sub->add_option("--root-order", cfg.root_order, "root order");
    } else if (name == "truth-table") {
      sub->add_option("--formula", cfg.action_text, "formula text")
          ->required();
    } else {
      sub->add_option("--prefs", cfg.prefs_path, "preferences JSON file")
          ->required();
      sub->add_option("--max-n", cfg.max_n, "search bound");
    }
  }

  CLI11_PARSE(app, argc, argv);

  auto fail_json = [](const std::string& kind, const std::string& message) {
    std::cerr << ss::Json{{"error", kind}, {"message", message}}.dump()
              << "\n";
  };

  try {
    if (app.got_subcommand(canon)) return cmd_canon(cfg);
    if (app.got_subcommand(eval)) return run_eval(cfg, false);
    if (app.got_subcommand(check)) return cmd_check(cfg);
    if (app.got_subcommand(synthesize)) return cmd_synthesize(cfg);
    if (app.got_subcommand(verify)) return cmd_verify(cfg);
    if (app.got_subcommand(oracle)) {
      for (const auto& name : oracle_names) {
        if (oracle->got_subcommand(name)) return cmd_oracle(cfg, name);
      }
    }
    fail_json("usage", "no subcommand");
    return kExitUserError;
  } catch (const ss::BudgetError& e) {
    fail_json("budget", e.what());
    return kExitBudget;
  } catch (const ss::ParseError& e) {
    fail_json("parse", e.what());
    return kExitUserError;
  } catch (const ss::ValidationError& e) {
    fail_json("validation", e.what());
    return kExitUserError;
  } catch (const std::invalid_argument& e) {
    fail_json("input", e.what());
    return kExitUserError;
  } catch (const std::exception& e) {
    fail_json("internal", e.what());
    return kExitUserError;
  }
}
