#include "seqsavage/json_io.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace seqsavage {

namespace {

[[noreturn]] void bad(const std::string& what) {
  throw std::invalid_argument("malformed JSON: " + what);
}

std::string path_to_string(NodeId t, std::size_t num_atoms) {
  std::vector<std::size_t> path;
  while (t != 0) {
    path.push_back((t - 1) % num_atoms + 1);
    t = (t - 1) / num_atoms;
  }
  std::reverse(path.begin(), path.end());
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i > 0) out += ".";
    out += std::to_string(path[i]);
  }
  return out;
}

NodeId path_from_string(const std::string& text, std::size_t num_atoms) {
  NodeId t = 0;
  if (text.empty()) return t;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, '.')) {
    std::size_t step = std::stoul(part);
    if (step < 1 || step > num_atoms) bad("path step out of range");
    t = t * num_atoms + step;
  }
  return t;
}

}  // namespace

Json formula_to_json(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Prop:
      return Json{{"prop", f.prop_name()}};
    case Formula::Kind::Top:
      return Json{{"op", "true"}};
    case Formula::Kind::Bottom:
      return Json{{"op", "false"}};
    case Formula::Kind::Not:
      return Json{{"op", "not"}, {"args", Json::array({formula_to_json(f.lhs())})}};
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
    case Formula::Kind::Iff: {
      const char* op = f.kind() == Formula::Kind::And       ? "and"
                       : f.kind() == Formula::Kind::Or      ? "or"
                       : f.kind() == Formula::Kind::Implies ? "implies"
                                                            : "iff";
      return Json{{"op", op},
                  {"args", Json::array({formula_to_json(f.lhs()),
                                        formula_to_json(f.rhs())})}};
    }
  }
  bad("unknown formula kind");
}

Formula formula_from_json(const Json& j, const PropSet& props) {
  if (!j.is_object()) bad("formula must be an object");
  if (j.contains("prop")) return Formula::prop(props, j["prop"].get<std::string>());
  if (!j.contains("op")) bad("formula needs 'prop' or 'op'");
  std::string op = j["op"].get<std::string>();
  if (op == "true") return Formula::top();
  if (op == "false") return Formula::bottom();
  const Json& args = j.at("args");
  if (op == "not") {
    if (args.size() != 1) bad("'not' takes one argument");
    return Formula::negation(formula_from_json(args[0], props));
  }
  if (args.size() != 2) bad("binary operator takes two arguments");
  Formula l = formula_from_json(args[0], props);
  Formula r = formula_from_json(args[1], props);
  if (op == "and") return Formula::conjunction(std::move(l), std::move(r));
  if (op == "or") return Formula::disjunction(std::move(l), std::move(r));
  if (op == "implies") return Formula::implication(std::move(l), std::move(r));
  if (op == "iff") return Formula::biconditional(std::move(l), std::move(r));
  bad("unknown operator '" + op + "'");
}

Json action_to_json(const Action& a) {
  switch (a.kind()) {
    case Action::Kind::Noop:
      return Json("noop");
    case Action::Kind::Do:
      return Json{{"do", formula_to_json(a.effect())}};
    case Action::Kind::IfThenElse:
      return Json{{"ite", Json::array({formula_to_json(a.test()),
                                       action_to_json(a.then_branch()),
                                       action_to_json(a.else_branch())})}};
    case Action::Kind::Seq:
      return Json{{"seq", Json::array({action_to_json(a.first()),
                                       action_to_json(a.second())})}};
  }
  bad("unknown action kind");
}

Action action_from_json(const Json& j, const PropSet& props) {
  if (j.is_string()) {
    if (j.get<std::string>() == "noop") return Action::noop();
    bad("unknown action tag '" + j.get<std::string>() + "'");
  }
  if (!j.is_object()) bad("action must be a string or an object");
  if (j.contains("do")) return Action::do_effect(formula_from_json(j["do"], props));
  if (j.contains("ite")) {
    const Json& args = j["ite"];
    if (args.size() != 3) bad("'ite' takes three arguments");
    return Action::if_then_else(formula_from_json(args[0], props),
                                action_from_json(args[1], props),
                                action_from_json(args[2], props));
  }
  if (j.contains("seq")) {
    const Json& args = j["seq"];
    if (args.size() != 2) bad("'seq' takes two arguments");
    return Action::sequence(action_from_json(args[0], props),
                            action_from_json(args[1], props));
  }
  bad("action needs 'do', 'ite' or 'seq'");
}

Json canonical_entry_to_json(const CanonicalEntry& e) {
  switch (e.kind()) {
    case CanonicalEntry::Kind::Noop:
      return Json("noop");
    case CanonicalEntry::Kind::DoA:
      return Json{{"doA", e.atoms().indices()}};
    case CanonicalEntry::Kind::DoASeq:
      return Json{{"doA_seq",
                   Json::array({Json(e.atoms().indices()),
                                canonical_map_to_json(e.rest()->map())})}};
  }
  bad("unknown canonical entry kind");
}

CanonicalEntry canonical_entry_from_json(const Json& j, const PropSet& props) {
  const std::size_t n = props.num_atoms();
  if (j.is_string()) {
    if (j.get<std::string>() == "noop") return CanonicalEntry::noop();
    bad("unknown canonical entry tag");
  }
  if (j.contains("doA")) {
    return CanonicalEntry::do_atoms(
        AtomSet(n, j["doA"].get<std::vector<std::size_t>>()));
  }
  if (j.contains("doA_seq")) {
    const Json& args = j["doA_seq"];
    if (args.size() != 2) bad("'doA_seq' takes two arguments");
    AtomSet atoms(n, args[0].get<std::vector<std::size_t>>());
    CanonicalMap rest = canonical_map_from_json(args[1], props);
    return CanonicalEntry::do_atoms_then(
        std::move(atoms), CanonicalAction::make(std::move(rest), props));
  }
  bad("canonical entry needs 'doA' or 'doA_seq'");
}

Json canonical_map_to_json(const CanonicalMap& m) {
  Json out = Json::object();
  for (std::size_t a = 1; a <= m.num_atoms(); ++a)
    out[std::to_string(a)] = canonical_entry_to_json(m.at(a));
  return out;
}

CanonicalMap canonical_map_from_json(const Json& j, const PropSet& props) {
  const std::size_t n = props.num_atoms();
  std::vector<CanonicalEntry> entries(n, CanonicalEntry::noop());
  std::vector<bool> seen(n, false);
  for (const auto& [key, value] : j.items()) {
    std::size_t a = std::stoul(key);
    if (a < 1 || a > n) bad("atom index out of range in canonical map");
    entries[a - 1] = canonical_entry_from_json(value, props);
    seen[a - 1] = true;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    bad("canonical map must cover every atom");
  return CanonicalMap(std::move(entries));
}

Json olt_to_json(const Olt& tree) {
  Json orders = Json::object();
  for (std::size_t t = 0; t < tree.internal_count(); ++t) {
    Json order = Json::array();
    for (auto a : tree.order_at(t)) order.push_back(a);
    orders[path_to_string(t, tree.num_atoms())] = std::move(order);
  }
  return Json{{"k", tree.depth()},
              {"num_atoms", tree.num_atoms()},
              {"root_atom", tree.root_atom()},
              {"orders", std::move(orders)}};
}

Olt olt_from_json(const Json& j) {
  int k = j.at("k").get<int>();
  std::size_t n = j.at("num_atoms").get<std::size_t>();
  std::size_t root = j.at("root_atom").get<std::size_t>();
  Olt base = Olt::uniform(k, n, root);
  auto orders = base.orders();
  if (j.contains("orders")) {
    for (const auto& [path, order] : j.at("orders").items()) {
      NodeId t = path_from_string(path, n);
      if (t >= base.internal_count()) bad("order path names a leaf");
      std::vector<std::uint16_t> o;
      for (const auto& v : order) o.push_back(v.get<std::uint16_t>());
      orders[t] = std::move(o);
    }
  }
  return Olt(k, n, root, std::move(orders));
}

Json progress_to_json(const ProgressFunction& g, const Olt& tree) {
  Json out = Json::object();
  for (const auto& [from, to] : g.moves())
    out[path_to_string(from, tree.num_atoms())] =
        path_to_string(to, tree.num_atoms());
  return out;
}

ProgressFunction progress_from_json(const Json& j, const Olt& tree) {
  ProgressFunction g;
  for (const auto& [from, to] : j.items()) {
    g.set(path_from_string(from, tree.num_atoms()),
          path_from_string(to.get<std::string>(), tree.num_atoms()));
  }
  return g;
}

Json model_to_json(const SelectionModel& sm) {
  const BasicModel& m = sm.model();
  Json valuation = Json::object();
  for (const auto& name : m.props().names()) {
    Json states = Json::array();
    for (const auto& s : m.valuation().at(name)) states.push_back(s);
    valuation[name] = std::move(states);
  }
  Json sel = Json::array();
  for (const auto& e : sm.entries()) {
    sel.push_back(Json{{"from", e.from},
                       {"effect_atoms", e.effect_atoms.indices()},
                       {"to", e.to}});
  }
  return Json{{"states", m.states()},
              {"valuation", std::move(valuation)},
              {"sel", std::move(sel)}};
}

SelectionModel model_from_json(const Json& j, const PropSet& props) {
  std::vector<std::string> states =
      j.at("states").get<std::vector<std::string>>();
  std::map<std::string, std::set<std::string>> valuation;
  for (const auto& [name, ext] : j.at("valuation").items()) {
    std::set<std::string> extension;
    for (const auto& s : ext) extension.insert(s.get<std::string>());
    valuation[name] = std::move(extension);
  }
  BasicModel model(props, std::move(states), std::move(valuation));
  std::vector<SelectionModel::SelEntry> entries;
  if (j.contains("sel")) {
    for (const auto& e : j.at("sel")) {
      entries.push_back(SelectionModel::SelEntry{
          e.at("from").get<std::string>(),
          AtomSet(props.num_atoms(),
                  e.at("effect_atoms").get<std::vector<std::size_t>>()),
          e.at("to").get<std::string>()});
    }
  }
  return SelectionModel(std::move(model), std::move(entries));
}

PrefsFile prefs_from_json(const Json& j) {
  PrefsFile out;
  if (j.contains("props"))
    out.props = j.at("props").get<std::vector<std::string>>();
  if (j.contains("F"))
    out.effects = j.at("F").get<std::vector<std::string>>();
  out.pool = j.at("pool").get<std::vector<std::string>>();
  out.tiers = j.at("tiers").get<std::vector<std::vector<std::size_t>>>();
  return out;
}

Json prefs_to_json(const PreferenceOrder& po, const ActionLibrary& lib) {
  Json pool = Json::array();
  for (const auto& a : po.pool()) pool.push_back(to_string(a));
  Json f = Json::array();
  for (const auto& e : lib.effects()) f.push_back(to_string(e));
  return Json{{"props", lib.props().names()},
              {"F", std::move(f)},
              {"pool", std::move(pool)},
              {"tiers", po.tiers()}};
}

Json witness_to_json(const CancellationWitness& w, const PreferenceOrder& po,
                     const ActionLibrary& lib) {
  Json alphas = Json::array();
  Json betas = Json::array();
  for (std::size_t i : w.alphas) alphas.push_back(to_string(po.pool()[i]));
  for (std::size_t i : w.betas) betas.push_back(to_string(po.pool()[i]));
  Json per_atom = Json::object();
  const std::size_t atoms = lib.props().num_atoms();
  for (std::size_t a = 1; a <= atoms; ++a) {
    std::vector<CanonicalEntry> lhs, rhs;
    for (std::size_t i : w.alphas)
      lhs.push_back(canonical_map(po.pool()[i], lib).at(a));
    for (std::size_t i : w.betas)
      rhs.push_back(canonical_map(po.pool()[i], lib).at(a));
    std::sort(lhs.begin(), lhs.end());
    std::sort(rhs.begin(), rhs.end());
    Json l = Json::array();
    for (const auto& e : lhs) l.push_back(canonical_entry_to_json(e));
    Json r = Json::array();
    for (const auto& e : rhs) r.push_back(canonical_entry_to_json(e));
    per_atom[std::to_string(a)] =
        Json{{"alpha_entries", std::move(l)}, {"beta_entries", std::move(r)}};
  }
  return Json{{"n", w.n()},
              {"alpha", std::move(alphas)},
              {"beta", std::move(betas)},
              {"alpha_indices", w.alphas},
              {"beta_indices", w.betas},
              {"per_atom_multisets", std::move(per_atom)},
              {"violated",
               Json{{"expected", "beta[n] >= alpha[n]"},
                    {"actual", "alpha[n] > beta[n]"}}}};
}

Json representation_to_json(const Representation& rep,
                            const StateDependentUtility& v,
                            const ActionLibrary& lib) {
  Json f = Json::array();
  for (const auto& e : lib.effects()) f.push_back(to_string(e));
  Json u = Json::array();
  for (const auto& [key, value] : rep.u) {
    u.push_back(Json{{"olt", olt_to_json(rep.olts[key.first])},
                     {"progress",
                      progress_to_json(key.second, rep.olts[key.first])},
                     {"value", to_fraction_string(value)}});
  }
  Json vt = Json::array();
  for (const auto& [key, value] : v.table) {
    vt.push_back(Json{{"atom", key.first},
                      {"entry", canonical_entry_to_json(key.second)},
                      {"value", to_fraction_string(value)}});
  }
  return Json{{"k", rep.k},
              {"prop_set", lib.props().names()},
              {"F", std::move(f)},
              {"pr",
               Json{{"num_olts", rep.olts.size()}, {"uniform_on_id", true}}},
              {"u", std::move(u)},
              {"v", std::move(vt)}};
}

LoadedRepresentation representation_from_json(const Json& j,
                                              const ActionLibrary& lib,
                                              const BigInt& budget) {
  LoadedRepresentation out;
  out.rep.k = j.at("k").get<int>();
  out.rep.olts = enumerate_olts(out.rep.k, lib.props(), budget);
  std::map<Olt, std::size_t> index;
  for (std::size_t i = 0; i < out.rep.olts.size(); ++i)
    index.emplace(out.rep.olts[i], i);
  for (const auto& entry : j.at("u")) {
    Olt tree = olt_from_json(entry.at("olt"));
    auto it = index.find(tree);
    if (it == index.end()) bad("utility entry names an unknown olt");
    ProgressFunction g = progress_from_json(entry.at("progress"), tree);
    out.rep.u[{it->second, std::move(g)}] =
        rational_from_string(entry.at("value").get<std::string>());
  }
  out.v.k = out.rep.k;
  for (const auto& entry : j.at("v")) {
    out.v.table[{entry.at("atom").get<std::size_t>(),
                 canonical_entry_from_json(entry.at("entry"), lib.props())}] =
        rational_from_string(entry.at("value").get<std::string>());
  }
  return out;
}

}  // namespace seqsavage
