#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "seqsavage/json_io.hpp"
#include "seqsavage/oracle.hpp"

namespace py = pybind11;
namespace ss = seqsavage;

namespace {

ss::ActionLibrary make_library(const std::vector<std::string>& props,
                               const std::vector<std::string>& effects) {
  ss::PropSet prop_set(props);
  std::vector<ss::Formula> parsed;
  for (const auto& text : effects)
    parsed.push_back(ss::parse_formula(text, prop_set));
  return ss::ActionLibrary(std::move(prop_set), std::move(parsed));
}

std::pair<ss::ActionLibrary, ss::PreferenceOrder> prefs_from_string(
    const std::string& prefs_json) {
  ss::PrefsFile file = ss::prefs_from_json(ss::Json::parse(prefs_json));
  if (!file.props || !file.effects)
    throw std::invalid_argument("prefs JSON needs 'props' and 'F'");
  ss::ActionLibrary lib = make_library(*file.props, *file.effects);
  std::vector<ss::Action> pool;
  for (const auto& text : file.pool)
    pool.push_back(ss::parse_action(text, lib));
  return {lib, ss::PreferenceOrder::from_tiers(std::move(pool), file.tiers)};
}

int pool_depth(const ss::PreferenceOrder& po) {
  int k = 1;
  for (const auto& a : po.pool()) k = std::max(k, ss::depth(a));
  return k;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "sequential language-based decision toolkit";

  py::register_exception<ss::ParseError>(m, "ParseError");
  py::register_exception<ss::ValidationError>(m, "ValidationError");
  py::register_exception<ss::BudgetError>(m, "BudgetError");

  py::class_<ss::PropSet>(m, "PropSet")
      .def(py::init<std::vector<std::string>>())
      .def_property_readonly("names", &ss::PropSet::names)
      .def("num_atoms", &ss::PropSet::num_atoms)
      .def("atom_label", [](const ss::PropSet& p, std::size_t index) {
        return ss::Atom::from_index(p, index).label(p);
      });

  py::class_<ss::Formula>(m, "Formula")
      .def("__str__", [](const ss::Formula& f) { return ss::to_string(f); })
      .def("__repr__", [](const ss::Formula& f) {
        return "Formula('" + ss::to_string(f) + "')";
      })
      .def("to_json", [](const ss::Formula& f) {
        return ss::formula_to_json(f).dump();
      });

  py::class_<ss::Action>(m, "Action")
      .def("__str__", [](const ss::Action& a) { return ss::to_string(a); })
      .def("__repr__", [](const ss::Action& a) {
        return "Action('" + ss::to_string(a) + "')";
      })
      .def("depth", [](const ss::Action& a) { return ss::depth(a); })
      .def("to_json", [](const ss::Action& a) {
        return ss::action_to_json(a).dump();
      })
      .def("__eq__", [](const ss::Action& a, const ss::Action& b) {
        return a == b;
      });

  py::class_<ss::ActionLibrary>(m, "ActionLibrary")
      .def(py::init(&make_library), py::arg("props"), py::arg("effects"))
      .def_property_readonly("props", &ss::ActionLibrary::props)
      .def("num_effect_classes",
           [](const ss::ActionLibrary& lib) { return lib.f_tilde().size(); });

  m.def("parse_formula",
        [](const std::string& text, const ss::PropSet& props) {
          return ss::parse_formula(text, props);
        });
  m.def("parse_action",
        [](const std::string& text, const ss::ActionLibrary& lib,
           bool strict) { return ss::parse_action(text, lib, strict); },
        py::arg("text"), py::arg("lib"), py::arg("strict") = true);
  m.def("atoms_of", [](const ss::Formula& f, const ss::PropSet& props) {
    return ss::atoms_of(f, props).indices();
  });
  m.def("equivalent",
        [](const ss::Formula& f, const ss::Formula& g,
           const ss::PropSet& props) { return ss::equivalent(f, g, props); });

  m.def("canonical_map_json",
        [](const ss::Action& a, const ss::ActionLibrary& lib) {
          return ss::canonical_map_to_json(ss::canonical_map(a, lib)).dump();
        });
  m.def("canonical_action",
        [](const ss::Action& a, const ss::ActionLibrary& lib) {
          return ss::canonical_action(a, lib)->action();
        });

  m.def("interpret",
        [](const ss::Action& a, const std::string& model_json,
           const std::string& state, const ss::ActionLibrary& lib) {
          ss::SelectionModel sm =
              ss::model_from_json(ss::Json::parse(model_json), lib.props());
          return ss::interpret(a, sm, state);
        });
  m.def("interpret_small_step",
        [](const ss::Action& a, const std::string& model_json,
           const std::string& state, const ss::ActionLibrary& lib) {
          ss::SelectionModel sm =
              ss::model_from_json(ss::Json::parse(model_json), lib.props());
          return ss::oracle::interpret_small_step(a, sm, state);
        });

  m.def("eval_olt",
        [](const ss::Action& a, const std::string& olt_json,
           const ss::ActionLibrary& lib) {
          ss::Olt tree = ss::olt_from_json(ss::Json::parse(olt_json));
          ss::OltState end =
              ss::apply_f(a, ss::OltState::initial(tree), lib);
          ss::NodeId target = end.progress.apply(0);
          return ss::Json{{"final_node_depth", tree.node_depth(target)},
                          {"final_atom", tree.node_label(target)},
                          {"progress",
                           ss::progress_to_json(end.progress, tree)}}
              .dump();
        });

  m.def("check_prefs",
        [](const std::string& prefs_json, int max_n) {
          auto [lib, po] = prefs_from_string(prefs_json);
          auto witness = ss::check_cancellation(po, lib, max_n);
          auto certified = ss::certify_cancellation(po, lib, pool_depth(po));
          if (!witness && certified.ok()) return ss::Json{{"ok", true}}.dump();
          const ss::CancellationWitness& w =
              witness ? *witness : *certified.witness;
          return ss::Json{{"ok", false},
                          {"witness", ss::witness_to_json(w, po, lib)}}
              .dump();
        },
        py::arg("prefs_json"), py::arg("max_n") = 4);

  m.def("synthesize",
        [](const std::string& prefs_json, int depth) {
          auto [lib, po] = prefs_from_string(prefs_json);
          int k = depth > 0 ? depth : pool_depth(po);
          auto solved = ss::solve_state_dependent(po, lib, k);
          if (!solved.ok()) {
            return ss::Json{{"ok", false},
                            {"witness", ss::witness_to_json(*solved.witness,
                                                            po, lib)}}
                .dump();
          }
          ss::StateDependentUtility v = solved.utility->normalized();
          v.k = k;
          ss::Representation rep = ss::assemble(v, lib);
          return ss::representation_to_json(rep, v, lib).dump();
        },
        py::arg("prefs_json"), py::arg("depth") = 0);

  m.def("verify", [](const std::string& prefs_json,
                     const std::string& rep_json) {
    auto [lib, po] = prefs_from_string(prefs_json);
    auto loaded =
        ss::representation_from_json(ss::Json::parse(rep_json), lib);
    auto violation = ss::verify_representation(loaded.rep, po, lib);
    if (violation) {
      return ss::Json{{"ok", false},
                      {"alpha", ss::to_string(po.pool()[violation->alpha])},
                      {"beta", ss::to_string(po.pool()[violation->beta])}}
          .dump();
    }
    return ss::Json{{"ok", true}}.dump();
  });

  m.attr("__version__") = "0.1.0";
}
