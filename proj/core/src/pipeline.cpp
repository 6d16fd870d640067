#include "resha/pipeline.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "resha/text_util.hpp"
#include "resha/tree_builder.hpp"

namespace resha {

namespace {

template <typename F>
auto stage(const char* name, F&& f) {
  try {
    return f();
  } catch (const ResourceError&) {
    throw;
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(name, e.what());
  }
}

const TopEventSpec& pick_top_event(const SystemModel& model, const std::string& requested) {
  const auto& tops = model.gates().top_events;
  if (tops.empty()) throw Error("model declares no top event");
  if (requested.empty()) return tops.front();
  if (const TopEventSpec* t = model.find_top_event(requested)) return *t;
  throw Error("unknown top event '" + requested + "'");
}

// A scope names either a gate in the tree or one of the top event's scope labels.
std::pair<std::string, std::string> resolve_scope(const TopEventSpec& top, const FaultTree& tree,
                                                  const std::string& scope, const std::string& filter) {
  if (scope.empty()) return {tree.top(), filter};
  if (tree.find_gate(scope)) return {scope, filter};
  for (const auto& s : top.scopes) {
    if (s.label == scope) return {s.gate, filter == "all" ? s.filter : filter};
  }
  throw Error("scope '" + scope + "' is neither a gate of the tree nor a declared scope");
}

struct Scoped {
  FaultTree tree;
  bool top_unreachable = false;
};

Scoped scope_tree(const FaultTree& full, const std::string& gate, const EventKindSet& keep) {
  FaultTree sub = extract_subtree(full, gate);
  if (keep == all_event_kinds()) return {std::move(sub), false};
  FilteredTree f = filter_events(sub, keep);
  return {std::move(f.tree), f.top_unreachable};
}

}  // namespace

AnalysisResult run_analysis(const SystemModel& model, const AnalysisConfig& config) {
  AnalysisResult r;
  r.config = config;
  if (config.truncation && *config.truncation < 1) throw StageError("config", "truncation order must be at least 1");
  const TopEventSpec& top = stage("config", [&]() -> const TopEventSpec& { return pick_top_event(model, config.top_event); });
  r.top_event = top.id;
  r.kind = config.kind.value_or(top.kind);
  r.kept_kinds = stage("config", [&] { return parse_event_filter(config.filter); });
  r.policy = config.policy.value_or(model.ccf_policy());
  if (!r.policy.any_scope_enabled()) throw StageError("config", "at least one CCF scope must be enabled");

  // steps 1 and 3: control structure and UCAs (losses/hazards live in the model)
  r.control_structure = stage("control structure", [&] { return build_layered_control_structure(model); });
  r.ucas = stage("uca enumeration", [&] { return enumerate_ucas(r.control_structure, model.hazards()); });
  r.uca_counts = count_ucas(r.ucas);

  // step 2: hardware fault tree and redundancy
  r.groups = derive_redundancy_groups(model);
  FaultTree tree = stage("fault tree", [&] { return build_hardware_fault_tree(model, top.id); });

  // step 4: software and human failures
  for (auto& u : select_ucas_for_top_event(r.ucas, r.kind)) {
    const Node& src = model.node(u.source);
    const bool in_tree = tree.find_gate(failure_gate_name(src.id)) != nullptr;
    if (in_tree) {
      r.selected.push_back(std::move(u));
    } else {
      ++r.ucas_outside_tree;
    }
  }
  tree = stage("uca integration", [&] { return integrate_ucas(tree, r.selected, model); });

  // step 5: common-cause failures
  r.catalog = enumerate_ccf_catalog(model, r.groups, r.policy);
  CcfInjection inj = stage("ccf injection", [&] {
    return inject_ccfs(tree, model, r.groups, r.policy, categories_for(r.kind));
  });
  r.full_tree = std::move(inj.tree);
  r.injected = std::move(inj.injected);
  r.warnings = std::move(inj.warnings);

  // step 6: cut sets
  SolveOptions opts;
  opts.max_order = config.truncation;
  opts.threads = config.threads;
  opts.max_rows = config.max_rows;
  const auto [gate, filter] = stage("scope", [&] { return resolve_scope(top, r.full_tree, config.scope, config.filter); });
  r.analyzed_gate = gate;
  r.kept_kinds = stage("scope", [&] { return parse_event_filter(filter); });
  Scoped scoped = stage("scope", [&] { return scope_tree(r.full_tree, gate, r.kept_kinds); });
  r.analyzed_tree = std::move(scoped.tree);
  r.top_unreachable = scoped.top_unreachable;
  r.cutsets = stage("cut sets", [&] { return solve_minimal_cut_sets(r.analyzed_tree, opts); });
  r.histogram = order_histogram(r.cutsets);
  r.spofs = extract_spofs(r.cutsets);

  if (config.scope_table) {
    SolveOptions table_opts = opts;
    table_opts.max_order = config.scope_table_order ? config.scope_table_order : config.truncation;
    table_opts.max_rows = std::min(config.max_rows, config.scope_table_max_rows);
    for (const auto& s : top.scopes) {
      ScopeResult sr{s.label, s.gate, s.filter, false, std::nullopt, {}};
      try {
        Scoped st = scope_tree(r.full_tree, s.gate, parse_event_filter(s.filter));
        sr.top_unreachable = st.top_unreachable;
        sr.histogram = order_histogram(solve_minimal_cut_sets(st.tree, table_opts));
      } catch (const ResourceError& e) {
        sr.error = e.what();
      } catch (const Error& e) {
        throw StageError("scope table", e.what());
      }
      r.scopes.push_back(std::move(sr));
    }
  }

  // step 7: causal factors for the lowest-order cut sets
  r.worksheets = generate_worksheets(r.spofs.sets, r.ucas, r.analyzed_tree);
  return r;
}

// ---- report ----

std::string render_spof_table(const AnalysisResult& result) {
  std::ostringstream os;
  os << "| No. | Cut set | Description |\n|---|---|---|\n";
  int n = 0;
  for (const auto& s : result.spofs.sets) {
    std::vector<std::string> descriptions;
    for (const auto& e : s.events) descriptions.push_back(result.analyzed_tree.find_event(e)->description);
    os << "| " << ++n << " | " << join(s.events, ", ") << " | " << markdown_escape(join(descriptions, " ")) << " |\n";
  }
  return os.str();
}

std::string render_scope_table(const AnalysisResult& result) {
  std::size_t max_order = 0;
  for (const auto& s : result.scopes) {
    if (s.histogram) max_order = std::max(max_order, s.histogram->up_to);
  }
  // untruncated solves are complete, so their counts hold at every order
  const bool complete = !result.config.scope_table_order.value_or(result.config.truncation.value_or(0));
  if (complete) max_order = std::max<std::size_t>(max_order, 1);
  std::ostringstream os;
  os << "| Truncation (order) |";
  for (const auto& s : result.scopes) os << " " << markdown_escape(s.label) << " |";
  os << "\n|---|";
  for (std::size_t i = 0; i < result.scopes.size(); ++i) os << "---|";
  os << "\n";
  for (std::size_t k = max_order; k >= 1; --k) {
    os << "| " << k << " |";
    for (const auto& s : result.scopes) {
      if (s.histogram && (complete || k <= s.histogram->up_to)) {
        os << " " << s.histogram->cumulative(k) << " |";
      } else {
        os << " " << (s.error.empty() ? "-" : "budget exceeded") << " |";
      }
    }
    os << "\n";
  }
  return os.str();
}

std::string render_analysis_report(const SystemModel& model, const AnalysisResult& r) {
  std::ostringstream os;
  const std::string title = model.name().empty() ? "model" : model.name();
  os << "# RESHA analysis: " << title << "\n\n";
  if (!model.description().empty()) os << model.description() << "\n\n";
  os << "| Setting | Value |\n|---|---|\n";
  os << "| Top event | " << r.top_event << " (" << to_string(r.kind) << ") |\n";
  os << "| Analyzed gate | " << r.analyzed_gate << " |\n";
  os << "| Truncation | " << (r.config.truncation ? std::to_string(*r.config.truncation) : "none") << " |\n";
  std::vector<std::string> kinds;
  for (auto k : r.kept_kinds) kinds.push_back(to_string(k));
  os << "| Event kinds kept | " << join(kinds, ", ") << " |\n";
  os << "| Tree fingerprint | " << r.cutsets.fingerprint << " |\n\n";

  os << "## 1. Losses and hazards\n\n| Loss | Description |\n|---|---|\n";
  for (const auto& l : model.losses()) os << "| " << l.id << " | " << markdown_escape(l.description) << " |\n";
  os << "\n| Hazard | Description | Losses |\n|---|---|---|\n";
  for (const auto& h : model.hazards()) {
    os << "| " << h.id << " | " << markdown_escape(h.description) << " | " << join(h.losses, ", ") << " |\n";
  }

  os << "\n## 2. Redundancy and hardware fault tree\n\n";
  os << "| Class | Scope | Division | Members |\n|---|---|---|---|\n";
  for (const auto& g : r.groups) {
    std::vector<std::string> members;
    for (const auto& m : g.members) members.push_back(format_node_id(m));
    os << "| " << g.equipment_class << " | " << to_string(g.scope) << " | " << (g.division.empty() ? "-" : g.division)
       << " | " << join(members, " ") << " |\n";
  }

  os << "\n## 3. Layered control structure and unsafe control actions\n\n";
  for (const auto& layer : r.control_structure.layers) {
    os << "- Layer " << layer.level << " (" << to_string(layer.level_kind) << "): " << layer.actions.size()
       << " control actions, " << layer.feedback.size() << " feedback signals; subsystems "
       << join(layer.subsystems(model), ", ") << "\n";
  }
  os << "\n" << render_control_action_table(r.control_structure) << "\n";
  os << "UCA slots: " << r.uca_counts.potential << " potential over " << r.uca_counts.control_actions
     << " control actions (" << r.uca_counts.unsplit_potential << " if split signals were enumerated per destination); "
     << r.uca_counts.identified << " identified.\n\n";
  os << ucas_to_markdown(r.control_structure, r.ucas) << "\n";

  os << "## 4. Software and human failures in the fault tree\n\n";
  os << r.selected.size() << " UCAs of categories ";
  std::vector<std::string> cats;
  for (auto c : categories_for(r.kind)) cats.push_back(std::string(1, category_letter(c)));
  os << join(cats, ", ") << " added as basic events";
  if (r.ucas_outside_tree) os << "; " << r.ucas_outside_tree << " UCAs belong to controllers outside this tree";
  os << ".\n\n";

  os << "## 5. Common-cause failures\n\n";
  os << "Catalog: " << r.catalog.size() << " candidate events; injected: " << r.injected.size() << ".\n\n";
  os << "| Event | Kind | Scope | Description |\n|---|---|---|---|\n";
  for (const auto& e : r.injected) {
    os << "| " << e.name << " | " << to_string(e.kind) << " | " << to_string(e.scope) << " | "
       << markdown_escape(e.description) << " |\n";
  }
  for (const auto& w : r.warnings) os << "\n> " << w;
  if (!r.warnings.empty()) os << "\n";

  os << "\n## 6. Cut sets\n\n";
  std::map<EventKind, std::size_t> by_kind;
  for (const auto& [_, e] : r.analyzed_tree.events()) ++by_kind[e.kind];
  os << "Analyzed tree: " << r.analyzed_tree.gates().size() << " gates, " << r.analyzed_tree.events().size()
     << " basic events";
  for (const auto& [k, n] : by_kind) os << "; " << to_string(k) << " " << n;
  os << ".\n\n";
  if (!r.kept_kinds.contains(EventKind::kSwUca) && !r.kept_kinds.contains(EventKind::kSwCcf)) {
    os << "Note: software failures excluded by filter.\n\n";
  }
  if (r.top_unreachable) os << "Note: the filter removed every path to the top event.\n\n";
  os << "| Order | Cut sets | Cumulative |\n|---|---|---|\n";
  for (const auto& [order, count] : r.histogram.exact) {
    os << "| " << order << " | " << count << " | " << r.histogram.cumulative(order) << " |\n";
  }
  if (!r.scopes.empty()) os << "\nCut sets by analysis scope (count of all sets up to each order):\n\n" << render_scope_table(r);
  os << "\n";
  if (r.spofs.sets.empty()) {
    os << "No cut sets at any order up to the truncation.\n\n";
  } else {
    if (r.spofs.fallback) {
      os << "No single points of failure; lowest populated order is " << r.spofs.order << ".\n\n";
    } else {
      const auto ccf = std::ranges::count_if(r.spofs.sets, [](const CutSet& s) { return s.contains_ccf; });
      os << r.spofs.sets.size() << " single points of failure, " << ccf << " of them common-cause failures.\n\n";
    }
    os << render_spof_table(r) << "\n";
  }

  os << "## 7. Causal factors\n\n";
  if (r.worksheets.empty()) os << "No worksheets.\n";
  os << render_worksheets(r.worksheets, GuidanceBank::builtin());
  return os.str();
}

}  // namespace resha
