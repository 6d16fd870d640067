#include "resha/tree_builder.hpp"

#include <map>
#include <set>

#include "resha/error.hpp"

namespace resha {

namespace {

struct Binding {
  std::string div;
  int n = 0;
  std::optional<NodeId> id;
};

void replace_all(std::string& s, std::string_view what, std::string_view with) {
  for (auto pos = s.find(what); pos != std::string::npos; pos = s.find(what, pos + with.size())) {
    s.replace(pos, what.size(), with);
  }
}

class Expander {
 public:
  explicit Expander(const SystemModel& model) : model_(model) {}

  // Expand every declaration into concrete gates keyed by ID; inputs stay as
  // resolved tokens ("fail:" prefixed node IDs or gate names).
  std::map<std::string, Gate> expand_all() {
    std::map<std::string, Gate> out;
    for (const GateDeclaration& d : model_.gates().declarations) {
      for (const Binding& b : bindings(d)) {
        Gate g;
        g.id = substitute(d.id, b, d.id);
        g.kind = d.kind;
        g.k = d.k;
        g.description = substitute(d.description, b, d.id);
        for (const auto& token : d.inputs) {
          for (auto& t : expand_token(token, b, d)) g.children.push_back(std::move(t));
        }
        if (g.kind == GateKind::kVote && g.k > static_cast<int>(g.children.size())) {
          throw TreeError("vote gate '" + g.id + "' needs " + std::to_string(g.k) + " of only " +
                          std::to_string(g.children.size()) + " inputs");
        }
        std::string id = g.id;
        if (!out.emplace(id, std::move(g)).second) {
          throw TreeError("gate declaration '" + d.id + "' expands to duplicate gate '" + id + "'");
        }
      }
    }
    return out;
  }

 private:
  void require_class(const std::string& cls, const std::string& where) const {
    if (!model_.has_class(cls)) {
      throw TreeError("gate declaration '" + where + "' references class '" + cls + "' absent from the model");
    }
  }

  std::vector<std::string> divisions_of(const std::string& cls) const {
    std::set<std::string> tags;
    for (const Node* n : model_.members_of_class(cls)) tags.insert(n->id.division);
    return {tags.begin(), tags.end()};
  }

  std::vector<Binding> bindings(const GateDeclaration& d) const {
    if (!d.equipment_class.empty()) require_class(d.equipment_class, d.id);
    switch (d.replicate) {
      case Replication::kNone: return {Binding{}};
      case Replication::kPerDivision: {
        std::vector<Binding> out;
        for (const auto& div : divisions_of(d.equipment_class)) out.push_back({div, 0, std::nullopt});
        return out;
      }
      case Replication::kPerUnit: {
        std::vector<Binding> out;
        for (const auto& div : divisions_of(d.equipment_class)) {
          int n = 0;
          for (const Node* m : model_.members_of_class(d.equipment_class, div)) out.push_back({div, ++n, m->id});
        }
        return out;
      }
    }
    return {};
  }

  static std::string substitute(std::string s, const Binding& b, const std::string& where) {
    if (s.find("{div}") != std::string::npos) {
      if (b.div.empty()) throw TreeError("gate declaration '" + where + "' uses {div} without replication");
      replace_all(s, "{div}", b.div);
    }
    if (s.find("{n}") != std::string::npos) {
      if (b.n == 0) throw TreeError("gate declaration '" + where + "' uses {n} outside per-unit replication");
      replace_all(s, "{n}", std::to_string(b.n));
    }
    if (s.find("{id}") != std::string::npos) {
      if (!b.id) throw TreeError("gate declaration '" + where + "' uses {id} outside per-unit replication");
      replace_all(s, "{id}", format_node_id(*b.id));
    }
    if (auto pos = s.find('{'); pos != std::string::npos) {
      throw TreeError("gate declaration '" + where + "' has unknown placeholder in '" + s + "'");
    }
    return s;
  }

  std::vector<std::string> expand_token(const std::string& token, const Binding& b, const GateDeclaration& d) const {
    // {*div} fans out over the divisions holding the declaration's class;
    // {*n} over member indices within the active division.
    std::vector<std::pair<std::string, std::string>> stage;  // (token, division for {*n})
    if (token.find("{*div}") != std::string::npos) {
      if (d.equipment_class.empty()) throw TreeError("gate declaration '" + d.id + "' uses {*div} without a class");
      for (const auto& div : divisions_of(d.equipment_class)) {
        std::string t = token;
        replace_all(t, "{*div}", div);
        stage.emplace_back(std::move(t), div);
      }
    } else {
      stage.emplace_back(token, b.div);
    }
    std::vector<std::string> expanded;
    for (auto& [t, div] : stage) {
      if (t.find("{*n}") == std::string::npos) {
        expanded.push_back(std::move(t));
        continue;
      }
      if (d.equipment_class.empty() || div.empty()) {
        throw TreeError("gate declaration '" + d.id + "' uses {*n} without a class and division");
      }
      const auto count = model_.members_of_class(d.equipment_class, div).size();
      for (std::size_t n = 1; n <= count; ++n) {
        std::string copy = t;
        replace_all(copy, "{*n}", std::to_string(n));
        expanded.push_back(std::move(copy));
      }
    }

    std::vector<std::string> out;
    for (const auto& raw : expanded) {
      const std::string t = substitute(raw, b, d.id);
      if (t.starts_with("fail-each:")) {
        const std::string cls = t.substr(10);
        require_class(cls, d.id);
        const auto members = b.div.empty() ? model_.members_of_class(cls) : model_.members_of_class(cls, b.div);
        for (const Node* m : members) out.push_back("fail:" + format_node_id(m->id));
      } else if (t.starts_with("fail:")) {
        NodeId id;
        try {
          id = parse_node_id(t.substr(5));
        } catch (const FormatError& e) {
          throw TreeError("gate declaration '" + d.id + "': " + e.what());
        }
        const Node* n = model_.find_node(id);
        if (!n) throw TreeError("gate declaration '" + d.id + "' references unknown node " + format_node_id(id));
        if (!n->equipment_class) {
          throw TreeError("gate declaration '" + d.id + "' references node " + format_node_id(id) +
                          " which has no equipment class and cannot fail on its own");
        }
        out.push_back("fail:" + format_node_id(id));
      } else {
        out.push_back(t);
      }
    }
    return out;
  }

  const SystemModel& model_;
};

void add_failure_node(FaultTree& ft, const Node& node) {
  const std::string fail = failure_gate_name(node.id);
  if (ft.find_gate(fail)) return;
  const std::string& cls = *node.equipment_class;
  Gate top{fail, GateKind::kOr, 0, {}, node.name + " fails"};
  if (node.technology == Technology::kHuman) {
    top.children.push_back(human_gate_name(node.id));
    ft.add_gate(std::move(top));
    ft.add_gate({human_gate_name(node.id), GateKind::kOr, 0, {}, node.name + " unsafe control actions"});
    return;
  }
  top.children.push_back(hardware_gate_name(node.id));
  if (node.technology == Technology::kDigital) top.children.push_back(software_gate_name(node.id));
  ft.add_gate(std::move(top));
  const std::string event = independent_event_name(cls, node.id);
  ft.add_gate({hardware_gate_name(node.id), GateKind::kOr, 0, {event}, node.name + " hardware failure"});
  ft.add_event({event, EventKind::kHwIndep, {node.id}, std::nullopt, "", cls, node.name + " hardware failure."});
  if (node.technology == Technology::kDigital) {
    ft.add_gate({software_gate_name(node.id), GateKind::kOr, 0, {}, node.name + " software failure"});
  }
}

}  // namespace

FaultTree build_hardware_fault_tree(const SystemModel& model, const std::string& top_event) {
  const TopEventSpec* spec = model.find_top_event(top_event);
  if (!spec) throw TreeError("unknown top event '" + top_event + "'");
  const auto declared = Expander(model).expand_all();
  if (!declared.contains(spec->gate)) {
    throw TreeError("top event '" + top_event + "' names undeclared gate '" + spec->gate + "'");
  }

  FaultTree ft(spec->gate);
  std::vector<std::string> pending{spec->gate};
  std::set<std::string> seen{spec->gate};
  while (!pending.empty()) {
    Gate g = declared.at(pending.back());
    pending.pop_back();
    for (auto& child : g.children) {
      if (child.starts_with("fail:")) {
        const Node& node = model.node(parse_node_id(child.substr(5)));
        add_failure_node(ft, node);
        child = failure_gate_name(node.id);
        continue;
      }
      if (!declared.contains(child)) throw TreeError("gate '" + g.id + "' references undeclared gate '" + child + "'");
      if (seen.insert(child).second) pending.push_back(child);
    }
    if (g.id == spec->gate && g.description.empty()) g.description = spec->description;
    ft.add_gate(std::move(g));
  }
  ft.validate();
  return ft;
}

std::string uca_event_name(const std::string& equipment_class, Technology technology, const std::string& uca_id) {
  return equipment_class + (technology == Technology::kHuman ? "-HU-" : "-SF-") + uca_id;
}

FaultTree integrate_ucas(const FaultTree& ft, const std::vector<UcaRecord>& selected, const SystemModel& model) {
  FaultTree out = ft;
  for (const UcaRecord& u : selected) {
    const Node* node = model.find_node(u.source);
    if (!node || !node->equipment_class) {
      throw IntegrationError(u.id + ": source " + format_node_id(u.source) + " is not a failure-bearing node", u.id);
    }
    const bool human = node->technology == Technology::kHuman;
    const std::string gate = human ? human_gate_name(node->id) : software_gate_name(node->id);
    if (!out.find_gate(gate)) {
      throw IntegrationError(u.id + ": source " + node->name + " (" + format_node_id(node->id) +
                                 ") has no " + (human ? "human" : "software") + " failure node in the tree",
                             u.id);
    }
    BasicEvent e;
    e.id = uca_event_name(*node->equipment_class, node->technology, u.id);
    e.kind = human ? EventKind::kHumanUca : EventKind::kSwUca;
    e.subjects = {node->id};
    e.category = u.category;
    e.uca_id = u.id;
    e.equipment_class = *node->equipment_class;
    e.description = render_uca_text(u);
    out.add_event(std::move(e));
    out.add_child(gate, uca_event_name(*node->equipment_class, node->technology, u.id));
  }
  return out;
}

}  // namespace resha
