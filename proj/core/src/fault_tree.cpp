#include "resha/fault_tree.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "resha/detail/json.hpp"

#include "resha/error.hpp"

namespace resha {

using nlohmann::json;

std::string failure_gate_name(const NodeId& id) { return "FAIL-" + format_node_id(id); }
std::string hardware_gate_name(const NodeId& id) { return "HW-" + format_node_id(id); }
std::string software_gate_name(const NodeId& id) { return "SW-" + format_node_id(id); }
std::string human_gate_name(const NodeId& id) { return "HU-" + format_node_id(id); }
std::string independent_event_name(const std::string& equipment_class, const NodeId& id) {
  return equipment_class + "-HD-" + format_node_id(id);
}

Gate& FaultTree::add_gate(Gate gate) {
  if (contains(gate.id)) throw TreeError("duplicate fault-tree node '" + gate.id + "'");
  std::string id = gate.id;
  return gates_.emplace(std::move(id), std::move(gate)).first->second;
}

BasicEvent& FaultTree::add_event(BasicEvent event) {
  if (contains(event.id)) throw TreeError("duplicate fault-tree node '" + event.id + "'");
  std::string id = event.id;
  return events_.emplace(std::move(id), std::move(event)).first->second;
}

void FaultTree::add_child(const std::string& gate, const std::string& child) {
  Gate* g = find_gate(gate);
  if (!g) throw TreeError("unknown gate '" + gate + "'");
  if (std::ranges::find(g->children, child) != g->children.end()) {
    throw TreeError("gate '" + gate + "' already has child '" + child + "'");
  }
  g->children.push_back(child);
}

const Gate* FaultTree::find_gate(std::string_view id) const {
  auto it = gates_.find(id);
  return it == gates_.end() ? nullptr : &it->second;
}

Gate* FaultTree::find_gate(std::string_view id) {
  auto it = gates_.find(id);
  return it == gates_.end() ? nullptr : &it->second;
}

const BasicEvent* FaultTree::find_event(std::string_view id) const {
  auto it = events_.find(id);
  return it == events_.end() ? nullptr : &it->second;
}

std::vector<std::string> FaultTree::topological_gates() const {
  if (!find_gate(top_)) throw TreeError("top gate '" + top_ + "' does not exist");
  enum class Mark { kNone, kActive, kDone };
  std::map<std::string_view, Mark> marks;
  std::vector<std::string> order;
  // iterative DFS; deep trees must not blow the stack
  struct Frame {
    const Gate* gate;
    std::size_t next;
  };
  std::vector<Frame> stack{{find_gate(top_), 0}};
  marks[top_] = Mark::kActive;
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next == f.gate->children.size()) {
      marks[f.gate->id] = Mark::kDone;
      order.push_back(f.gate->id);
      stack.pop_back();
      continue;
    }
    const std::string& child = f.gate->children[f.next++];
    const Gate* cg = find_gate(child);
    if (!cg) {
      if (!find_event(child)) throw TreeError("gate '" + f.gate->id + "' references unknown node '" + child + "'");
      continue;
    }
    Mark& m = marks[cg->id];
    if (m == Mark::kActive) throw TreeError("cycle detected through gate '" + cg->id + "'");
    if (m == Mark::kDone) continue;
    m = Mark::kActive;
    stack.push_back({cg, 0});
  }
  return order;
}

void FaultTree::validate() const {
  const auto order = topological_gates();
  if (order.size() != gates_.size()) {
    std::set<std::string_view> reached(order.begin(), order.end());
    for (const auto& [id, _] : gates_) {
      if (!reached.contains(id)) throw TreeError("gate '" + id + "' is not reachable from the top");
    }
  }
  for (const auto& [id, g] : gates_) {
    const int n = static_cast<int>(g.children.size());
    if (g.kind == GateKind::kVote && (g.k < 1 || g.k > n)) {
      throw TreeError("vote gate '" + id + "' has k=" + std::to_string(g.k) + " over " + std::to_string(n) +
                      " inputs");
    }
    if (g.kind == GateKind::kAnd && n == 0) throw TreeError("and gate '" + id + "' has no inputs");
    std::set<std::string_view> seen;
    for (const auto& c : g.children) {
      if (!seen.insert(c).second) throw TreeError("gate '" + id + "' lists child '" + c + "' twice");
    }
  }
  for (const auto& [id, e] : events_) {
    if (is_ccf(e.kind) && e.subjects.size() < 2) {
      throw TreeError("CCF event '" + id + "' needs at least two subject nodes");
    }
  }
}

FaultTree extract_subtree(const FaultTree& ft, const std::string& gate) {
  if (!ft.find_gate(gate)) throw TreeError("unknown gate '" + gate + "'");
  FaultTree out(gate);
  std::vector<std::string> pending{gate};
  std::set<std::string> seen{gate};
  while (!pending.empty()) {
    const Gate& g = *ft.find_gate(pending.back());
    pending.pop_back();
    out.add_gate(g);
    for (const auto& c : g.children) {
      if (!seen.insert(c).second) continue;
      if (ft.find_gate(c)) {
        pending.push_back(c);
      } else if (const BasicEvent* e = ft.find_event(c)) {
        out.add_event(*e);
      } else {
        throw TreeError("gate '" + g.id + "' references unknown node '" + c + "'");
      }
    }
  }
  return out;
}

FilteredTree filter_events(const FaultTree& ft, const EventKindSet& keep) {
  std::set<std::string> dead;
  for (const auto& [id, e] : ft.events()) {
    if (!keep.contains(e.kind)) dead.insert(id);
  }
  FaultTree rewritten(ft.top());
  for (const std::string& id : ft.topological_gates()) {
    const Gate& g = *ft.find_gate(id);
    std::vector<std::string> live;
    for (const auto& c : g.children) {
      if (!dead.contains(c)) live.push_back(c);
    }
    const int removed = static_cast<int>(g.children.size() - live.size());
    if (removed == 0) {
      rewritten.add_gate(g);
      continue;
    }
    Gate ng = g;
    ng.children = live;
    const int n = static_cast<int>(live.size());
    bool is_dead = false;
    switch (g.kind) {
      case GateKind::kOr: is_dead = live.empty(); break;
      case GateKind::kAnd: is_dead = true; break;
      case GateKind::kVote:
        if (g.k > n) {
          is_dead = true;
        } else if (g.k == n) {
          ng.kind = GateKind::kAnd;
          ng.k = 0;
        } else if (g.k == 1) {
          ng.kind = GateKind::kOr;
          ng.k = 0;
        }
        break;
    }
    if (is_dead) {
      dead.insert(id);
    } else {
      rewritten.add_gate(std::move(ng));
    }
  }

  FilteredTree result;
  if (dead.contains(ft.top())) {
    result.top_unreachable = true;
    result.tree = FaultTree(ft.top());
    result.tree.add_gate({ft.top(), GateKind::kOr, 0, {}, ft.find_gate(ft.top())->description});
    return result;
  }
  // dropping dead gates can orphan parts of the tree; copy only what is still reachable
  for (const auto& [id, e] : ft.events()) {
    if (!dead.contains(id)) rewritten.add_event(e);
  }
  result.tree = extract_subtree(rewritten, ft.top());
  return result;
}

// ---- exchange formats ----

std::string fault_tree_to_json(const FaultTree& ft) {
  json gates = json::array();
  for (const auto& [id, g] : ft.gates()) {
    json j = {{"id", id}, {"type", to_string(g.kind)}, {"inputs", g.children}};
    if (g.kind == GateKind::kVote) j["k"] = g.k;
    if (!g.description.empty()) j["description"] = g.description;
    gates.push_back(std::move(j));
  }
  json events = json::array();
  for (const auto& [id, e] : ft.events()) {
    json j = {{"id", id}, {"kind", to_string(e.kind)}};
    std::vector<std::string> subjects;
    for (const auto& s : e.subjects) subjects.push_back(format_node_id(s));
    j["subjects"] = subjects;
    if (e.category) j["category"] = std::string(1, category_letter(*e.category));
    if (!e.uca_id.empty()) j["uca"] = e.uca_id;
    if (!e.equipment_class.empty()) j["class"] = e.equipment_class;
    if (!e.description.empty()) j["description"] = e.description;
    events.push_back(std::move(j));
  }
  json doc = {{"top", ft.top()}, {"gates", std::move(gates)}, {"events", std::move(events)}};
  return doc.dump(2) + "\n";
}

namespace {

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(where + ": missing field '" + key + "'", key);
  return j.at(key);
}

std::string string_field(const json& j, const char* key, const std::string& where) {
  const json& v = field(j, key, where);
  if (!v.is_string()) throw FormatError(where + ": field '" + key + "' must be a string", key);
  return v.get<std::string>();
}

std::string optional_string(const json& j, const char* key, const std::string& where) {
  return j.contains(key) ? string_field(j, key, where) : std::string();
}

}  // namespace

FaultTree fault_tree_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("fault-tree JSON: ") + e.what(), "offset " + std::to_string(e.byte));
  }
  FaultTree ft(string_field(doc, "top", "fault tree"));
  const json& gates = field(doc, "gates", "fault tree");
  const json& events = field(doc, "events", "fault tree");
  if (!gates.is_array() || !events.is_array()) throw FormatError("fault tree: gates and events must be arrays", "gates");
  for (const json& jg : gates) {
    Gate g;
    g.id = string_field(jg, "id", "gate");
    const std::string where = "gate '" + g.id + "'";
    g.kind = gate_kind_from_string(string_field(jg, "type", where));
    if (g.kind == GateKind::kVote) {
      const json& k = field(jg, "k", where);
      if (!k.is_number_integer()) throw FormatError(where + ": k must be an integer", "k");
      g.k = k.get<int>();
    }
    const json& inputs = field(jg, "inputs", where);
    if (!inputs.is_array()) throw FormatError(where + ": inputs must be an array", "inputs");
    for (const json& in : inputs) {
      if (!in.is_string()) throw FormatError(where + ": inputs must be strings", "inputs");
      g.children.push_back(in.get<std::string>());
    }
    g.description = optional_string(jg, "description", where);
    ft.add_gate(std::move(g));
  }
  for (const json& je : events) {
    BasicEvent e;
    e.id = string_field(je, "id", "event");
    const std::string where = "event '" + e.id + "'";
    e.kind = event_kind_from_string(string_field(je, "kind", where));
    if (je.contains("subjects")) {
      for (const json& s : je.at("subjects")) {
        if (!s.is_string()) throw FormatError(where + ": subjects must be strings", "subjects");
        e.subjects.push_back(parse_node_id(s.get<std::string>()));
      }
    }
    const std::string cat = optional_string(je, "category", where);
    if (cat.size() == 1) {
      e.category = category_from_letter(cat[0]);
    } else if (!cat.empty()) {
      throw FormatError(where + ": bad category '" + cat + "'", cat);
    }
    e.uca_id = optional_string(je, "uca", where);
    e.equipment_class = optional_string(je, "class", where);
    e.description = optional_string(je, "description", where);
    ft.add_event(std::move(e));
  }
  ft.validate();
  return ft;
}

namespace {

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string fault_tree_to_opsa_xml(const FaultTree& ft, std::string_view name) {
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<opsa-mef>\n";
  os << "  <define-fault-tree name=\"" << xml_escape(name) << "\">\n";
  for (const auto& [id, g] : ft.gates()) {
    os << "    <define-gate name=\"" << xml_escape(id) << "\">\n";
    if (!g.description.empty()) os << "      <label>" << xml_escape(g.description) << "</label>\n";
    if (g.children.empty()) {
      os << "      <constant value=\"false\"/>\n";
    } else {
      if (g.kind == GateKind::kVote) {
        os << "      <atleast min=\"" << g.k << "\">\n";
      } else {
        os << "      <" << to_string(g.kind) << ">\n";
      }
      for (const auto& c : g.children) {
        os << "        <" << (ft.find_gate(c) ? "gate" : "basic-event") << " name=\"" << xml_escape(c) << "\"/>\n";
      }
      os << "      </" << (g.kind == GateKind::kVote ? "atleast" : to_string(g.kind)) << ">\n";
    }
    os << "    </define-gate>\n";
  }
  os << "  </define-fault-tree>\n  <model-data>\n";
  for (const auto& [id, e] : ft.events()) {
    os << "    <define-basic-event name=\"" << xml_escape(id) << "\">\n";
    if (!e.description.empty()) os << "      <label>" << xml_escape(e.description) << "</label>\n";
    os << "      <attributes><attribute name=\"kind\" value=\"" << to_string(e.kind) << "\"/></attributes>\n";
    os << "    </define-basic-event>\n";
  }
  os << "  </model-data>\n</opsa-mef>\n";
  return os.str();
}

}  // namespace resha
