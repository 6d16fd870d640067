#include "resha/system_model.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace resha {

std::string to_string(DiagnosticCode code) {
  switch (code) {
    case DiagnosticCode::kSyntax: return "syntax";
    case DiagnosticCode::kUnknownField: return "unknown-field";
    case DiagnosticCode::kMissingField: return "missing-field";
    case DiagnosticCode::kBadValue: return "bad-value";
    case DiagnosticCode::kDanglingLink: return "dangling-link";
    case DiagnosticCode::kDuplicateId: return "duplicate-id";
    case DiagnosticCode::kHierarchy: return "hierarchy";
    case DiagnosticCode::kReference: return "reference";
  }
  return "?";
}

namespace {

std::string summarize(const std::vector<Diagnostic>& diagnostics) {
  std::ostringstream os;
  os << diagnostics.size() << " model error(s)";
  if (!diagnostics.empty()) {
    os << "; first: [" << to_string(diagnostics.front().code) << "] " << diagnostics.front().path << ": "
       << diagnostics.front().message;
  }
  return os.str();
}

}  // namespace

ModelError::ModelError(std::vector<Diagnostic> diagnostics)
    : Error(summarize(diagnostics)), diagnostics_(std::move(diagnostics)) {}

std::string to_string(Technology t) {
  switch (t) {
    case Technology::kDigital: return "digital";
    case Technology::kAnalog: return "analog";
    case Technology::kHuman: return "human";
  }
  return "?";
}

Technology technology_from_string(std::string_view text) {
  if (text == "digital") return Technology::kDigital;
  if (text == "analog") return Technology::kAnalog;
  if (text == "human") return Technology::kHuman;
  throw FormatError("unknown technology '" + std::string(text) + "'", std::string(text));
}

std::string to_string(LinkType t) {
  switch (t) {
    case LinkType::kControl: return "control";
    case LinkType::kFeedback: return "feedback";
    case LinkType::kPhysicalSplit: return "physical-split";
  }
  return "?";
}

LinkType link_type_from_string(std::string_view text) {
  if (text == "control") return LinkType::kControl;
  if (text == "feedback") return LinkType::kFeedback;
  if (text == "physical-split") return LinkType::kPhysicalSplit;
  throw FormatError("unknown link type '" + std::string(text) + "'", std::string(text));
}

std::string to_string(Replication r) {
  switch (r) {
    case Replication::kNone: return "none";
    case Replication::kPerDivision: return "per-division";
    case Replication::kPerUnit: return "per-unit";
  }
  return "?";
}

Replication replication_from_string(std::string_view text) {
  if (text == "none") return Replication::kNone;
  if (text == "per-division") return Replication::kPerDivision;
  if (text == "per-unit") return Replication::kPerUnit;
  throw FormatError("unknown replication macro '" + std::string(text) + "'", std::string(text));
}

std::vector<Diagnostic> validate_model_parts(const ModelParts& parts) {
  std::vector<Diagnostic> out;
  auto report = [&](DiagnosticCode code, std::string path, std::string message) {
    out.push_back({code, std::move(path), std::move(message)});
  };

  std::map<NodeId, const Node*> nodes;
  std::set<std::string> names;
  for (std::size_t i = 0; i < parts.nodes.size(); ++i) {
    const Node& n = parts.nodes[i];
    const std::string path = "/nodes/" + format_node_id(n.id);
    if (!nodes.emplace(n.id, &n).second) {
      report(DiagnosticCode::kDuplicateId, path, "duplicate node id " + format_node_id(n.id));
      continue;
    }
    if (n.name.empty()) report(DiagnosticCode::kMissingField, path, "node has no name");
    if (!n.name.empty() && !names.insert(n.name).second) {
      report(DiagnosticCode::kDuplicateId, path, "duplicate node name '" + n.name + "'");
    }
    if (n.kind != n.id.implied_kind()) {
      report(DiagnosticCode::kHierarchy, path,
             "declared kind " + to_string(n.kind) + " but id implies " + to_string(n.id.implied_kind()));
    }
    if (n.kind == NodeKind::kComponent && !n.equipment_class) {
      report(DiagnosticCode::kMissingField, path, "component has no equipment class");
    }
    if (n.equipment_class && n.equipment_class->empty()) {
      report(DiagnosticCode::kBadValue, path, "empty equipment class");
    }
  }
  for (const auto& [id, n] : nodes) {
    if (n->kind == NodeKind::kDivision) continue;
    NodeId ancestor = id.parent();
    // The nearest existing ancestor must be a strictly higher level; levels may be skipped.
    while (!nodes.contains(ancestor) && ancestor.implied_kind() != NodeKind::kDivision) ancestor = ancestor.parent();
    if (!nodes.contains(ancestor)) {
      report(DiagnosticCode::kHierarchy, "/nodes/" + format_node_id(id),
             "no enclosing node; division " + format_node_id(ancestor) + " is missing");
    }
  }

  std::set<std::string> link_ids;
  std::map<std::string, const Link*> links;
  for (const Link& l : parts.links) {
    const std::string path = "/links/" + l.id;
    if (l.id.empty()) {
      report(DiagnosticCode::kMissingField, "/links", "link without id");
      continue;
    }
    if (!link_ids.insert(l.id).second) {
      report(DiagnosticCode::kDuplicateId, path, "duplicate link id " + l.id);
      continue;
    }
    links.emplace(l.id, &l);
    if (!nodes.contains(l.source)) {
      report(DiagnosticCode::kDanglingLink, path, "link " + l.id + " source " + format_node_id(l.source) + " does not exist");
    }
    if (l.targets.empty()) report(DiagnosticCode::kMissingField, path, "link " + l.id + " has no target");
    std::set<NodeId> seen;
    for (const NodeId& t : l.targets) {
      if (!nodes.contains(t)) {
        report(DiagnosticCode::kDanglingLink, path, "link " + l.id + " target " + format_node_id(t) + " does not exist");
      }
      if (!seen.insert(t).second) report(DiagnosticCode::kBadValue, path, "repeated target " + format_node_id(t));
      if (t == l.source) report(DiagnosticCode::kBadValue, path, "self link");
    }
    if (l.type == LinkType::kPhysicalSplit && l.targets.size() < 2) {
      report(DiagnosticCode::kBadValue, path, "physical-split link needs at least two targets");
    }
    if (l.type != LinkType::kPhysicalSplit && l.targets.size() > 1) {
      report(DiagnosticCode::kBadValue, path, to_string(l.type) + " link must have exactly one target");
    }
  }

  std::set<std::string> loss_ids;
  for (std::size_t i = 0; i < parts.losses.size(); ++i) {
    const Loss& loss = parts.losses[i];
    if (!loss_ids.insert(loss.id).second) {
      report(DiagnosticCode::kDuplicateId, "/losses/" + loss.id, "duplicate loss id");
    }
  }
  for (std::size_t i = 1; i <= loss_ids.size(); ++i) {
    if (!loss_ids.contains("L" + std::to_string(i))) {
      report(DiagnosticCode::kBadValue, "/losses", "loss ids must run contiguously from L1; L" + std::to_string(i) + " missing");
      break;
    }
  }
  std::set<std::string> hazard_ids;
  for (const Hazard& h : parts.hazards) {
    const std::string path = "/hazards/" + h.id;
    if (!hazard_ids.insert(h.id).second) report(DiagnosticCode::kDuplicateId, path, "duplicate hazard id");
    if (h.losses.empty()) report(DiagnosticCode::kMissingField, path, "hazard links no loss");
    for (const auto& l : h.losses) {
      if (!loss_ids.contains(l)) report(DiagnosticCode::kReference, path, "unknown loss " + l);
    }
  }

  std::set<std::string> covered;
  for (const ControlActionSpec& ca : parts.control_actions) {
    const std::string path = "/control_actions/" + ca.link;
    auto it = links.find(ca.link);
    if (it == links.end()) {
      report(DiagnosticCode::kReference, path, "control action references unknown link " + ca.link);
      continue;
    }
    if (it->second->type == LinkType::kFeedback) {
      report(DiagnosticCode::kBadValue, path, "control action attached to feedback link " + ca.link);
    }
    if (!covered.insert(ca.link).second) {
      report(DiagnosticCode::kDuplicateId, path, "link has more than one control action");
    }
    if (ca.command.empty()) report(DiagnosticCode::kMissingField, path, "control action has no command phrase");
    for (UcaCategory c : kAllUcaCategories) {
      const auto idx = category_index(c);
      const bool na = ca.not_applicable[idx].has_value() ||
                      (c == UcaCategory::kWrongDuration && !ca.continuous);
      for (const auto& h : ca.hazards[idx]) {
        if (!hazard_ids.contains(h)) report(DiagnosticCode::kReference, path, "unknown hazard " + h);
      }
      if (ca.not_applicable[idx] && ca.not_applicable[idx]->empty()) {
        report(DiagnosticCode::kMissingField, path,
               std::string("category ") + category_letter(c) + " marked not applicable without justification");
      }
      if (!na && ca.hazards[idx].empty()) {
        report(DiagnosticCode::kMissingField, path,
               std::string("applicable category ") + category_letter(c) + " links no hazard");
      }
    }
    // b and c render with the same verb, so only the context tells them apart
    const auto b = category_index(UcaCategory::kProvidedUnneeded);
    const auto c = category_index(UcaCategory::kWrongTiming);
    if (!ca.not_applicable[b] && !ca.not_applicable[c] && ca.contexts[b] == ca.contexts[c]) {
      report(DiagnosticCode::kBadValue, path, "categories b and c share the same context phrase");
    }
  }
  for (const auto& [id, l] : links) {
    if (l->type != LinkType::kFeedback && !covered.contains(id)) {
      report(DiagnosticCode::kMissingField, "/links/" + id, "control link has no control action entry");
    }
  }

  std::set<std::string> decl_ids;
  for (const GateDeclaration& g : parts.gates.declarations) {
    const std::string path = "/gates/declarations/" + g.id;
    if (!decl_ids.insert(g.id).second) report(DiagnosticCode::kDuplicateId, path, "duplicate gate declaration");
    if (g.inputs.empty() && g.kind != GateKind::kOr) {
      report(DiagnosticCode::kBadValue, path, "gate declares no inputs");
    }
    if (g.kind == GateKind::kVote && g.k < 1) report(DiagnosticCode::kBadValue, path, "vote gate needs k >= 1");
    if (g.replicate != Replication::kNone && g.equipment_class.empty()) {
      report(DiagnosticCode::kMissingField, path, "replicated gate needs an equipment class");
    }
  }
  std::set<std::string> top_ids;
  for (const TopEventSpec& t : parts.gates.top_events) {
    if (!top_ids.insert(t.id).second) report(DiagnosticCode::kDuplicateId, "/gates/top_events/" + t.id, "duplicate top event");
    if (t.gate.empty()) report(DiagnosticCode::kMissingField, "/gates/top_events/" + t.id, "top event names no gate");
  }

  if (!parts.ccf_policy.any_scope_enabled()) {
    report(DiagnosticCode::kBadValue, "/ccf_policy", "at least one CCF scope must be enabled");
  }
  return out;
}

SystemModel SystemModel::create(ModelParts parts) {
  auto diagnostics = validate_model_parts(parts);
  if (!diagnostics.empty()) throw ModelError(std::move(diagnostics));
  return SystemModel(std::move(parts));
}

SystemModel::SystemModel(ModelParts parts) : data_(std::move(parts)) {
  auto& d = data_;
  std::ranges::sort(d.nodes, {}, &Node::id);
  for (auto& n : d.nodes) {
    if (n.subsystem.empty()) n.subsystem = n.id.division;
  }
  for (auto& l : d.links) std::ranges::sort(l.targets);
  std::ranges::sort(d.links, {}, &Link::id);
  std::ranges::sort(d.losses, [](const Loss& a, const Loss& b) {
    return std::make_pair(a.id.size(), a.id) < std::make_pair(b.id.size(), b.id);
  });
  std::ranges::sort(d.hazards, [](const Hazard& a, const Hazard& b) {
    return std::make_pair(a.id.size(), a.id) < std::make_pair(b.id.size(), b.id);
  });
  std::ranges::sort(d.control_actions, {}, &ControlActionSpec::link);
  std::ranges::sort(d.gates.declarations, {}, &GateDeclaration::id);
  std::ranges::sort(d.gates.top_events, {}, &TopEventSpec::id);
  for (std::size_t i = 0; i < d.nodes.size(); ++i) node_index_.emplace(d.nodes[i].id, i);
  for (std::size_t i = 0; i < d.links.size(); ++i) link_index_.emplace(d.links[i].id, i);
  for (std::size_t i = 0; i < d.control_actions.size(); ++i) action_index_.emplace(d.control_actions[i].link, i);
}

const Node* SystemModel::find_node(const NodeId& id) const {
  auto it = node_index_.find(id);
  return it == node_index_.end() ? nullptr : &data_.nodes[it->second];
}

const Node& SystemModel::node(const NodeId& id) const {
  const Node* n = find_node(id);
  if (!n) throw Error("unknown node " + format_node_id(id));
  return *n;
}

const Link* SystemModel::find_link(const std::string& id) const {
  auto it = link_index_.find(id);
  return it == link_index_.end() ? nullptr : &data_.links[it->second];
}

const Hazard* SystemModel::find_hazard(const std::string& id) const {
  for (const auto& h : data_.hazards) {
    if (h.id == id) return &h;
  }
  return nullptr;
}

const ControlActionSpec* SystemModel::action_for_link(const std::string& link_id) const {
  auto it = action_index_.find(link_id);
  return it == action_index_.end() ? nullptr : &data_.control_actions[it->second];
}

const TopEventSpec* SystemModel::find_top_event(const std::string& id) const {
  for (const auto& t : data_.gates.top_events) {
    if (t.id == id) return &t;
  }
  return nullptr;
}

std::vector<std::string> SystemModel::division_tags() const {
  std::vector<std::string> tags;
  for (const auto& n : data_.nodes) {
    if (n.kind == NodeKind::kDivision) tags.push_back(n.id.division);
  }
  return tags;
}

std::vector<const Node*> SystemModel::members_of_class(const std::string& equipment_class) const {
  std::vector<const Node*> out;
  for (const auto& n : data_.nodes) {
    if (n.equipment_class == equipment_class) out.push_back(&n);
  }
  return out;
}

std::vector<const Node*> SystemModel::members_of_class(const std::string& equipment_class,
                                                       const std::string& division) const {
  std::vector<const Node*> out;
  for (const auto& n : data_.nodes) {
    if (n.equipment_class == equipment_class && n.id.division == division) out.push_back(&n);
  }
  return out;
}

bool SystemModel::has_class(const std::string& equipment_class) const {
  return std::ranges::any_of(data_.nodes, [&](const Node& n) { return n.equipment_class == equipment_class; });
}

std::string SystemModel::class_label(const std::string& equipment_class) const {
  auto it = data_.ccf_policy.class_labels.find(equipment_class);
  return it == data_.ccf_policy.class_labels.end() ? equipment_class : it->second;
}

}  // namespace resha
