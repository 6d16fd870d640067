#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "resha/common.hpp"
#include "resha/error.hpp"
#include "resha/node_id.hpp"

namespace resha {

enum class Technology { kDigital, kAnalog, kHuman };

std::string to_string(Technology t);
Technology technology_from_string(std::string_view text);

struct Node {
  NodeId id;
  std::string name;
  NodeKind kind = NodeKind::kComponent;
  std::string role;
  Technology technology = Technology::kDigital;
  /// Required on components, optional elsewhere. Nodes sharing a class are
  /// treated as identical equipment.
  std::optional<std::string> equipment_class;
  /// Top-level grouping for the first control-structure layer (e.g. "RPS").
  /// Defaults to the division tag.
  std::string subsystem;
};

enum class LinkType { kControl, kFeedback, kPhysicalSplit };

std::string to_string(LinkType t);
LinkType link_type_from_string(std::string_view text);

/// Directed edge. A physical-split link is one control signal distributed to
/// several destinations.
struct Link {
  std::string id;
  LinkType type = LinkType::kControl;
  NodeId source;
  std::vector<NodeId> targets;
};

struct Loss {
  std::string id;
  std::string description;
};

struct Hazard {
  std::string id;
  std::string description;
  std::vector<std::string> losses;
};

/// Model-supplied wording and hazard links for one control link.
struct ControlActionSpec {
  std::string link;
  std::string command;        // noun phrase used in UCA text, "trip command"
  std::string verb;           // "demands SP1 to trip the reactor"
  std::string target_phrase;  // defaults to the target node's name
  bool continuous = false;
  /// Abstract action that lower layers refine; listed in the UCA table but
  /// never added to the fault tree.
  bool refined = false;
  std::array<std::string, 4> contexts;
  std::array<std::vector<std::string>, 4> hazards;
  std::array<std::optional<std::string>, 4> not_applicable;
};

enum class Replication { kNone, kPerDivision, kPerUnit };

std::string to_string(Replication r);
Replication replication_from_string(std::string_view text);

/// Failure-side gate template. See docs/model_format.md for the token grammar.
struct GateDeclaration {
  std::string id;
  GateKind kind = GateKind::kOr;
  int k = 0;
  std::vector<std::string> inputs;
  Replication replicate = Replication::kNone;
  std::string equipment_class;
  std::string description;
};

struct AnalysisScope {
  std::string label;
  std::string gate;
  std::string filter = "all";
};

struct TopEventSpec {
  std::string id;
  std::string gate;
  TopEventKind kind = TopEventKind::kFailureToAct;
  std::string description;
  std::vector<AnalysisScope> scopes;
};

struct GateSection {
  std::vector<TopEventSpec> top_events;
  std::vector<GateDeclaration> declarations;
};

struct CcfPolicy {
  bool include_intra_division = true;
  bool include_cross_division = true;
  bool include_partial_interdivision = false;
  /// Unset means "follow the top-event selection" ({a, c} or {b}).
  std::optional<std::set<UcaCategory>> software_categories;
  std::set<std::string> excluded_classes;
  std::map<std::string, std::string> class_labels;
  std::map<std::string, std::string> event_descriptions;

  bool any_scope_enabled() const noexcept {
    return include_intra_division || include_cross_division || include_partial_interdivision;
  }
};

/// All inputs of a model document, unvalidated.
struct ModelParts {
  std::string name;
  std::string description;
  std::vector<Node> nodes;
  std::vector<Link> links;
  std::vector<Loss> losses;
  std::vector<Hazard> hazards;
  std::vector<ControlActionSpec> control_actions;
  GateSection gates;
  CcfPolicy ccf_policy;
};

/// Validated, immutable system model. Every array is kept sorted by ID.
class SystemModel {
 public:
  /// Validates and sorts. Throws ModelError listing every violation.
  static SystemModel create(ModelParts parts);

  const std::string& name() const noexcept { return data_.name; }
  const std::string& description() const noexcept { return data_.description; }
  const std::vector<Node>& nodes() const noexcept { return data_.nodes; }
  const std::vector<Link>& links() const noexcept { return data_.links; }
  const std::vector<Loss>& losses() const noexcept { return data_.losses; }
  const std::vector<Hazard>& hazards() const noexcept { return data_.hazards; }
  const std::vector<ControlActionSpec>& control_actions() const noexcept { return data_.control_actions; }
  const GateSection& gates() const noexcept { return data_.gates; }
  const CcfPolicy& ccf_policy() const noexcept { return data_.ccf_policy; }
  const ModelParts& parts() const noexcept { return data_; }

  const Node* find_node(const NodeId& id) const;
  const Node& node(const NodeId& id) const;
  const Link* find_link(const std::string& id) const;
  const Hazard* find_hazard(const std::string& id) const;
  const ControlActionSpec* action_for_link(const std::string& link_id) const;
  const TopEventSpec* find_top_event(const std::string& id) const;

  std::vector<std::string> division_tags() const;
  /// Class-bearing nodes of a class, sorted by ID.
  std::vector<const Node*> members_of_class(const std::string& equipment_class) const;
  std::vector<const Node*> members_of_class(const std::string& equipment_class, const std::string& division) const;
  bool has_class(const std::string& equipment_class) const;
  std::string class_label(const std::string& equipment_class) const;

 private:
  explicit SystemModel(ModelParts parts);

  ModelParts data_;
  std::unordered_map<NodeId, std::size_t> node_index_;
  std::map<std::string, std::size_t> link_index_;
  std::map<std::string, std::size_t> action_index_;
};

/// Structural checks only; empty result means valid.
std::vector<Diagnostic> validate_model_parts(const ModelParts& parts);

}  // namespace resha
