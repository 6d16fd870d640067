#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "resha/system_model.hpp"

namespace resha {

/// A numbered control action (CAn) in the layered control structure.
struct ControlAction {
  std::string id;  // "CA18"
  int number = 0;
  int layer = 0;  // hierarchy depth of the controller: 1 division .. 4 component
  std::string link;
  NodeId source;
  std::vector<NodeId> targets;
  std::string source_name;
  std::string target_phrase;
  std::string command;
  std::string verb;
  bool continuous = false;
  bool split = false;
  bool refined = false;
  std::array<std::string, 4> contexts;
  std::array<std::vector<std::string>, 4> hazards;
  std::array<std::optional<std::string>, 4> not_applicable;

  /// "DOM-1 demands SP1 to trip the reactor"
  std::string description() const;
};

/// A numbered feedback signal (FBn).
struct FeedbackSignal {
  std::string id;
  int number = 0;
  int layer = 0;
  std::string link;
  NodeId source;
  NodeId target;
};

struct ControlLayer {
  int level = 0;
  NodeKind level_kind = NodeKind::kDivision;
  std::vector<NodeId> controllers;
  std::vector<NodeId> controlled;
  std::vector<ControlAction> actions;
  std::vector<FeedbackSignal> feedback;

  /// Distinct subsystem labels of this layer's controllers, sorted.
  std::vector<std::string> subsystems(const SystemModel& model) const;
};

/// Redundancy-guided multi-layer control structure. Layers are ordered
/// from the highest redundancy level (divisions) down; numbering runs by
/// layer, then source ID, then target ID.
struct ControlStructure {
  std::vector<ControlLayer> layers;

  std::vector<const ControlAction*> actions() const;
  const ControlAction* find_action(const std::string& ca_id) const;
  std::size_t action_count() const;
};

/// Builds the layered structure. Throws Error when the model has no control links.
ControlStructure build_layered_control_structure(const SystemModel& model);

/// Control-action tracking table (Markdown).
std::string render_control_action_table(const ControlStructure& cs);

struct UcaRecord {
  std::string id;  // "UCA18a"
  std::string ca_id;
  UcaCategory category = UcaCategory::kNotProvided;
  NodeId source;
  std::string source_name;
  std::string command;
  std::string target_phrase;
  std::string context;
  std::vector<std::string> hazards;
  bool applicable = false;
  std::string justification;
  bool continuous = false;
  bool split = false;
  bool refined = false;
  std::size_t destinations = 1;  // physical destinations behind a split signal
};

/// Per-slot override of applicability. `applicable=false` needs a justification;
/// `applicable=true` may supply hazards (otherwise the model's list is used).
struct ApplicabilityOverride {
  std::string ca_id;
  UcaCategory category = UcaCategory::kNotProvided;
  bool applicable = false;
  std::string justification;
  std::vector<std::string> hazards;
};

/// Four slots per control action, ordered by CA number then category.
/// Throws Error when an override names an unknown control action or hazard.
std::vector<UcaRecord> enumerate_ucas(const ControlStructure& cs, const std::vector<Hazard>& hazards,
                                      const std::vector<ApplicabilityOverride>& overrides = {});

/// [source] + [type] + [action] + [context] + [hazard links].
std::string render_uca_text(const UcaRecord& uca);

/// Failure to act keeps categories a and c; spurious action keeps b.
/// Only applicable records that belong in the fault tree are returned.
std::vector<UcaRecord> select_ucas_for_top_event(const std::vector<UcaRecord>& ucas, TopEventKind kind);

std::set<UcaCategory> categories_for(TopEventKind kind);

struct UcaCounts {
  std::size_t control_actions = 0;
  std::size_t potential = 0;   // 4 x |CAs|
  std::size_t identified = 0;  // applicable slots
  std::size_t unsplit_potential = 0;  // as if every split signal were enumerated per destination
};

UcaCounts count_ucas(const std::vector<UcaRecord>& ucas);

/// CSV columns: ca_id,uca_id,category,applicable,text,hazards,justification
std::string ucas_to_csv(const std::vector<UcaRecord>& ucas);

/// Table with one row per control action and one column per category.
std::string ucas_to_markdown(const ControlStructure& cs, const std::vector<UcaRecord>& ucas);

}  // namespace resha
