#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "resha/common.hpp"
#include "resha/node_id.hpp"

namespace resha {

struct BasicEvent {
  std::string id;
  EventKind kind = EventKind::kHwIndep;
  std::vector<NodeId> subjects;
  std::optional<UcaCategory> category;  // SW_UCA, HUMAN_UCA and SW_CCF only
  std::string uca_id;                   // SW_UCA / HUMAN_UCA only
  std::string equipment_class;
  std::string description;

  friend bool operator==(const BasicEvent&, const BasicEvent&) = default;
};

/// AND, OR or VOTE(k, n) with n = children.size(). An OR with no children is
/// an attachment point and evaluates to false.
struct Gate {
  std::string id;
  GateKind kind = GateKind::kOr;
  int k = 0;
  std::vector<std::string> children;
  std::string description;

  friend bool operator==(const Gate&, const Gate&) = default;
};

/// Coherent fault tree: a DAG of gates over basic events. Gate and event IDs
/// share one namespace.
class FaultTree {
 public:
  FaultTree() = default;
  explicit FaultTree(std::string top) : top_(std::move(top)) {}

  const std::string& top() const noexcept { return top_; }
  void set_top(std::string top) { top_ = std::move(top); }

  /// Throws TreeError if the ID is taken.
  Gate& add_gate(Gate gate);
  BasicEvent& add_event(BasicEvent event);
  /// Appends a child reference; throws TreeError on unknown gate or duplicate child.
  void add_child(const std::string& gate, const std::string& child);

  const Gate* find_gate(std::string_view id) const;
  Gate* find_gate(std::string_view id);
  const BasicEvent* find_event(std::string_view id) const;
  bool contains(std::string_view id) const { return find_gate(id) || find_event(id); }

  const std::map<std::string, Gate, std::less<>>& gates() const noexcept { return gates_; }
  const std::map<std::string, BasicEvent, std::less<>>& events() const noexcept { return events_; }

  /// Dangling references, cycles, VOTE arity, unreachable gates. Throws TreeError.
  void validate() const;

  /// Gates reachable from the top, children before parents. Throws TreeError on a cycle.
  std::vector<std::string> topological_gates() const;

  friend bool operator==(const FaultTree&, const FaultTree&) = default;

 private:
  std::string top_;
  std::map<std::string, Gate, std::less<>> gates_;
  std::map<std::string, BasicEvent, std::less<>> events_;
};

/// Hierarchical copy of everything reachable from `gate`. Throws TreeError if unknown.
FaultTree extract_subtree(const FaultTree& ft, const std::string& gate);

struct FilteredTree {
  FaultTree tree;
  /// Every path to the top was removed; `tree` is then a single empty OR.
  bool top_unreachable = false;
};

/// Fixes events outside `keep` to false and simplifies. Gates with no removed
/// descendants are left untouched.
FilteredTree filter_events(const FaultTree& ft, const EventKindSet& keep);

/// Exchange JSON: {"top": ..., "gates": [...], "events": [...]}, sorted, two-space indent.
std::string fault_tree_to_json(const FaultTree& ft);
/// Throws FormatError on malformed input and TreeError on structural problems.
FaultTree fault_tree_from_json(std::string_view text);

/// Open-PSA model-exchange XML (emit only).
std::string fault_tree_to_opsa_xml(const FaultTree& ft, std::string_view name);

/// Canonical node names used by the builder.
std::string failure_gate_name(const NodeId& id);
std::string hardware_gate_name(const NodeId& id);
std::string software_gate_name(const NodeId& id);
std::string human_gate_name(const NodeId& id);
std::string independent_event_name(const std::string& equipment_class, const NodeId& id);

}  // namespace resha
