#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "resha/fault_tree.hpp"
#include "resha/redundancy.hpp"
#include "resha/system_model.hpp"

namespace resha {

enum class CcfScope { kIntraDivision, kCrossDivision, kPartialInterdivision };

std::string to_string(CcfScope scope);

struct CcfEvent {
  std::string name;
  std::string equipment_class;
  CcfScope scope = CcfScope::kCrossDivision;
  EventKind kind = EventKind::kHwCcf;
  std::optional<UcaCategory> category;  // SW_CCF only
  std::vector<std::string> divisions;
  std::vector<NodeId> members;
  std::string description;

  friend bool operator==(const CcfEvent&, const CcfEvent&) = default;
};

/// Every CCF event the groups admit, regardless of which scopes the policy
/// enables: hardware per scope, software per category for digital classes,
/// and partial inter-division combinations of cross-division groups.
/// Only the policy's labels and description overrides are used.
std::vector<CcfEvent> enumerate_ccf_catalog(const SystemModel& model, const std::vector<RedundancyGroup>& groups,
                                            const CcfPolicy& policy);

/// Whether the policy injects this catalog entry for the given software categories.
bool policy_admits(const CcfPolicy& policy, const std::set<UcaCategory>& software_categories, const CcfEvent& event);

struct CcfInjection {
  FaultTree tree;
  std::vector<CcfEvent> injected;
  std::vector<std::string> warnings;
};

/// Attaches each admitted event, as one shared basic event, under the HW- gate
/// (hardware) or SW- gate (software) of every member present in the tree.
/// Software CCFs for members with no software gate are skipped with a warning.
CcfInjection inject_ccfs(const FaultTree& ft, const SystemModel& model, const std::vector<RedundancyGroup>& groups,
                         const CcfPolicy& policy, const std::set<UcaCategory>& software_categories);

/// CSV columns: name,class,scope,kind,category,members
std::string ccf_catalog_to_csv(const std::vector<CcfEvent>& catalog);

}  // namespace resha
