#pragma once

#include <string>
#include <vector>

#include "resha/system_model.hpp"

namespace resha {

enum class GroupScope { kIntraDivision, kCrossDivision };

std::string to_string(GroupScope s);

/// Functionally identical nodes that can fail from a common cause.
struct RedundancyGroup {
  std::string equipment_class;
  GroupScope scope = GroupScope::kCrossDivision;
  std::string division;  // set for intra-division groups only
  std::vector<NodeId> members;

  std::vector<std::string> divisions() const;
  friend bool operator==(const RedundancyGroup&, const RedundancyGroup&) = default;
};

/// One intra-division group per (division, class) with at least two members,
/// and one cross-division group per class present in two or more divisions.
/// Output is sorted by (class, scope, division).
std::vector<RedundancyGroup> derive_redundancy_groups(const SystemModel& model);

/// One line per group; stable text used for diffs and reports.
std::string format_groups(const std::vector<RedundancyGroup>& groups);

}  // namespace resha
