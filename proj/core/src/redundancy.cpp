#include "resha/redundancy.hpp"

#include <map>
#include <set>
#include <sstream>

namespace resha {

std::string to_string(GroupScope s) { return s == GroupScope::kIntraDivision ? "intra-division" : "cross-division"; }

std::vector<std::string> RedundancyGroup::divisions() const {
  std::set<std::string> tags;
  for (const auto& m : members) tags.insert(m.division);
  return {tags.begin(), tags.end()};
}

std::vector<RedundancyGroup> derive_redundancy_groups(const SystemModel& model) {
  // class -> division -> members; nodes() is already sorted so members stay sorted
  std::map<std::string, std::map<std::string, std::vector<NodeId>>> by_class;
  for (const Node& n : model.nodes()) {
    if (n.equipment_class) by_class[*n.equipment_class][n.id.division].push_back(n.id);
  }
  std::vector<RedundancyGroup> groups;
  for (const auto& [cls, divisions] : by_class) {
    for (const auto& [div, members] : divisions) {
      if (members.size() >= 2) groups.push_back({cls, GroupScope::kIntraDivision, div, members});
    }
    if (divisions.size() >= 2) {
      RedundancyGroup cross{cls, GroupScope::kCrossDivision, {}, {}};
      for (const auto& [div, members] : divisions) cross.members.insert(cross.members.end(), members.begin(), members.end());
      groups.push_back(std::move(cross));
    }
  }
  return groups;
}

std::string format_groups(const std::vector<RedundancyGroup>& groups) {
  std::ostringstream os;
  for (const auto& g : groups) {
    os << g.equipment_class << ' ' << to_string(g.scope);
    if (!g.division.empty()) os << ' ' << g.division;
    os << ':';
    for (const auto& m : g.members) os << ' ' << format_node_id(m);
    os << '\n';
  }
  return os.str();
}

}  // namespace resha
