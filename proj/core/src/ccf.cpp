#include "resha/ccf.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "resha/text_util.hpp"

namespace resha {

std::string to_string(CcfScope scope) {
  switch (scope) {
    case CcfScope::kIntraDivision: return "intra-division";
    case CcfScope::kCrossDivision: return "cross-division";
    case CcfScope::kPartialInterdivision: return "partial-interdivision";
  }
  return "?";
}

namespace {

char type_letter(UcaCategory c) { return static_cast<char>('A' + category_index(c)); }

std::string divisions_phrase(const std::vector<std::string>& divs) {
  if (divs.size() == 1) return "division " + divs.front();
  std::string out = "divisions ";
  for (std::size_t i = 0; i < divs.size(); ++i) {
    if (i) out += i + 1 == divs.size() ? " and " : ", ";
    out += divs[i];
  }
  return out;
}

// Digital classes get software CCFs; category d only where some member
// issues a continuous control action.
std::vector<UcaCategory> software_categories_of(const SystemModel& model, const std::vector<NodeId>& members) {
  for (const auto& m : members) {
    if (model.node(m).technology != Technology::kDigital) return {};
  }
  std::vector<UcaCategory> cats{UcaCategory::kNotProvided, UcaCategory::kProvidedUnneeded, UcaCategory::kWrongTiming};
  std::set<NodeId> member_set(members.begin(), members.end());
  for (const auto& ca : model.control_actions()) {
    const Link* link = model.find_link(ca.link);
    if (ca.continuous && link && member_set.contains(link->source)) {
      cats.push_back(UcaCategory::kWrongDuration);
      break;
    }
  }
  return cats;
}

void add_events(std::vector<CcfEvent>& out, const SystemModel& model, const CcfPolicy& policy, const std::string& cls,
                CcfScope scope, const std::vector<std::string>& divs, const std::vector<NodeId>& members) {
  std::string prefix;
  std::string where;
  switch (scope) {
    case CcfScope::kIntraDivision:
      prefix = divs.front() + "-";
      where = " within " + divisions_phrase(divs);
      break;
    case CcfScope::kPartialInterdivision:
      for (const auto& d : divs) prefix += d;
      prefix += "-";
      where = " across " + divisions_phrase(divs);
      break;
    case CcfScope::kCrossDivision: break;
  }
  const std::string label = model.class_label(cls);
  auto describe = [&](const std::string& name, std::string fallback) {
    auto it = policy.event_descriptions.find(name);
    return it == policy.event_descriptions.end() ? fallback : it->second;
  };

  CcfEvent hw{prefix + cls + "-HD-CCF", cls, scope, EventKind::kHwCcf, std::nullopt, divs, members, {}};
  hw.description = describe(hw.name, label + " hardware CCF" + where + ".");
  out.push_back(std::move(hw));
  for (UcaCategory c : software_categories_of(model, members)) {
    CcfEvent sw{prefix + cls + "-SF-CCF-T" + type_letter(c), cls, scope, EventKind::kSwCcf, c, divs, members, {}};
    sw.description = describe(sw.name, label + " software CCF type " + type_letter(c) + where + ".");
    out.push_back(std::move(sw));
  }
}

}  // namespace

std::vector<CcfEvent> enumerate_ccf_catalog(const SystemModel& model, const std::vector<RedundancyGroup>& groups,
                                            const CcfPolicy& policy) {
  std::vector<CcfEvent> out;
  for (const RedundancyGroup& g : groups) {
    if (g.scope == GroupScope::kIntraDivision) {
      add_events(out, model, policy, g.equipment_class, CcfScope::kIntraDivision, {g.division}, g.members);
      continue;
    }
    const auto divs = g.divisions();
    add_events(out, model, policy, g.equipment_class, CcfScope::kCrossDivision, divs, g.members);
    // proper subsets of two or more divisions, in bitmask order
    const std::size_t n = divs.size();
    if (n > 16) continue;
    std::vector<std::pair<std::size_t, unsigned>> subsets;
    for (unsigned mask = 1; mask < (1u << n) - 1; ++mask) {
      const auto size = static_cast<std::size_t>(std::popcount(mask));
      if (size >= 2) subsets.emplace_back(size, mask);
    }
    std::ranges::sort(subsets);
    for (const auto& [size, mask] : subsets) {
      std::vector<std::string> chosen;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (1u << i)) chosen.push_back(divs[i]);
      }
      std::vector<NodeId> members;
      for (const auto& m : g.members) {
        if (std::ranges::find(chosen, m.division) != chosen.end()) members.push_back(m);
      }
      add_events(out, model, policy, g.equipment_class, CcfScope::kPartialInterdivision, chosen, members);
    }
  }
  return out;
}

bool policy_admits(const CcfPolicy& policy, const std::set<UcaCategory>& software_categories, const CcfEvent& event) {
  if (policy.excluded_classes.contains(event.equipment_class)) return false;
  switch (event.scope) {
    case CcfScope::kIntraDivision:
      if (!policy.include_intra_division) return false;
      break;
    case CcfScope::kCrossDivision:
      if (!policy.include_cross_division) return false;
      break;
    case CcfScope::kPartialInterdivision:
      if (!policy.include_partial_interdivision) return false;
      break;
  }
  if (event.kind == EventKind::kSwCcf) {
    const auto& cats = policy.software_categories ? *policy.software_categories : software_categories;
    return cats.contains(*event.category);
  }
  return true;
}

CcfInjection inject_ccfs(const FaultTree& ft, const SystemModel& model, const std::vector<RedundancyGroup>& groups,
                         const CcfPolicy& policy, const std::set<UcaCategory>& software_categories) {
  CcfInjection result{ft, {}, {}};
  std::set<std::string> warned;
  for (const CcfEvent& e : enumerate_ccf_catalog(model, groups, policy)) {
    if (!policy_admits(policy, software_categories, e)) continue;
    const bool software = e.kind == EventKind::kSwCcf;
    std::vector<std::string> attach;
    for (const auto& m : e.members) {
      const std::string gate = software ? software_gate_name(m) : hardware_gate_name(m);
      if (result.tree.find_gate(gate)) attach.push_back(gate);
    }
    if (attach.empty()) continue;  // group lies outside this tree
    if (!software && software_categories_of(model, e.members).empty() && warned.insert(e.equipment_class).second) {
      const auto& cats = policy.software_categories ? *policy.software_categories : software_categories;
      if (!cats.empty()) {
        result.warnings.push_back("software CCFs skipped for class " + e.equipment_class +
                                  ": members are not digital and have no software failure node");
      }
    }
    BasicEvent be;
    be.id = e.name;
    be.kind = e.kind;
    be.subjects = e.members;
    be.category = e.category;
    be.equipment_class = e.equipment_class;
    be.description = e.description;
    result.tree.add_event(std::move(be));
    for (const auto& gate : attach) result.tree.add_child(gate, e.name);
    result.injected.push_back(e);
  }
  return result;
}

std::string ccf_catalog_to_csv(const std::vector<CcfEvent>& catalog) {
  std::string out = "name,class,scope,kind,category,members\n";
  for (const auto& e : catalog) {
    std::vector<std::string> members;
    for (const auto& m : e.members) members.push_back(format_node_id(m));
    out += csv_field(e.name) + "," + csv_field(e.equipment_class) + "," + to_string(e.scope) + "," +
           to_string(e.kind) + "," + (e.category ? std::string(1, category_letter(*e.category)) : std::string()) +
           "," + csv_field(join(members, " ")) + "\n";
  }
  return out;
}

}  // namespace resha
