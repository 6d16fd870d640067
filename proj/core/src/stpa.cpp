#include "resha/stpa.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "resha/text_util.hpp"

namespace resha {

std::string ControlAction::description() const { return source_name + " " + verb; }

std::vector<std::string> ControlLayer::subsystems(const SystemModel& model) const {
  std::set<std::string> out;
  for (const auto& c : controllers) out.insert(model.node(c).subsystem);
  return {out.begin(), out.end()};
}

std::vector<const ControlAction*> ControlStructure::actions() const {
  std::vector<const ControlAction*> out;
  for (const auto& layer : layers) {
    for (const auto& a : layer.actions) out.push_back(&a);
  }
  return out;
}

const ControlAction* ControlStructure::find_action(const std::string& ca_id) const {
  for (const auto& layer : layers) {
    for (const auto& a : layer.actions) {
      if (a.id == ca_id) return &a;
    }
  }
  return nullptr;
}

std::size_t ControlStructure::action_count() const {
  std::size_t n = 0;
  for (const auto& layer : layers) n += layer.actions.size();
  return n;
}

ControlStructure build_layered_control_structure(const SystemModel& model) {
  std::map<int, ControlLayer> by_level;
  for (const Link& link : model.links()) {
    if (link.type == LinkType::kFeedback) {
      const int level = model.node(link.targets.front()).id.depth();
      auto& layer = by_level[level];
      FeedbackSignal fb;
      fb.layer = level;
      fb.link = link.id;
      fb.source = link.source;
      fb.target = link.targets.front();
      layer.feedback.push_back(std::move(fb));
      continue;
    }
    const Node& src = model.node(link.source);
    const ControlActionSpec* spec = model.action_for_link(link.id);
    const int level = src.id.depth();
    ControlAction ca;
    ca.layer = level;
    ca.link = link.id;
    ca.source = link.source;
    ca.targets = link.targets;
    ca.source_name = src.name;
    ca.target_phrase = spec->target_phrase.empty() ? model.node(link.targets.front()).name : spec->target_phrase;
    ca.command = spec->command;
    ca.verb = spec->verb;
    ca.continuous = spec->continuous;
    ca.split = link.type == LinkType::kPhysicalSplit;
    ca.refined = spec->refined;
    ca.contexts = spec->contexts;
    ca.hazards = spec->hazards;
    ca.not_applicable = spec->not_applicable;
    by_level[level].actions.push_back(std::move(ca));
  }

  ControlStructure cs;
  int ca_number = 0;
  int fb_number = 0;
  for (auto& [level, layer] : by_level) {
    if (layer.actions.empty() && layer.feedback.empty()) continue;
    layer.level = level;
    layer.level_kind = static_cast<NodeKind>(level - 1);
    std::ranges::sort(layer.actions, [](const ControlAction& a, const ControlAction& b) {
      return std::tie(a.source, a.targets) < std::tie(b.source, b.targets);
    });
    std::ranges::sort(layer.feedback, [](const FeedbackSignal& a, const FeedbackSignal& b) {
      return std::tie(a.source, a.target) < std::tie(b.source, b.target);
    });
    std::set<NodeId> controllers;
    std::set<NodeId> controlled;
    for (auto& a : layer.actions) {
      a.number = ++ca_number;
      a.id = "CA" + std::to_string(a.number);
      controllers.insert(a.source);
      controlled.insert(a.targets.begin(), a.targets.end());
    }
    for (auto& f : layer.feedback) {
      f.number = ++fb_number;
      f.id = "FB" + std::to_string(f.number);
    }
    layer.controllers.assign(controllers.begin(), controllers.end());
    layer.controlled.assign(controlled.begin(), controlled.end());
    cs.layers.push_back(std::move(layer));
  }
  if (ca_number == 0) throw Error("control structure is empty: the model declares no control links");
  return cs;
}

std::string render_control_action_table(const ControlStructure& cs) {
  std::ostringstream os;
  os << "| CA | Layer | Controller | Controlled | Control action | Split |\n";
  os << "|---|---|---|---|---|---|\n";
  for (const auto& layer : cs.layers) {
    for (const auto& a : layer.actions) {
      std::vector<std::string> targets;
      for (const auto& t : a.targets) targets.push_back(format_node_id(t));
      os << "| " << a.id << " | " << layer.level << " (" << to_string(layer.level_kind) << ") | "
         << format_node_id(a.source) << " | " << join(targets, ", ") << " | " << markdown_escape(a.description())
         << " | " << (a.split ? "yes" : "no") << " |\n";
    }
  }
  return os.str();
}

std::set<UcaCategory> categories_for(TopEventKind kind) {
  if (kind == TopEventKind::kFailureToAct) return {UcaCategory::kNotProvided, UcaCategory::kWrongTiming};
  return {UcaCategory::kProvidedUnneeded};
}

namespace {

constexpr std::string_view kDiscreteJustification =
    "Discrete command with no duration; a held-too-long or stopped-too-soon case cannot arise.";

std::string hazard_bracket(const std::vector<std::string>& hazards) {
  return "[" + join(hazards, ", ") + "]";
}

}  // namespace

std::vector<UcaRecord> enumerate_ucas(const ControlStructure& cs, const std::vector<Hazard>& hazards,
                                      const std::vector<ApplicabilityOverride>& overrides) {
  std::set<std::string> hazard_ids;
  for (const auto& h : hazards) hazard_ids.insert(h.id);
  std::map<std::pair<std::string, UcaCategory>, const ApplicabilityOverride*> by_slot;
  for (const auto& o : overrides) {
    if (!cs.find_action(o.ca_id)) throw Error("applicability override references unknown control action " + o.ca_id);
    if (!o.applicable && o.justification.empty()) {
      throw Error("override marking " + o.ca_id + category_letter(o.category) + " not applicable needs a justification");
    }
    by_slot[{o.ca_id, o.category}] = &o;
  }

  std::vector<UcaRecord> out;
  out.reserve(cs.action_count() * 4);
  for (const ControlAction* ca : cs.actions()) {
    for (UcaCategory cat : kAllUcaCategories) {
      const auto idx = category_index(cat);
      UcaRecord r;
      r.id = "U" + ca->id + category_letter(cat);
      r.ca_id = ca->id;
      r.category = cat;
      r.source = ca->source;
      r.source_name = ca->source_name;
      r.command = ca->command;
      r.target_phrase = ca->target_phrase;
      r.context = ca->contexts[idx];
      r.continuous = ca->continuous;
      r.split = ca->split;
      r.refined = ca->refined;
      r.destinations = ca->targets.size();
      if (ca->not_applicable[idx]) {
        r.justification = *ca->not_applicable[idx];
      } else if (cat == UcaCategory::kWrongDuration && !ca->continuous) {
        r.justification = std::string(kDiscreteJustification);
      } else {
        r.applicable = true;
        r.hazards = ca->hazards[idx];
      }
      if (auto it = by_slot.find({ca->id, cat}); it != by_slot.end()) {
        const auto& o = *it->second;
        r.applicable = o.applicable;
        if (o.applicable) {
          r.justification.clear();
          if (!o.hazards.empty()) r.hazards = o.hazards;
          if (r.hazards.empty()) throw Error("override makes " + r.id + " applicable without hazards");
        } else {
          r.justification = o.justification;
          r.hazards.clear();
        }
      }
      for (const auto& h : r.hazards) {
        if (!hazard_ids.contains(h)) throw Error(r.id + " links unknown hazard " + h);
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::string render_uca_text(const UcaRecord& uca) {
  if (!uca.applicable) return "Not applicable.";
  std::string text = uca.source_name;
  text += uca.category == UcaCategory::kNotProvided ? " does not provide " : " provides ";
  text += uca.command + " to " + uca.target_phrase;
  if (uca.category == UcaCategory::kWrongDuration) text += " for too long or stops it too soon";
  if (!uca.context.empty()) text += " " + uca.context;
  text += " " + hazard_bracket(uca.hazards) + ".";
  return text;
}

std::vector<UcaRecord> select_ucas_for_top_event(const std::vector<UcaRecord>& ucas, TopEventKind kind) {
  const auto wanted = categories_for(kind);
  std::vector<UcaRecord> out;
  for (const auto& u : ucas) {
    if (u.applicable && !u.refined && wanted.contains(u.category)) out.push_back(u);
  }
  return out;
}

UcaCounts count_ucas(const std::vector<UcaRecord>& ucas) {
  UcaCounts c;
  std::set<std::string> cas;
  for (const auto& u : ucas) {
    if (cas.insert(u.ca_id).second) c.unsplit_potential += 4 * (u.split ? u.destinations : 1);
    ++c.potential;
    if (u.applicable) ++c.identified;
  }
  c.control_actions = cas.size();
  return c;
}

std::string ucas_to_csv(const std::vector<UcaRecord>& ucas) {
  std::string out = "ca_id,uca_id,category,applicable,text,hazards,justification\n";
  for (const auto& u : ucas) {
    out += u.ca_id + "," + u.id + "," + category_letter(u.category) + "," + (u.applicable ? "yes" : "no") + "," +
           csv_field(render_uca_text(u)) + "," + csv_field(join(u.hazards, " ")) + "," + csv_field(u.justification) +
           "\n";
  }
  return out;
}

std::string ucas_to_markdown(const ControlStructure& cs, const std::vector<UcaRecord>& ucas) {
  std::map<std::string, std::vector<const UcaRecord*>> by_ca;
  for (const auto& u : ucas) by_ca[u.ca_id].push_back(&u);
  std::ostringstream os;
  os << "| Control action | (a) Not provided | (b) Provided when not needed | (c) Wrong timing or order | "
        "(d) Stopped too soon or applied too long |\n";
  os << "|---|---|---|---|---|\n";
  for (const ControlAction* ca : cs.actions()) {
    auto it = by_ca.find(ca->id);
    if (it == by_ca.end()) continue;
    os << "| " << ca->id << ": " << markdown_escape(ca->description());
    if (ca->refined) os << " (refined below)";
    os << " |";
    std::array<const UcaRecord*, 4> slots{};
    for (const UcaRecord* u : it->second) slots[category_index(u->category)] = u;
    for (const UcaRecord* u : slots) {
      if (!u) {
        os << " |";
        continue;
      }
      os << " " << u->id << ": " << markdown_escape(render_uca_text(*u)) << " |";
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace resha
