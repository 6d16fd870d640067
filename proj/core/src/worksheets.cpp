#include <algorithm>
#include <map>
#include <sstream>

#include "resha/detail/json.hpp"

#include "resha/error.hpp"
#include "resha/report.hpp"
#include "resha/text_util.hpp"

namespace resha {

using nlohmann::json;

std::string_view builtin_guidance_json() {
  static constexpr char kData[] =
#include "guidance_bank_data.inc"
      ;
  return {kData, sizeof kData - 1};
}

namespace {

std::vector<CausalPrompt> read_prompts(const json& j, const char* key) {
  std::vector<CausalPrompt> out;
  if (!j.contains(key)) return out;
  for (const json& p : j.at(key)) out.push_back({p.at("factor").get<std::string>(), p.at("text").get<std::string>()});
  return out;
}

}  // namespace

GuidanceBank GuidanceBank::parse(std::string_view json_text) {
  GuidanceBank bank;
  try {
    const json doc = json::parse(json_text);
    bank.version_ = doc.at("guidance_bank_version").get<int>();
    if (bank.version_ != 1) {
      throw FormatError("unsupported guidance bank version " + std::to_string(bank.version_), "guidance_bank_version");
    }
    bank.historical_note_ = doc.value("historical_data_note", "");
    for (const auto& [k, v] : doc.at("factors").items()) bank.factor_labels_[k] = v.get<std::string>();
    for (const json& e : doc.at("entries")) {
      Entry entry;
      const json& m = e.at("match");
      entry.kind = event_kind_from_string(m.at("kind").get<std::string>());
      if (m.contains("class")) entry.equipment_class = m.at("class").get<std::string>();
      if (m.contains("category")) entry.category = category_from_letter(m.at("category").get<std::string>().at(0));
      entry.category_1 = read_prompts(e, "category_1");
      entry.category_2 = read_prompts(e, "category_2");
      for (const auto& p : entry.category_1) {
        if (!bank.factor_labels_.contains(p.factor)) throw FormatError("unknown causal factor '" + p.factor + "'", p.factor);
      }
      for (const auto& p : entry.category_2) {
        if (!bank.factor_labels_.contains(p.factor)) throw FormatError("unknown causal factor '" + p.factor + "'", p.factor);
      }
      bank.entries_.push_back(std::move(entry));
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("guidance bank: ") + e.what(), "guidance bank");
  }
  return bank;
}

const GuidanceBank& GuidanceBank::builtin() {
  static const GuidanceBank bank = parse(builtin_guidance_json());
  return bank;
}

std::string GuidanceBank::factor_label(const std::string& factor) const {
  auto it = factor_labels_.find(factor);
  return it == factor_labels_.end() ? factor : it->second;
}

std::vector<const GuidanceBank::Entry*> GuidanceBank::lookup(const BasicEvent& event) const {
  std::vector<std::pair<int, const Entry*>> hits;
  for (const Entry& e : entries_) {
    if (e.kind != event.kind) continue;
    if (e.equipment_class && *e.equipment_class != event.equipment_class) continue;
    if (e.category && e.category != event.category) continue;
    hits.emplace_back(static_cast<int>(e.equipment_class.has_value()) + static_cast<int>(e.category.has_value()), &e);
  }
  std::ranges::stable_sort(hits, [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<const Entry*> out;
  for (const auto& [_, e] : hits) out.push_back(e);
  return out;
}

std::vector<CausalFactorWorksheet> generate_worksheets(const std::vector<CutSet>& sets,
                                                       const std::vector<UcaRecord>& ucas, const FaultTree& ft,
                                                       const GuidanceBank& bank) {
  std::map<std::string, std::size_t> first_order;
  for (const auto& s : sets) {
    for (const auto& e : s.events) {
      auto [it, inserted] = first_order.emplace(e, s.order());
      if (!inserted) it->second = std::min(it->second, s.order());
    }
  }
  std::map<std::string, const UcaRecord*> uca_by_id;
  for (const auto& u : ucas) uca_by_id[u.id] = &u;

  std::vector<CausalFactorWorksheet> out;
  for (const auto& [id, order] : first_order) {
    const BasicEvent* event = ft.find_event(id);
    if (!event) throw TreeError("cut set names unknown event '" + id + "'");
    CausalFactorWorksheet w;
    w.event_id = id;
    w.kind = event->kind;
    w.description = event->description;
    w.order = order;
    if (auto it = uca_by_id.find(event->uca_id); it != uca_by_id.end()) w.hazards = it->second->hazards;
    for (const auto* entry : bank.lookup(*event)) {
      if (is_hardware(event->kind)) {
        for (const auto& p : entry->category_1) {
          if (p.factor == "physical-failure") w.category_1.push_back(p);
        }
        continue;
      }
      w.category_1.insert(w.category_1.end(), entry->category_1.begin(), entry->category_1.end());
      w.category_2.insert(w.category_2.end(), entry->category_2.begin(), entry->category_2.end());
    }
    if (is_hardware(event->kind) && !bank.historical_data_note().empty()) w.notes.push_back(bank.historical_data_note());
    if (is_ccf(event->kind)) {
      w.notes.push_back("Shared by " + std::to_string(event->subjects.size()) +
                        " redundant units; a diversity or defense-in-depth measure that breaks the commonality removes "
                        "it as a single cause.");
    }
    out.push_back(std::move(w));
  }
  std::ranges::stable_sort(out, [](const CausalFactorWorksheet& a, const CausalFactorWorksheet& b) {
    return std::tie(a.order, a.event_id) < std::tie(b.order, b.event_id);
  });
  return out;
}

std::string render_worksheets(const std::vector<CausalFactorWorksheet>& worksheets, const GuidanceBank& bank) {
  std::ostringstream os;
  for (const auto& w : worksheets) {
    os << "### " << w.event_id << "\n\n";
    os << "- Kind: " << to_string(w.kind) << "\n";
    os << "- Description: " << w.description << "\n";
    os << "- Lowest cut-set order: " << w.order << "\n";
    if (!w.hazards.empty()) os << "- Hazards: " << join(w.hazards, ", ") << "\n";
    os << "\n";
    auto section = [&](const char* title, const std::vector<CausalPrompt>& prompts) {
      if (prompts.empty()) return;
      os << "**" << title << "**\n\n";
      for (const auto& p : prompts) os << "- *" << bank.factor_label(p.factor) << ".* " << p.text << "\n";
      os << "\n";
    };
    section("Category 1: unsafe controller behaviour", w.category_1);
    section("Category 2: inadequate feedback or other inputs", w.category_2);
    for (const auto& n : w.notes) os << "> " << n << "\n";
    if (!w.notes.empty()) os << "\n";
    os << "| Scenario | Design guidance | Disposition |\n|---|---|---|\n| " << markdown_escape(w.scenario) << " | "
       << markdown_escape(w.guidance) << " | " << markdown_escape(w.disposition) << " |\n\n";
  }
  return os.str();
}

}  // namespace resha
