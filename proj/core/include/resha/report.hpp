#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "resha/cutset.hpp"
#include "resha/fault_tree.hpp"
#include "resha/stpa.hpp"

namespace resha {

struct CausalPrompt {
  std::string factor;  // e.g. "inadequate-feedback"
  std::string text;
};

/// Reusable causal-factor prompts keyed by event kind, optionally narrowed
/// by equipment class and UCA category.
class GuidanceBank {
 public:
  struct Entry {
    EventKind kind = EventKind::kHwIndep;
    std::optional<std::string> equipment_class;
    std::optional<UcaCategory> category;
    std::vector<CausalPrompt> category_1;
    std::vector<CausalPrompt> category_2;
  };

  /// Throws FormatError on malformed JSON or an unknown version.
  static GuidanceBank parse(std::string_view json_text);
  /// The bank compiled into the library.
  static const GuidanceBank& builtin();

  int version() const noexcept { return version_; }
  const std::string& historical_data_note() const noexcept { return historical_note_; }
  std::string factor_label(const std::string& factor) const;
  /// Matching entries, most specific first.
  std::vector<const Entry*> lookup(const BasicEvent& event) const;

 private:
  int version_ = 0;
  std::string historical_note_;
  std::map<std::string, std::string> factor_labels_;
  std::vector<Entry> entries_;
};

std::string_view builtin_guidance_json();

struct CausalFactorWorksheet {
  std::string event_id;
  EventKind kind = EventKind::kHwIndep;
  std::string description;
  std::size_t order = 0;  // smallest cut set containing the event
  std::vector<std::string> hazards;  // UCA events only
  std::vector<CausalPrompt> category_1;  // unsafe controller behaviour
  std::vector<CausalPrompt> category_2;  // inadequate feedback or other inputs
  std::vector<std::string> notes;
  // filled in by the analysis team
  std::string scenario;
  std::string guidance;
  std::string disposition;
};

/// One worksheet per distinct event in `sets`, ordered by (order, event ID).
/// Hardware events get category-1 physical prompts and the historical-data note only.
std::vector<CausalFactorWorksheet> generate_worksheets(const std::vector<CutSet>& sets,
                                                       const std::vector<UcaRecord>& ucas, const FaultTree& ft,
                                                       const GuidanceBank& bank = GuidanceBank::builtin());

std::string render_worksheets(const std::vector<CausalFactorWorksheet>& worksheets, const GuidanceBank& bank);

}  // namespace resha
