#include "resha/common.hpp"

#include "resha/error.hpp"

namespace resha {

char category_letter(UcaCategory c) noexcept { return static_cast<char>('a' + static_cast<int>(c)); }

UcaCategory category_from_letter(char letter) {
  if (letter >= 'A' && letter <= 'D') letter = static_cast<char>(letter - 'A' + 'a');
  if (letter < 'a' || letter > 'd') {
    throw FormatError(std::string("unknown UCA category '") + letter + "'", std::string(1, letter));
  }
  return static_cast<UcaCategory>(letter - 'a');
}

std::string category_name(UcaCategory c) {
  switch (c) {
    case UcaCategory::kNotProvided: return "NotProvided";
    case UcaCategory::kProvidedUnneeded: return "ProvidedUnneeded";
    case UcaCategory::kWrongTiming: return "WrongTiming";
    case UcaCategory::kWrongDuration: return "WrongDuration";
  }
  return "?";
}

std::string to_string(TopEventKind kind) {
  return kind == TopEventKind::kFailureToAct ? "failure-to-act" : "spurious-action";
}

TopEventKind top_event_kind_from_string(std::string_view text) {
  if (text == "failure-to-act") return TopEventKind::kFailureToAct;
  if (text == "spurious-action") return TopEventKind::kSpuriousAction;
  throw FormatError("unknown top-event kind '" + std::string(text) + "'", std::string(text));
}

std::string to_string(GateKind kind) {
  switch (kind) {
    case GateKind::kAnd: return "and";
    case GateKind::kOr: return "or";
    case GateKind::kVote: return "vote";
  }
  return "?";
}

GateKind gate_kind_from_string(std::string_view text) {
  if (text == "and" || text == "AND") return GateKind::kAnd;
  if (text == "or" || text == "OR") return GateKind::kOr;
  if (text == "vote" || text == "VOTE" || text == "atleast") return GateKind::kVote;
  throw FormatError("unknown gate kind '" + std::string(text) + "'", std::string(text));
}

std::string to_string(EventKind kind) {
  switch (kind) {
    case EventKind::kHwIndep: return "HW_INDEP";
    case EventKind::kHwCcf: return "HW_CCF";
    case EventKind::kSwUca: return "SW_UCA";
    case EventKind::kSwCcf: return "SW_CCF";
    case EventKind::kHumanUca: return "HUMAN_UCA";
  }
  return "?";
}

EventKind event_kind_from_string(std::string_view text) {
  for (auto k : all_event_kinds()) {
    if (to_string(k) == text) return k;
  }
  throw FormatError("unknown event kind '" + std::string(text) + "'", std::string(text));
}

bool is_ccf(EventKind kind) noexcept { return kind == EventKind::kHwCcf || kind == EventKind::kSwCcf; }

bool is_hardware(EventKind kind) noexcept {
  return kind == EventKind::kHwIndep || kind == EventKind::kHwCcf;
}

EventKindSet all_event_kinds() {
  return {EventKind::kHwIndep, EventKind::kHwCcf, EventKind::kSwUca, EventKind::kSwCcf, EventKind::kHumanUca};
}

EventKindSet hardware_event_kinds() { return {EventKind::kHwIndep, EventKind::kHwCcf}; }

EventKindSet parse_event_filter(std::string_view text) {
  if (text == "all") return all_event_kinds();
  if (text == "hardware") return hardware_event_kinds();
  if (text == "software") return {EventKind::kSwUca, EventKind::kSwCcf, EventKind::kHumanUca};
  EventKindSet kinds;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    auto item = text.substr(start, end - start);
    if (!item.empty()) kinds.insert(event_kind_from_string(item));
    start = end + 1;
  }
  if (kinds.empty()) throw FormatError("empty event filter", std::string(text));
  return kinds;
}

}  // namespace resha
