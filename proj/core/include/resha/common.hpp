#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace resha {

/// The four ways a control action can be unsafe. Letters a-d index them.
enum class UcaCategory { kNotProvided, kProvidedUnneeded, kWrongTiming, kWrongDuration };

inline constexpr std::array<UcaCategory, 4> kAllUcaCategories{
    UcaCategory::kNotProvided, UcaCategory::kProvidedUnneeded, UcaCategory::kWrongTiming,
    UcaCategory::kWrongDuration};

char category_letter(UcaCategory c) noexcept;
UcaCategory category_from_letter(char letter);
std::string category_name(UcaCategory c);
inline std::size_t category_index(UcaCategory c) noexcept { return static_cast<std::size_t>(c); }

enum class TopEventKind { kFailureToAct, kSpuriousAction };

std::string to_string(TopEventKind kind);
TopEventKind top_event_kind_from_string(std::string_view text);

enum class GateKind { kAnd, kOr, kVote };

std::string to_string(GateKind kind);
GateKind gate_kind_from_string(std::string_view text);

enum class EventKind { kHwIndep, kHwCcf, kSwUca, kSwCcf, kHumanUca };

using EventKindSet = std::set<EventKind>;

std::string to_string(EventKind kind);
EventKind event_kind_from_string(std::string_view text);
bool is_ccf(EventKind kind) noexcept;
bool is_hardware(EventKind kind) noexcept;

EventKindSet all_event_kinds();
EventKindSet hardware_event_kinds();

/// Parses a filter name: "all", "hardware", "software" (software + human), or a
/// comma-separated list of kind names such as "HW_INDEP,HW_CCF".
EventKindSet parse_event_filter(std::string_view text);

}  // namespace resha
