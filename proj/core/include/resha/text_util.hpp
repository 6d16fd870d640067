#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace resha {

std::string join(const std::vector<std::string>& parts, std::string_view sep);

/// Quotes a CSV field when it contains a comma, quote or newline.
std::string csv_field(std::string_view text);

/// Escapes pipes so text can sit inside a Markdown table cell.
std::string markdown_escape(std::string_view text);

std::uint64_t fnv1a64(std::string_view data) noexcept;
std::string hex64(std::uint64_t value);

}  // namespace resha
