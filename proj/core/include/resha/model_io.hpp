#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "resha/system_model.hpp"

namespace resha {

inline constexpr int kModelFormatVersion = 1;

/// Parses and validates a model document. Throws ModelError carrying every
/// syntax, schema and consistency problem found.
SystemModel parse_system_model(std::string_view json_text);

/// Reads a model file. Throws IoError if unreadable, ModelError if invalid.
SystemModel load_system_model(const std::filesystem::path& path);

/// Canonical JSON form: sorted keys, arrays sorted by ID, two-space indent.
std::string serialize_system_model(const SystemModel& model);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace resha
