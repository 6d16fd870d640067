#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace resha::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;   // invalid model, failed stage, oracle mismatch
inline constexpr int kExitIo = 2;        // unreadable input or unwritable output
inline constexpr int kExitResource = 3;  // solver row budget exceeded
inline constexpr int kExitUsage = 64;    // bad flags or arguments

inline constexpr const char* kOutputDirEnv = "RESHA_OUTPUT_DIR";

struct CcfOverrides {
  std::optional<bool> intra_division;
  std::optional<bool> cross_division;
  std::optional<bool> partial_interdivision;
  std::optional<std::string> software_categories;  // letters, e.g. "ac"
  std::vector<std::string> exclude_classes;
};

struct RunConfig {
  std::filesystem::path model_path;
  std::string top_event;
  std::optional<std::string> kind;  // failure-to-act | spurious-action
  std::optional<int> truncation = 4;
  std::string scope;
  std::string filter = "all";
  CcfOverrides ccf;
  std::optional<std::filesystem::path> output_dir;  // falls back to RESHA_OUTPUT_DIR, then ./resha-out
  bool deterministic = false;
  unsigned threads = 1;
  std::size_t max_rows = 20'000'000;
  bool scope_table = true;
  std::optional<int> scope_table_order;  // defaults to the truncation
};

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

int cmd_validate(const std::filesystem::path& model, Streams io);

/// Runs the full pipeline, writes the report and attachments, prints the
/// order histogram and the SPOF count.
int cmd_analyze(const RunConfig& config, Streams io);

/// Directory cmd_analyze writes into for this configuration. Non-deterministic
/// runs get a fresh run-stamped subdirectory.
std::filesystem::path resolve_output_dir(const RunConfig& config);

int cmd_ucas(const std::filesystem::path& model, const std::string& format,
             const std::optional<std::filesystem::path>& out, Streams io);

int cmd_ccf_catalog(const std::filesystem::path& model, const std::optional<std::filesystem::path>& out, Streams io);

struct CutsetsConfig {
  std::filesystem::path tree_path;
  std::optional<int> truncation;
  std::string gate;  // subtree root; empty: the tree's top
  std::string filter = "all";
  unsigned threads = 1;
  std::size_t max_rows = 20'000'000;
  std::optional<std::filesystem::path> out;  // CSV; stdout gets the summary either way
};

int cmd_cutsets(const CutsetsConfig& config, Streams io);

struct OracleConfig {
  int trials = 500;
  std::uint64_t seed = 1;
  int max_events = 12;
  int max_gates = 8;
  bool truncation_check = true;
};

int cmd_oracle_check(const OracleConfig& config, Streams io);

int cmd_fixture(const std::optional<std::filesystem::path>& out, Streams io);

/// Parses arguments and dispatches. Never throws.
int run(int argc, const char* const* argv, Streams io);

}  // namespace resha::cli
