#pragma once

#include <optional>
#include <string>
#include <vector>

#include "resha/ccf.hpp"
#include "resha/cutset.hpp"
#include "resha/fault_tree.hpp"
#include "resha/redundancy.hpp"
#include "resha/report.hpp"
#include "resha/stpa.hpp"
#include "resha/system_model.hpp"

namespace resha {

struct AnalysisConfig {
  std::string top_event;                   // empty: the model's only (or first) top event
  std::optional<TopEventKind> kind;        // defaults to the top event's kind
  std::optional<int> truncation = 4;       // nullopt: untruncated
  std::string scope;                       // gate ID or scope label; empty: whole tree
  std::string filter = "all";
  std::optional<CcfPolicy> policy;         // replaces the model's policy
  bool scope_table = true;                 // solve every declared scope for the summary table
  std::optional<int> scope_table_order;    // defaults to the truncation
  std::size_t scope_table_max_rows = 500'000;  // per-scope budget; exceeding it marks the column
  unsigned threads = 1;
  std::size_t max_rows = SolveOptions{}.max_rows;
};

struct ScopeResult {
  std::string label;
  std::string gate;
  std::string filter;
  bool top_unreachable = false;
  std::optional<OrderHistogram> histogram;
  std::string error;  // set when the solver ran out of budget
};

struct AnalysisResult {
  AnalysisConfig config;
  std::string top_event;
  TopEventKind kind = TopEventKind::kFailureToAct;
  std::string analyzed_gate;
  EventKindSet kept_kinds;
  ControlStructure control_structure;
  std::vector<UcaRecord> ucas;
  UcaCounts uca_counts;
  std::vector<UcaRecord> selected;
  std::size_t ucas_outside_tree = 0;
  std::vector<RedundancyGroup> groups;
  CcfPolicy policy;
  std::vector<CcfEvent> catalog;
  std::vector<CcfEvent> injected;
  std::vector<std::string> warnings;
  FaultTree full_tree;
  FaultTree analyzed_tree;
  bool top_unreachable = false;
  CutSetCollection cutsets;
  OrderHistogram histogram;
  SpofReport spofs;
  std::vector<CausalFactorWorksheet> worksheets;
  std::vector<ScopeResult> scopes;
};

/// Failure of one pipeline stage; the message starts with the stage name.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& message)
      : Error(stage + ": " + message), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

/// Runs the seven analysis steps in order. ResourceError passes through
/// unchanged; other stage failures are wrapped in StageError.
AnalysisResult run_analysis(const SystemModel& model, const AnalysisConfig& config);

/// Full Markdown report. Byte-identical for identical inputs.
std::string render_analysis_report(const SystemModel& model, const AnalysisResult& result);

/// Table numbered like the SPOF listing: No. | Cut set | Description.
std::string render_spof_table(const AnalysisResult& result);

/// Scopes as columns, truncation orders as rows (cumulative counts).
std::string render_scope_table(const AnalysisResult& result);

}  // namespace resha
