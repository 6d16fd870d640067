#include <gtest/gtest.h>

#include "resha/error.hpp"
#include "resha/pipeline.hpp"
#include "test_support.hpp"

namespace resha {
namespace {

AnalysisConfig config(std::optional<int> truncation = std::nullopt) {
  AnalysisConfig c;
  c.truncation = truncation;
  return c;
}

TEST(Pipeline, RunsAllStepsOnTheMiniModel) {
  const SystemModel model = testing::load_mini_model();
  const AnalysisResult r = run_analysis(model, config());
  EXPECT_EQ(r.top_event, "TRIP");
  EXPECT_EQ(r.kind, TopEventKind::kFailureToAct);
  EXPECT_EQ(r.analyzed_gate, "TOP");
  EXPECT_EQ(r.uca_counts.potential, 20u);
  EXPECT_EQ(r.selected.size(), 10u);
  EXPECT_EQ(r.catalog.size(), 15u);
  EXPECT_EQ(r.injected.size(), 10u);
  EXPECT_EQ(r.warnings.size(), 1u);
  EXPECT_EQ(r.cutsets.sets.size(), 346u);
  EXPECT_EQ(r.histogram.exact.at(2), 8u);
  EXPECT_EQ(r.histogram.exact.at(3), 32u);
  EXPECT_EQ(r.histogram.exact.at(4), 144u);
  EXPECT_EQ(r.histogram.exact.at(5), 162u);
  EXPECT_TRUE(r.spofs.fallback);
  EXPECT_EQ(r.spofs.order, 2u);
  EXPECT_EQ(r.full_tree, r.analyzed_tree);
  ASSERT_EQ(r.scopes.size(), 3u);
}

TEST(Pipeline, MatchesTheOracleOnTheMiniModel) {
  const SystemModel model = testing::load_mini_model();
  const AnalysisResult r = run_analysis(model, config());
  // the whole tree is too wide for a truth table; check one division
  const FaultTree div = extract_subtree(r.full_tree, "DIV-A");
  ASSERT_EQ(div.events().size(), 14u);
  EXPECT_EQ(testing::as_family(solve_minimal_cut_sets(div)), testing::as_family(brute_force_cut_sets(div)));
}

TEST(Pipeline, ScopeLabelSelectsGateAndFilter) {
  const SystemModel model = testing::load_mini_model();
  AnalysisConfig c = config();
  c.scope = "Automatic only";
  const AnalysisResult r = run_analysis(model, c);
  EXPECT_EQ(r.analyzed_gate, "AUTO");
  std::set<std::string> first;
  for (const auto& s : r.spofs.sets) first.insert(s.events.front());
  EXPECT_EQ(first, (std::set<std::string>{"BRK-HD-CCF", "PROC-HD-CCF", "PROC-SF-CCF-TA", "PROC-SF-CCF-TC"}));
  for (const auto& s : r.spofs.sets) EXPECT_TRUE(s.contains_ccf);

  c.scope = "Hardware only";
  const AnalysisResult hw = run_analysis(model, c);
  EXPECT_TRUE(hw.top_unreachable);
  EXPECT_TRUE(hw.cutsets.sets.empty());
  EXPECT_EQ(hw.kept_kinds, hardware_event_kinds());
  const std::string report = render_analysis_report(model, hw);
  EXPECT_NE(report.find("Note: software failures excluded by filter."), std::string::npos);
  EXPECT_NE(report.find("Note: the filter removed every path to the top event."), std::string::npos);
}

TEST(Pipeline, SpuriousActionSelectsCategoryB) {
  const SystemModel model = testing::load_mini_model();
  AnalysisConfig c = config(3);
  c.kind = TopEventKind::kSpuriousAction;
  c.scope_table = false;
  const AnalysisResult r = run_analysis(model, c);
  for (const auto& u : r.selected) EXPECT_EQ(u.category, UcaCategory::kProvidedUnneeded);
  EXPECT_NE(r.full_tree.find_event("PROC-SF-CCF-TB"), nullptr);
  EXPECT_EQ(r.full_tree.find_event("PROC-SF-CCF-TA"), nullptr);
}

TEST(Pipeline, PolicyOverrideReplacesTheModelPolicy) {
  const SystemModel model = testing::load_mini_model();
  AnalysisConfig c = config();
  c.scope_table = false;
  CcfPolicy p = model.ccf_policy();
  p.include_cross_division = false;
  c.policy = p;
  const AnalysisResult r = run_analysis(model, c);
  for (const auto& e : r.injected) EXPECT_EQ(e.scope, CcfScope::kIntraDivision) << e.name;
  EXPECT_EQ(r.injected.size(), 6u);
  EXPECT_EQ(r.catalog.size(), 15u);
  p.include_intra_division = false;
  c.policy = p;
  EXPECT_THROW(run_analysis(model, c), StageError);
}

TEST(Pipeline, StageFailuresNameTheStage) {
  const SystemModel model = testing::load_mini_model();
  AnalysisConfig c = config(2);
  c.scope = "NOPE";
  try {
    run_analysis(model, c);
    FAIL() << "expected StageError";
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "scope");
    EXPECT_EQ(std::string(e.what()).rfind("scope: ", 0), 0u);
  }
  c.scope.clear();
  c.top_event = "NOPE";
  EXPECT_THROW(run_analysis(model, c), StageError);
  c.top_event.clear();
  c.filter = "bogus";
  EXPECT_THROW(run_analysis(model, c), StageError);
}

TEST(Pipeline, ResourceErrorPassesThrough) {
  const SystemModel model = testing::load_mini_model();
  AnalysisConfig c = config();
  c.max_rows = 5;
  c.scope_table = false;
  EXPECT_THROW(run_analysis(model, c), ResourceError);
}

TEST(Report, IsDeterministicAndComplete) {
  const SystemModel model = testing::load_mini_model();
  const std::string a = render_analysis_report(model, run_analysis(model, config(4)));
  const std::string b = render_analysis_report(model, run_analysis(model, config(4)));
  EXPECT_EQ(a, b);
  for (const std::string heading :
       {"## 1. Losses and hazards", "## 2. Redundancy", "## 3. Layered control structure", "## 4. Software",
        "## 5. Common-cause failures", "## 6. Cut sets", "## 7. Causal factors"}) {
    EXPECT_NE(a.find(heading), std::string::npos) << heading;
  }
  EXPECT_NE(a.find("No single points of failure; lowest populated order is 2."), std::string::npos);
}

TEST(Report, ScopeTableListsEveryDeclaredScope) {
  const SystemModel model = testing::load_mini_model();
  const AnalysisResult r = run_analysis(model, config());
  const std::string table = render_scope_table(r);
  for (const auto& s : r.scopes) EXPECT_NE(table.find(s.label), std::string::npos) << s.label;
  // untruncated: the whole-system column ends at the total
  EXPECT_NE(table.find("346"), std::string::npos);
}

TEST(Report, ScopeTableBudgetMarksColumnsWithoutFailingTheRun) {
  const SystemModel model = testing::load_mini_model();
  AnalysisConfig c = config();
  c.scope_table_max_rows = 5;
  const AnalysisResult r = run_analysis(model, c);
  EXPECT_EQ(r.cutsets.sets.size(), 346u);
  ASSERT_EQ(r.scopes.size(), 3u);
  EXPECT_FALSE(r.scopes[0].error.empty());
  EXPECT_FALSE(r.scopes[0].histogram.has_value());
  EXPECT_NE(render_scope_table(r).find("budget exceeded"), std::string::npos);
}

}  // namespace
}  // namespace resha
