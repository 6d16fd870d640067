#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <tuple>

#include "resha/error.hpp"
#include "resha/pipeline.hpp"
#include "resha/report.hpp"
#include "resha/rts_fixture.hpp"
#include "test_support.hpp"

namespace resha {
namespace {

const CausalFactorWorksheet& sheet(const std::vector<CausalFactorWorksheet>& ws, const std::string& id) {
  for (const auto& w : ws) {
    if (w.event_id == id) return w;
  }
  throw std::out_of_range(id);
}

bool has_factor(const std::vector<CausalPrompt>& prompts, const std::string& factor) {
  return std::ranges::any_of(prompts, [&](const CausalPrompt& p) { return p.factor == factor; });
}

class RpsWorksheets : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    model_ = new SystemModel(build_rts_reference_model());
    AnalysisConfig c;
    c.scope = "RPS";
    c.truncation = 1;
    c.scope_table = false;
    result_ = new AnalysisResult(run_analysis(*model_, c));
  }
  static void TearDownTestSuite() {
    delete result_;
    delete model_;
  }
  static SystemModel* model_;
  static AnalysisResult* result_;
};

SystemModel* RpsWorksheets::model_ = nullptr;
AnalysisResult* RpsWorksheets::result_ = nullptr;

TEST_F(RpsWorksheets, OneWorksheetPerEventInTheSelectedSets) {
  std::set<std::string> events;
  for (const auto& s : result_->spofs.sets) events.insert(s.events.begin(), s.events.end());
  ASSERT_EQ(result_->worksheets.size(), events.size());
  std::set<std::string> covered;
  for (const auto& w : result_->worksheets) EXPECT_TRUE(covered.insert(w.event_id).second) << w.event_id;
  EXPECT_EQ(covered, events);
}

TEST_F(RpsWorksheets, SoftwareCcfGetsBothPromptCategories) {
  const auto& w = sheet(result_->worksheets, "LC-BP-SF-CCF-TC");
  EXPECT_EQ(w.kind, EventKind::kSwCcf);
  EXPECT_EQ(w.order, 1u);
  EXPECT_EQ(w.description, "Logic cabinet bistable processor software CCF type C.");
  EXPECT_FALSE(w.category_1.empty());
  EXPECT_FALSE(w.category_2.empty());
  // the class- and category-specific template comes before the generic prompts
  EXPECT_EQ(w.category_1.front().text.rfind("Scenario template:", 0), 0u);
  EXPECT_TRUE(has_factor(w.category_2, "inadequate-feedback"));
  ASSERT_EQ(w.notes.size(), 1u);
  EXPECT_NE(w.notes[0].find("Shared by 8 redundant units"), std::string::npos);
  EXPECT_TRUE(w.scenario.empty());
}

TEST_F(RpsWorksheets, HardwareCcfGetsPhysicalPromptsAndHistoricalNote) {
  const auto& w = sheet(result_->worksheets, "RTB-UV-HD-CCF");
  EXPECT_EQ(w.kind, EventKind::kHwCcf);
  ASSERT_FALSE(w.category_1.empty());
  for (const auto& p : w.category_1) EXPECT_EQ(p.factor, "physical-failure");
  EXPECT_TRUE(w.category_2.empty());
  ASSERT_EQ(w.notes.size(), 2u);
  EXPECT_EQ(w.notes[0], GuidanceBank::builtin().historical_data_note());
}

TEST_F(RpsWorksheets, RenderingIsStable) {
  const std::string a = render_worksheets(result_->worksheets, GuidanceBank::builtin());
  const std::string b = render_worksheets(result_->worksheets, GuidanceBank::builtin());
  EXPECT_EQ(a, b);
  EXPECT_NE(a.find("### LC-BP-SF-CCF-TC"), std::string::npos);
  EXPECT_NE(a.find("| Scenario | Design guidance | Disposition |"), std::string::npos);
}

TEST(Worksheets, UcaEventsCarryTheirHazards) {
  const SystemModel model = testing::load_mini_model();
  AnalysisConfig c;
  c.truncation = 2;
  c.scope_table = false;
  const AnalysisResult r = run_analysis(model, c);
  const auto ws = generate_worksheets(r.cutsets.sets, r.ucas, r.analyzed_tree);
  const auto& w = sheet(ws, "OPERATOR-HU-UCA1a");
  EXPECT_EQ(w.kind, EventKind::kHumanUca);
  EXPECT_EQ(w.hazards, std::vector<std::string>{"H1"});
  EXPECT_FALSE(w.category_1.empty());
  // ordered by (lowest order, event ID)
  for (std::size_t i = 1; i < ws.size(); ++i) {
    EXPECT_LE(std::tie(ws[i - 1].order, ws[i - 1].event_id), std::tie(ws[i].order, ws[i].event_id));
  }
}

TEST(Worksheets, EmptyInputGivesNoWorksheets) {
  const FaultTree ft = testing::tree("OR(A)");
  EXPECT_TRUE(generate_worksheets({}, {}, ft).empty());
  EXPECT_EQ(render_worksheets({}, GuidanceBank::builtin()), "");
  EXPECT_THROW(generate_worksheets({CutSet{{"Q"}, false}}, {}, ft), TreeError);
}

TEST(GuidanceBank, BuiltinCoversEveryEventKind) {
  const GuidanceBank& bank = GuidanceBank::builtin();
  EXPECT_EQ(bank.version(), 1);
  EXPECT_FALSE(bank.historical_data_note().empty());
  for (EventKind k : all_event_kinds()) {
    BasicEvent e;
    e.id = "E";
    e.kind = k;
    if (k == EventKind::kSwUca || k == EventKind::kSwCcf || k == EventKind::kHumanUca) e.category = UcaCategory::kNotProvided;
    EXPECT_FALSE(bank.lookup(e).empty()) << to_string(k);
  }
}

TEST(GuidanceBank, ParseRejectsBadDocuments) {
  EXPECT_THROW(GuidanceBank::parse("not json"), FormatError);
  EXPECT_THROW(GuidanceBank::parse(R"({"guidance_bank_version": 2, "factors": {}, "entries": []})"), FormatError);
  EXPECT_THROW(GuidanceBank::parse(R"({"guidance_bank_version": 1, "factors": {},
      "entries": [{"match": {"kind": "SW_UCA"}, "category_1": [{"factor": "nope", "text": "x"}]}]})"),
               FormatError);
  const GuidanceBank b = GuidanceBank::parse(R"({"guidance_bank_version": 1, "factors": {"f": "F"},
      "entries": [{"match": {"kind": "SW_UCA"}, "category_1": [{"factor": "f", "text": "general"}]},
                  {"match": {"kind": "SW_UCA", "class": "SP", "category": "a"},
                   "category_1": [{"factor": "f", "text": "specific"}]}]})");
  BasicEvent e{"SP-SF-UCA1a", EventKind::kSwUca, {}, UcaCategory::kNotProvided, "UCA1a", "SP", ""};
  const auto hits = b.lookup(e);
  ASSERT_EQ(hits.size(), 2u);
  EXPECT_EQ(hits[0]->category_1[0].text, "specific");
  EXPECT_EQ(b.factor_label("f"), "F");
}

}  // namespace
}  // namespace resha
