#include <gtest/gtest.h>

#include <set>

#include "resha/ccf.hpp"
#include "resha/cutset.hpp"
#include "resha/rts_fixture.hpp"
#include "resha/stpa.hpp"
#include "resha/tree_builder.hpp"
#include "test_support.hpp"

namespace resha {
namespace {

const std::set<UcaCategory> kFailToAct = categories_for(TopEventKind::kFailureToAct);

std::vector<CcfEvent> of_class(const std::vector<CcfEvent>& events, const std::string& cls) {
  std::vector<CcfEvent> out;
  for (const auto& e : events) {
    if (e.equipment_class == cls) out.push_back(e);
  }
  return out;
}

std::set<std::string> names(const std::vector<CcfEvent>& events) {
  std::set<std::string> out;
  for (const auto& e : events) out.insert(e.name);
  return out;
}

FaultTree integrated(const SystemModel& model, const std::string& top) {
  const auto ucas = enumerate_ucas(build_layered_control_structure(model), model.hazards());
  return integrate_ucas(build_hardware_fault_tree(model, top),
                        select_ucas_for_top_event(ucas, TopEventKind::kFailureToAct), model);
}

class RtsCcf : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    model_ = new SystemModel(build_rts_reference_model());
    groups_ = new std::vector<RedundancyGroup>(derive_redundancy_groups(*model_));
    tree_ = new FaultTree(integrated(*model_, "RTS"));
  }
  static void TearDownTestSuite() {
    delete tree_;
    delete groups_;
    delete model_;
  }
  static SystemModel* model_;
  static std::vector<RedundancyGroup>* groups_;
  static FaultTree* tree_;
};

SystemModel* RtsCcf::model_ = nullptr;
std::vector<RedundancyGroup>* RtsCcf::groups_ = nullptr;
FaultTree* RtsCcf::tree_ = nullptr;

TEST_F(RtsCcf, SelectiveProcessorsGetFourIntraAndOneCrossEvent) {
  const auto sp = of_class(enumerate_ccf_catalog(*model_, *groups_, model_->ccf_policy()), "SP");
  std::set<std::string> intra_hw, cross_hw;
  for (const auto& e : sp) {
    if (e.kind != EventKind::kHwCcf) continue;
    if (e.scope == CcfScope::kIntraDivision) intra_hw.insert(e.name);
    if (e.scope == CcfScope::kCrossDivision) cross_hw.insert(e.name);
  }
  EXPECT_EQ(intra_hw, (std::set<std::string>{"A-SP-HD-CCF", "B-SP-HD-CCF", "C-SP-HD-CCF", "D-SP-HD-CCF"}));
  EXPECT_EQ(cross_hw, std::set<std::string>{"SP-HD-CCF"});
  for (const auto& e : sp) {
    if (e.scope == CcfScope::kCrossDivision) EXPECT_EQ(e.members.size(), 8u) << e.name;
    if (e.scope == CcfScope::kIntraDivision) EXPECT_EQ(e.members.size(), 2u) << e.name;
  }
}

TEST_F(RtsCcf, CatalogListsPartialCombinationsAndSoftwareTypes) {
  const auto sp = of_class(enumerate_ccf_catalog(*model_, *groups_, model_->ccf_policy()), "SP");
  std::size_t partial_hw = 0;
  for (const auto& e : sp) {
    if (e.scope == CcfScope::kPartialInterdivision && e.kind == EventKind::kHwCcf) {
      ++partial_hw;
      EXPECT_GE(e.divisions.size(), 2u);
      EXPECT_LE(e.divisions.size(), 3u);
    }
  }
  EXPECT_EQ(partial_hw, 10u);  // C(4,2) + C(4,3)
  const auto sp_names = names(sp);
  EXPECT_TRUE(sp_names.contains("SP-SF-CCF-TA"));
  EXPECT_TRUE(sp_names.contains("SP-SF-CCF-TB"));
  EXPECT_TRUE(sp_names.contains("SP-SF-CCF-TC"));
  EXPECT_FALSE(sp_names.contains("SP-SF-CCF-TD"));  // no continuous SP action
}

TEST_F(RtsCcf, InjectedEventsComeFromTheCatalog) {
  const auto catalog = names(enumerate_ccf_catalog(*model_, *groups_, model_->ccf_policy()));
  const CcfInjection inj = inject_ccfs(*tree_, *model_, *groups_, model_->ccf_policy(), kFailToAct);
  ASSERT_FALSE(inj.injected.empty());
  for (const auto& e : inj.injected) {
    EXPECT_TRUE(catalog.contains(e.name)) << e.name;
    EXPECT_TRUE(policy_admits(model_->ccf_policy(), kFailToAct, e)) << e.name;
    EXPECT_NE(inj.tree.find_event(e.name), nullptr) << e.name;
    EXPECT_NE(e.scope, CcfScope::kPartialInterdivision);
    if (e.kind == EventKind::kSwCcf) EXPECT_TRUE(kFailToAct.contains(*e.category)) << e.name;
  }
  inj.tree.validate();
}

TEST_F(RtsCcf, SharedEventSitsUnderEveryMember) {
  const CcfInjection inj = inject_ccfs(*tree_, *model_, *groups_, model_->ccf_policy(), kFailToAct);
  for (const auto& e : inj.injected) {
    if (e.name != "SP-HD-CCF") continue;
    for (const auto& m : e.members) {
      const Gate* hw = inj.tree.find_gate(hardware_gate_name(m));
      if (!hw) continue;
      EXPECT_NE(std::find(hw->children.begin(), hw->children.end(), e.name), hw->children.end())
          << format_node_id(m);
    }
  }
  EXPECT_NE(inj.tree.find_event("SP-HD-CCF"), nullptr);
}

TEST_F(RtsCcf, EveryCrossDivisionEventFailsTheRpsAlone) {
  const CcfInjection inj = inject_ccfs(*tree_, *model_, *groups_, model_->ccf_policy(), kFailToAct);
  const FaultTree rps = extract_subtree(inj.tree, "RPS");
  std::size_t checked = 0;
  for (const auto& e : inj.injected) {
    if (e.scope != CcfScope::kCrossDivision || !rps.find_event(e.name)) continue;
    ++checked;
    EXPECT_TRUE(testing::top_holds(rps, {e.name})) << e.name;
  }
  EXPECT_GE(checked, 5u);
}

TEST_F(RtsCcf, PolicyScopesAreMonotone) {
  auto injected = [&](bool intra, bool cross, bool partial) {
    CcfPolicy p = model_->ccf_policy();
    p.include_intra_division = intra;
    p.include_cross_division = cross;
    p.include_partial_interdivision = partial;
    return names(inject_ccfs(*tree_, *model_, *groups_, p, kFailToAct).injected);
  };
  const auto none = injected(false, false, false);
  const auto intra = injected(true, false, false);
  const auto both = injected(true, true, false);
  const auto all = injected(true, true, true);
  EXPECT_TRUE(none.empty());
  EXPECT_TRUE(std::includes(both.begin(), both.end(), intra.begin(), intra.end()));
  EXPECT_TRUE(std::includes(all.begin(), all.end(), both.begin(), both.end()));
  EXPECT_LT(intra.size(), both.size());
  EXPECT_LT(both.size(), all.size());
}

TEST_F(RtsCcf, ExcludedClassesGetNoEvents) {
  CcfPolicy p = model_->ccf_policy();
  p.excluded_classes.insert("SP");
  const CcfInjection inj = inject_ccfs(*tree_, *model_, *groups_, p, kFailToAct);
  EXPECT_TRUE(of_class(inj.injected, "SP").empty());
  EXPECT_FALSE(inj.injected.empty());
}

TEST(Ccf, SingletonClassHasNoGroupOrEvents) {
  const SystemModel model = testing::load_mini_model();
  const auto groups = derive_redundancy_groups(model);
  for (const auto& g : groups) EXPECT_NE(g.equipment_class, "OPERATOR");
  EXPECT_TRUE(of_class(enumerate_ccf_catalog(model, groups, model.ccf_policy()), "OPERATOR").empty());
}

TEST(Ccf, MiniModelInjection) {
  const SystemModel model = testing::load_mini_model();
  const auto groups = derive_redundancy_groups(model);
  const auto catalog = enumerate_ccf_catalog(model, groups, model.ccf_policy());
  EXPECT_EQ(catalog.size(), 15u);
  const CcfInjection inj = inject_ccfs(integrated(model, "TRIP"), model, groups, model.ccf_policy(), kFailToAct);
  EXPECT_EQ(names(inj.injected),
            (std::set<std::string>{"A-PROC-HD-CCF", "A-PROC-SF-CCF-TA", "A-PROC-SF-CCF-TC", "B-PROC-HD-CCF",
                                   "B-PROC-SF-CCF-TA", "B-PROC-SF-CCF-TC", "BRK-HD-CCF", "PROC-HD-CCF",
                                   "PROC-SF-CCF-TA", "PROC-SF-CCF-TC"}));
  // analog breakers cannot carry software CCFs
  ASSERT_EQ(inj.warnings.size(), 1u);
  EXPECT_NE(inj.warnings.front().find("BRK"), std::string::npos);
  EXPECT_EQ(inj.tree.find_event("BRK-HD-CCF")->kind, EventKind::kHwCcf);
  EXPECT_EQ(inj.tree.find_event("PROC-SF-CCF-TA")->category, UcaCategory::kNotProvided);
}

TEST(Ccf, ExplicitSoftwareCategoriesOverrideTheSelection) {
  const SystemModel model = testing::load_mini_model();
  const auto groups = derive_redundancy_groups(model);
  CcfPolicy p = model.ccf_policy();
  p.software_categories = std::set<UcaCategory>{UcaCategory::kProvidedUnneeded};
  const auto inj = inject_ccfs(integrated(model, "TRIP"), model, groups, p, kFailToAct);
  const auto n = names(inj.injected);
  EXPECT_TRUE(n.contains("PROC-SF-CCF-TB"));
  EXPECT_FALSE(n.contains("PROC-SF-CCF-TA"));
}

TEST(Ccf, CatalogCsvHasOneRowPerEvent) {
  const SystemModel model = testing::load_mini_model();
  const auto catalog = enumerate_ccf_catalog(model, derive_redundancy_groups(model), model.ccf_policy());
  const std::string csv = ccf_catalog_to_csv(catalog);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "name,class,scope,kind,category,members");
  EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')), catalog.size() + 1);
}

}  // namespace
}  // namespace resha
