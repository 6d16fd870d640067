#include <gtest/gtest.h>

#include <algorithm>

#include "resha/error.hpp"
#include "resha/fault_tree.hpp"
#include "resha/rts_fixture.hpp"
#include "resha/stpa.hpp"
#include "resha/tree_builder.hpp"
#include "test_support.hpp"

namespace resha {
namespace {

using testing::tree;

bool has_child(const FaultTree& ft, const std::string& gate, const std::string& child) {
  const Gate* g = ft.find_gate(gate);
  return g && std::find(g->children.begin(), g->children.end(), child) != g->children.end();
}

std::vector<UcaRecord> selected_ucas(const SystemModel& model) {
  const auto ucas = enumerate_ucas(build_layered_control_structure(model), model.hazards());
  return select_ucas_for_top_event(ucas, TopEventKind::kFailureToAct);
}

ModelParts mini_parts() { return testing::load_mini_model().parts(); }

GateDeclaration& declaration(ModelParts& p, const std::string& id) {
  for (auto& d : p.gates.declarations) {
    if (d.id == id) return d;
  }
  throw std::out_of_range(id);
}

// ---- tree container ----

TEST(FaultTree, RejectsDuplicateIdsAndChildren) {
  FaultTree ft("TOP");
  ft.add_gate({"TOP", GateKind::kOr, 0, {}, ""});
  ft.add_event({"A", EventKind::kHwIndep, {}, std::nullopt, "", "", ""});
  EXPECT_THROW(ft.add_gate({"A", GateKind::kOr, 0, {}, ""}), TreeError);
  EXPECT_THROW(ft.add_event({"TOP", EventKind::kHwIndep, {}, std::nullopt, "", "", ""}), TreeError);
  ft.add_child("TOP", "A");
  EXPECT_THROW(ft.add_child("TOP", "A"), TreeError);
  EXPECT_THROW(ft.add_child("NOPE", "A"), TreeError);
  EXPECT_NO_THROW(ft.validate());
}

TEST(FaultTree, ValidateFindsStructuralProblems) {
  {
    FaultTree ft("TOP");
    ft.add_gate({"TOP", GateKind::kOr, 0, {"MISSING"}, ""});
    EXPECT_THROW(ft.validate(), TreeError);
  }
  {
    FaultTree ft("TOP");
    ft.add_gate({"TOP", GateKind::kOr, 0, {"G"}, ""});
    ft.add_gate({"G", GateKind::kAnd, 0, {"TOP"}, ""});
    EXPECT_THROW(ft.validate(), TreeError);
    EXPECT_THROW(ft.topological_gates(), TreeError);
  }
  {
    FaultTree ft = tree("OR(A, B)");
    ft.add_gate({"V", GateKind::kVote, 3, {"A", "B"}, ""});
    ft.add_child("G1", "V");
    EXPECT_THROW(ft.validate(), TreeError);
  }
  {
    FaultTree ft = tree("OR(A, B)");
    ft.add_gate({"ORPHAN", GateKind::kAnd, 0, {"A"}, ""});
    EXPECT_THROW(ft.validate(), TreeError);
  }
}

TEST(FaultTree, TopologicalOrderPutsChildrenFirst) {
  const FaultTree ft = tree("TOP=OR(A, X=AND(B, Y=OR(C, D)), Y)");
  const auto order = ft.topological_gates();
  ASSERT_EQ(order.size(), 3u);
  auto pos = [&](const std::string& g) { return std::find(order.begin(), order.end(), g) - order.begin(); };
  EXPECT_LT(pos("Y"), pos("X"));
  EXPECT_LT(pos("X"), pos("TOP"));
  EXPECT_EQ(order.back(), "TOP");
}

// ---- builder ----

TEST(Builder, ExpandsReplicatedDeclarations) {
  const SystemModel model = testing::load_mini_model();
  const FaultTree ft = build_hardware_fault_tree(model, "TRIP");
  ft.validate();
  EXPECT_EQ(ft.top(), "TOP");
  EXPECT_EQ(ft.find_gate("AUTO")->children, (std::vector<std::string>{"DIV-A", "DIV-B"}));
  EXPECT_EQ(ft.find_gate("DIV-A")->children, (std::vector<std::string>{"FAIL-A00.00.01", "PROCS-A"}));
  EXPECT_EQ(ft.find_gate("PROCS-B")->children, (std::vector<std::string>{"FAIL-B01.01.00", "FAIL-B01.02.00"}));
  EXPECT_EQ(ft.find_gate("PROCS-B")->kind, GateKind::kAnd);
}

TEST(Builder, FailureNodesFollowTheNamingPattern) {
  const SystemModel model = testing::load_mini_model();
  const FaultTree ft = build_hardware_fault_tree(model, "TRIP");
  const NodeId p1 = parse_node_id("A01.01.00");
  EXPECT_EQ(failure_gate_name(p1), "FAIL-A01.01.00");
  EXPECT_TRUE(has_child(ft, "FAIL-A01.01.00", "HW-A01.01.00"));
  EXPECT_TRUE(has_child(ft, "FAIL-A01.01.00", "SW-A01.01.00"));
  EXPECT_TRUE(has_child(ft, "HW-A01.01.00", "PROC-HD-A01.01.00"));
  EXPECT_TRUE(ft.find_gate("SW-A01.01.00")->children.empty());
  // analog breakers have no software part; the operator has only a human part
  EXPECT_EQ(ft.find_gate("FAIL-A00.00.01")->children, std::vector<std::string>{"HW-A00.00.01"});
  EXPECT_EQ(ft.find_gate("FAIL-OP00.00.00")->children, std::vector<std::string>{"HU-OP00.00.00"});
  EXPECT_EQ(ft.find_event("BRK-HD-A00.00.01")->kind, EventKind::kHwIndep);
  EXPECT_EQ(ft.find_event("BRK-HD-A00.00.01")->subjects, std::vector<NodeId>{parse_node_id("A00.00.01")});
}

TEST(Builder, ExpandsTheCoincidenceVote) {
  const SystemModel model = build_rts_reference_model();
  const FaultTree ft = build_hardware_fault_tree(model, "RTS");
  ft.validate();
  for (const std::string div : {"A", "B", "C", "D"}) {
    const Gate* g = ft.find_gate("LCL-" + div);
    ASSERT_NE(g, nullptr) << div;
    EXPECT_EQ(g->kind, GateKind::kVote);
    EXPECT_EQ(g->k, 3);
    EXPECT_EQ(g->children, (std::vector<std::string>{"SIG-A", "SIG-B", "SIG-C", "SIG-D"}));
  }
}

TEST(Builder, RejectsBadDeclarations) {
  {
    ModelParts p = mini_parts();
    declaration(p, "AUTO").equipment_class = "NOPE";
    EXPECT_THROW(build_hardware_fault_tree(SystemModel::create(p), "TRIP"), TreeError);
  }
  {
    ModelParts p = mini_parts();
    declaration(p, "TOP").inputs.push_back("GHOST");
    EXPECT_THROW(build_hardware_fault_tree(SystemModel::create(p), "TRIP"), TreeError);
  }
  {
    ModelParts p = mini_parts();
    declaration(p, "PROCS-{div}").inputs.push_back("AUTO");
    EXPECT_THROW(build_hardware_fault_tree(SystemModel::create(p), "TRIP"), TreeError);
  }
  {
    ModelParts p = mini_parts();
    declaration(p, "TOP").inputs.push_back("X-{n}");
    EXPECT_THROW(build_hardware_fault_tree(SystemModel::create(p), "TRIP"), TreeError);
  }
  {
    ModelParts p = mini_parts();
    auto& d = declaration(p, "PROCS-{div}");
    d.kind = GateKind::kVote;
    d.k = 3;
    EXPECT_THROW(build_hardware_fault_tree(SystemModel::create(p), "TRIP"), TreeError);
  }
  EXPECT_THROW(build_hardware_fault_tree(testing::load_mini_model(), "NOPE"), TreeError);
}

// ---- UCA integration ----

TEST(Integration, AddsSelectiveProcessorUcasUnderItsSoftwareGate) {
  const SystemModel model = build_rts_reference_model();
  const ControlStructure cs = build_layered_control_structure(model);
  const ControlAction* ca18 = cs.find_action("CA18");
  ASSERT_NE(ca18, nullptr);
  const FaultTree hw = build_hardware_fault_tree(model, "RTS");
  const FaultTree ft = integrate_ucas(hw, selected_ucas(model), model);

  const Node& dom = model.node(ca18->source);
  ASSERT_TRUE(dom.equipment_class);
  const std::string sw = software_gate_name(dom.id);
  for (const std::string id : {"UCA18a", "UCA18c"}) {
    const std::string name = uca_event_name(*dom.equipment_class, Technology::kDigital, id);
    EXPECT_EQ(name, *dom.equipment_class + "-SF-" + id);
    ASSERT_NE(ft.find_event(name), nullptr) << name;
    EXPECT_EQ(ft.find_event(name)->kind, EventKind::kSwUca);
    EXPECT_EQ(ft.find_event(name)->uca_id, id);
    EXPECT_TRUE(has_child(ft, sw, name)) << name;
  }
  EXPECT_EQ(ft.find_event(uca_event_name(*dom.equipment_class, Technology::kDigital, "UCA18b")), nullptr);
}

TEST(Integration, EmptySelectionIsTheIdentity) {
  const SystemModel model = testing::load_mini_model();
  const FaultTree hw = build_hardware_fault_tree(model, "TRIP");
  EXPECT_EQ(integrate_ucas(hw, {}, model), hw);
}

TEST(Integration, HumanUcasGoUnderTheHumanGate) {
  const SystemModel model = testing::load_mini_model();
  const FaultTree ft = integrate_ucas(build_hardware_fault_tree(model, "TRIP"), selected_ucas(model), model);
  EXPECT_EQ(uca_event_name("OPERATOR", Technology::kHuman, "UCA1a"), "OPERATOR-HU-UCA1a");
  EXPECT_TRUE(has_child(ft, "HU-OP00.00.00", "OPERATOR-HU-UCA1a"));
  EXPECT_TRUE(has_child(ft, "HU-OP00.00.00", "OPERATOR-HU-UCA1c"));
  EXPECT_EQ(ft.find_event("OPERATOR-HU-UCA1a")->kind, EventKind::kHumanUca);
  EXPECT_EQ(ft.find_event("OPERATOR-HU-UCA1a")->category, UcaCategory::kNotProvided);
  ft.validate();
}

TEST(Integration, NamesTheUcaWhoseSourceIsMissing) {
  const SystemModel model = testing::load_mini_model();
  const FaultTree hw = build_hardware_fault_tree(model, "TRIP");
  UcaRecord stray;
  stray.id = "UCA77a";
  stray.ca_id = "CA77";
  stray.source = parse_node_id("X00.00.00");
  stray.applicable = true;
  try {
    integrate_ucas(hw, {stray}, model);
    FAIL() << "expected IntegrationError";
  } catch (const IntegrationError& e) {
    EXPECT_EQ(e.uca_id(), "UCA77a");
  }
}

// ---- subtree, filter, exchange ----

TEST(Subtree, KeepsOnlyReachableNodes) {
  const FaultTree ft = tree("TOP=OR(A, S=AND(B, T=OR(C, A)))");
  const FaultTree sub = extract_subtree(ft, "S");
  EXPECT_EQ(sub.top(), "S");
  EXPECT_EQ(sub.gates().size(), 2u);
  EXPECT_EQ(sub.events().size(), 3u);
  EXPECT_EQ(*sub.find_gate("T"), *ft.find_gate("T"));
  EXPECT_THROW(extract_subtree(ft, "NOPE"), TreeError);
}

TEST(Filter, DropsEventsOutsideTheKeptKinds) {
  FaultTree ft = tree("TOP=OR(A, X=AND(B, S), Y=OR(C, D))");
  // S becomes a software event
  FaultTree sw("TOP");
  for (auto [id, g] : ft.gates()) sw.add_gate(g);
  for (auto [id, e] : ft.events()) {
    if (id == "S") e.kind = EventKind::kSwUca;
    sw.add_event(e);
  }
  const FilteredTree f = filter_events(sw, hardware_event_kinds());
  EXPECT_FALSE(f.top_unreachable);
  EXPECT_EQ(f.tree.find_event("S"), nullptr);
  EXPECT_EQ(*f.tree.find_gate("Y"), *sw.find_gate("Y"));
  EXPECT_EQ(testing::minimal_true_points(f.tree), (testing::Family{{"A"}, {"C"}, {"D"}}));
}

TEST(Filter, ReportsAnUnreachableTop) {
  const SystemModel model = testing::load_mini_model();
  const FaultTree ft = integrate_ucas(build_hardware_fault_tree(model, "TRIP"), selected_ucas(model), model);
  const FilteredTree f = filter_events(ft, hardware_event_kinds());
  EXPECT_TRUE(f.top_unreachable);
  EXPECT_TRUE(f.tree.events().empty());
  const FilteredTree all = filter_events(ft, all_event_kinds());
  EXPECT_FALSE(all.top_unreachable);
  EXPECT_EQ(all.tree, ft);
}

TEST(Exchange, JsonRoundTripsBuiltTrees) {
  const SystemModel model = build_rts_reference_model();
  const FaultTree ft = integrate_ucas(build_hardware_fault_tree(model, "RTS"), selected_ucas(model), model);
  const std::string text = fault_tree_to_json(ft);
  const FaultTree back = fault_tree_from_json(text);
  EXPECT_EQ(back, ft);
  EXPECT_EQ(fault_tree_to_json(back), text);
}

TEST(Exchange, RejectsBrokenJson) {
  EXPECT_THROW(fault_tree_from_json("{\"top\": "), FormatError);
  EXPECT_THROW(fault_tree_from_json(R"({"top": "T", "gates": [{"id": "T", "type": "maybe", "inputs": []}],
                                        "events": []})"),
               Error);
  EXPECT_THROW(fault_tree_from_json(R"({"top": "T", "gates": [{"id": "T", "type": "or", "inputs": ["X"]}],
                                        "events": []})"),
               TreeError);
}

TEST(Exchange, OpsaXmlDeclaresEveryNode) {
  const FaultTree ft = tree("TOP=OR(A, V=VOTE2(B, C, D), AND(A, B))");
  const std::string xml = fault_tree_to_opsa_xml(ft, "demo");
  EXPECT_NE(xml.find("<opsa-mef>"), std::string::npos);
  EXPECT_NE(xml.find("<define-fault-tree name=\"demo\">"), std::string::npos);
  EXPECT_NE(xml.find("<define-gate name=\"V\">"), std::string::npos);
  EXPECT_NE(xml.find("<atleast min=\"2\">"), std::string::npos);
  for (const std::string e : {"A", "B", "C", "D"}) {
    EXPECT_NE(xml.find("<define-basic-event name=\"" + e + "\">"), std::string::npos) << e;
  }
}

}  // namespace
}  // namespace resha
