#include "resha/rts_fixture.hpp"

namespace resha {

namespace {

const std::vector<std::string> kDivisions{"A", "B", "C", "D"};
const std::vector<std::string> kFailHazards{"H1", "H2", "H3"};
const std::vector<std::string> kSpuriousHazards{"H4"};

NodeId id(const std::string& div, int unit, int module, int component) { return {div, unit, module, component}; }

// Division A keeps the short names used in the case-study figures; the other
// divisions get a suffix so names stay unique.
std::string local_name(const std::string& base, const std::string& div) {
  return div == "A" ? base : base + " (" + div + ")";
}

Node node(NodeId nid, std::string name, NodeKind kind, Technology tech, std::optional<std::string> cls,
          std::string subsystem, std::string role = {}) {
  return Node{std::move(nid), std::move(name), kind, std::move(role), tech, std::move(cls), std::move(subsystem)};
}

ControlActionSpec trip_action(std::string link, std::string command, std::string verb, std::string target_phrase,
                              bool refined = false) {
  ControlActionSpec ca;
  ca.link = std::move(link);
  ca.command = std::move(command);
  ca.verb = std::move(verb);
  ca.target_phrase = std::move(target_phrase);
  ca.refined = refined;
  ca.contexts = {"during AOO", "when there is NO AOO", "after AOO has existed for some time", ""};
  ca.hazards = {kFailHazards, kSpuriousHazards, kFailHazards, {}};
  return ca;
}

GateDeclaration gate(std::string gid, GateKind kind, std::vector<std::string> inputs, std::string description = {},
                     Replication rep = Replication::kNone, std::string cls = {}, int k = 0) {
  return GateDeclaration{std::move(gid), kind, k, std::move(inputs), rep, std::move(cls), std::move(description)};
}

}  // namespace

SystemModel build_rts_reference_model() {
  ModelParts p;
  p.name = "Four-division digital reactor trip system";
  p.description =
      "Reference model: four diverse ways to trip the reactor (MCR operator, RSR operator, DPS shunt trip, RPS "
      "undervoltage trip). The RPS has four identical divisions.";

  p.losses = {{"L1", "Human injury or loss of life"},
              {"L2", "Environmental contamination"},
              {"L3", "Equipment damage"},
              {"L4", "Power generation"},
              {"L5", "Public perception"}};
  p.hazards = {{"H1", "Reactor temperature too high", {"L1", "L2", "L3", "L4", "L5"}},
               {"H2", "Equipment beyond limits", {"L1", "L2", "L3", "L4", "L5"}},
               {"H3", "Release of radioactive materials", {"L1", "L2", "L5"}},
               {"H4", "Reactor shutdown", {"L4", "L5"}}};

  using K = NodeKind;
  using T = Technology;
  auto& n = p.nodes;
  n.push_back(node(id("RX", 0, 0, 0), "Reactor", K::kDivision, T::kAnalog, std::nullopt, "Plant", "controlled process"));
  n.push_back(node(id("MC", 0, 0, 0), "MCR operator", K::kDivision, T::kHuman, "MCR-OP", "MCR", "controller"));
  n.push_back(node(id("MC", 0, 0, 1), "MCR manual trip switch", K::kComponent, T::kAnalog, "MCR-TS", "MCR", "actuator"));
  n.push_back(node(id("RS", 0, 0, 0), "RSR operator", K::kDivision, T::kHuman, "RSR-OP", "RSR", "controller"));
  n.push_back(node(id("RS", 0, 0, 1), "RSR manual trip switch", K::kComponent, T::kAnalog, "RSR-TS", "RSR", "actuator"));
  n.push_back(node(id("DP", 0, 0, 0), "DPS", K::kDivision, T::kDigital, "DPS", "DPS", "controller"));

  auto& links = p.links;
  auto& actions = p.control_actions;
  links.push_back({"MCR-TRIP", LinkType::kControl, id("MC", 0, 0, 0), {id("RX", 0, 0, 0)}});
  actions.push_back(trip_action("MCR-TRIP", "manual trip command", "manually trips the reactor", "the reactor"));
  links.push_back({"RSR-TRIP", LinkType::kControl, id("RS", 0, 0, 0), {id("RX", 0, 0, 0)}});
  actions.push_back(trip_action("RSR-TRIP", "manual trip command", "manually trips the reactor", "the reactor"));
  links.push_back({"DPS-TRIP", LinkType::kControl, id("DP", 0, 0, 0), {id("RX", 0, 0, 0)}});
  actions.push_back(trip_action("DPS-TRIP", "diverse trip command", "demands the shunt trip of the reactor trip breakers",
                                "the reactor trip breakers"));
  links.push_back({"FB-RX-MCR", LinkType::kFeedback, id("RX", 0, 0, 0), {id("MC", 0, 0, 0)}});
  links.push_back({"FB-RX-RSR", LinkType::kFeedback, id("RX", 0, 0, 0), {id("RS", 0, 0, 0)}});
  links.push_back({"FB-RX-DPS", LinkType::kFeedback, id("RX", 0, 0, 0), {id("DP", 0, 0, 0)}});

  for (const auto& d : kDivisions) {
    n.push_back(node(id(d, 0, 0, 0), "RPS division " + d, K::kDivision, T::kDigital, std::nullopt, "RPS", "division"));
    n.push_back(node(id(d, 1, 0, 0), "Selective processor unit " + d, K::kUnit, T::kDigital, std::nullopt, "RPS"));
    for (int s = 1; s <= 2; ++s) {
      n.push_back(node(id(d, 1, s, 0), local_name("SP" + std::to_string(s), d), K::kModule, T::kDigital, "SP", "RPS"));
    }
    n.push_back(node(id(d, 2, 0, 0), "Logic cabinet " + d, K::kUnit, T::kDigital, std::nullopt, "RPS"));
    for (int b = 1; b <= 2; ++b) {
      n.push_back(node(id(d, 2, b, 0), local_name("BP-" + std::to_string(b), d), K::kModule, T::kDigital, "LC-BP", "RPS"));
    }
    for (int m = 1; m <= 4; ++m) {
      n.push_back(
          node(id(d, 2, 2 + m, 0), local_name("DOM-" + std::to_string(m), d), K::kModule, T::kDigital, "LC-DOM", "RPS"));
    }
    for (int l = 1; l <= 4; ++l) {
      n.push_back(
          node(id(d, 2, 6 + l, 0), local_name("LP-" + std::to_string(l), d), K::kModule, T::kDigital, "LC-LP", "RPS"));
    }
    n.push_back(node(id(d, 3, 0, 1), "Sensors " + d, K::kComponent, T::kDigital, "SENSOR", "RPS", "sensor"));
    n.push_back(node(id(d, 4, 0, 0), "Trip breakers " + d, K::kUnit, T::kAnalog, std::nullopt, "RPS"));
    n.push_back(node(id(d, 4, 1, 0), "RTB " + d + "1", K::kModule, T::kAnalog, std::nullopt, "RPS", "breaker"));
    n.push_back(node(id(d, 4, 1, 1), "RTB " + d + "1 UV", K::kComponent, T::kAnalog, "RTB-UV", "RPS", "actuator"));
    n.push_back(node(id(d, 4, 1, 2), "RTB " + d + "1 ST", K::kComponent, T::kAnalog, "RTB-ST", "RPS", "actuator"));

    // division-level action, refined by the module-level actions below
    links.push_back({"RPS-" + d + "-TRIP", LinkType::kControl, id(d, 0, 0, 0), {id("RX", 0, 0, 0)}});
    actions.push_back(trip_action("RPS-" + d + "-TRIP", "trip signal",
                                  "demands the undervoltage trip of the reactor trip breakers",
                                  "the reactor trip breakers", true));
    links.push_back({"FB-RX-" + d, LinkType::kFeedback, id("RX", 0, 0, 0), {id(d, 0, 0, 0)}});

    const std::string rtb_uv = "RTB " + d + "1 UV";
    for (int s = 1; s <= 2; ++s) {
      const std::string link = d + "-SP" + std::to_string(s) + "-UV";
      links.push_back({link, LinkType::kControl, id(d, 1, s, 0), {id(d, 4, 1, 1)}});
      actions.push_back(trip_action(link, "trip command", "demands " + rtb_uv + " to trip the reactor", rtb_uv));
    }
    // bistable trip signals are split to the four logic processors of each division
    for (int b = 1; b <= 2; ++b) {
      for (const auto& to : kDivisions) {
        const std::string link = d + "-BP" + std::to_string(b) + "-LP-" + to;
        Link l{link, LinkType::kPhysicalSplit, id(d, 2, b, 0), {}};
        for (int lp = 1; lp <= 4; ++lp) l.targets.push_back(id(to, 2, 6 + lp, 0));
        links.push_back(std::move(l));
        const std::string phrase = "the logic processors of division " + to;
        actions.push_back(trip_action(link, "trip signal", "sends a trip signal to " + phrase, phrase));
      }
      links.push_back({d + "-FB-SENSOR-BP" + std::to_string(b), LinkType::kFeedback, id(d, 3, 0, 1), {id(d, 2, b, 0)}});
    }
    // DOM-1/DOM-3 feed SP1, DOM-2/DOM-4 feed SP2
    for (int m = 1; m <= 4; ++m) {
      const int sp = m % 2 == 1 ? 1 : 2;
      const std::string sp_name = local_name("SP" + std::to_string(sp), d);
      const std::string link = d + "-DOM" + std::to_string(m) + "-SP" + std::to_string(sp);
      links.push_back({link, LinkType::kControl, id(d, 2, 2 + m, 0), {id(d, 1, sp, 0)}});
      actions.push_back(trip_action(link, "trip command", "demands " + sp_name + " to trip the reactor", sp_name));
    }
    for (int l = 1; l <= 4; ++l) {
      const std::string dom_name = local_name("DOM-" + std::to_string(l), d);
      const std::string link = d + "-LP" + std::to_string(l) + "-DOM" + std::to_string(l);
      links.push_back({link, LinkType::kControl, id(d, 2, 6 + l, 0), {id(d, 2, 2 + l, 0)}});
      actions.push_back(trip_action(link, "trip command", "demands " + dom_name + " to trip the reactor", dom_name));
    }
  }

  auto& decl = p.gates.declarations;
  using G = GateKind;
  using R = Replication;
  decl.push_back(gate("RTS", G::kAnd, {"MCR-PATH", "RSR-PATH", "AUTO"}, "RTS fails to trip the reactor during an AOO"));
  decl.push_back(gate("MCR-PATH", G::kOr, {"fail:MC00.00.00", "fail:MC00.00.01"}, "MCR manual trip fails"));
  decl.push_back(gate("RSR-PATH", G::kOr, {"fail:RS00.00.00", "fail:RS00.00.01"}, "RSR manual trip fails"));
  decl.push_back(gate("AUTO", G::kAnd, {"DPS-PATH", "RPS"}, "Automatic trip fails"));
  decl.push_back(gate("DPS-PATH", G::kOr, {"fail:DP00.00.00", "ST-TRIP"}, "DPS shunt trip fails"));
  decl.push_back(gate("ST-TRIP", G::kOr, {"ST-AC", "ST-BD"}, "Shunt trip mechanisms fail to open the breakers"));
  decl.push_back(gate("ST-AC", G::kAnd, {"fail:A04.01.02", "fail:C04.01.02"}, "Shunt trips of RTB A1 and C1 fail"));
  decl.push_back(gate("ST-BD", G::kAnd, {"fail:B04.01.02", "fail:D04.01.02"}, "Shunt trips of RTB B1 and D1 fail"));
  decl.push_back(gate("RPS", G::kOr, {"UV-AC", "UV-BD"}, "RPS undervoltage trip fails"));
  decl.push_back(gate("UV-AC", G::kAnd, {"UV-A", "UV-C"}, "Undervoltage trips of RTB A1 and C1 fail"));
  decl.push_back(gate("UV-BD", G::kAnd, {"UV-B", "UV-D"}, "Undervoltage trips of RTB B1 and D1 fail"));
  decl.push_back(gate("UV-{div}", G::kOr, {"fail-each:RTB-UV", "SPDEM-{div}"}, "UV trip of RTB {div}1 fails",
                      R::kPerDivision, "RTB-UV"));
  decl.push_back(gate("SPDEM-{div}", G::kAnd, {"SPOUT{*n}-{div}"}, "No selective processor of division {div} demands a trip",
                      R::kPerDivision, "SP"));
  decl.push_back(gate("SPOUT{n}-{div}", G::kOr, {"fail:{id}", "SPIN{n}-{div}"}, "SP{n} of division {div} gives no trip",
                      R::kPerUnit, "SP"));
  decl.push_back(gate("SPIN1-{div}", G::kAnd, {"DOMOUT1-{div}", "DOMOUT3-{div}"},
                      "SP1 of division {div} receives no trip command", R::kPerDivision, "SP"));
  decl.push_back(gate("SPIN2-{div}", G::kAnd, {"DOMOUT2-{div}", "DOMOUT4-{div}"},
                      "SP2 of division {div} receives no trip command", R::kPerDivision, "SP"));
  decl.push_back(gate("DOMOUT{n}-{div}", G::kOr, {"fail:{id}", "LPOUT{n}-{div}"},
                      "DOM-{n} of division {div} gives no trip", R::kPerUnit, "LC-DOM"));
  decl.push_back(gate("LPOUT{n}-{div}", G::kOr, {"fail:{id}", "LCL-{div}"}, "LP-{n} of division {div} gives no trip",
                      R::kPerUnit, "LC-LP"));
  // two-out-of-four coincidence: the logic fails when three of the four division signals are missing
  decl.push_back(gate("LCL-{div}", G::kVote, {"SIG-{*div}"}, "Coincidence logic of division {div} sees fewer than two trips",
                      R::kPerDivision, "LC-LP", 3));
  decl.push_back(gate("SIG-{div}", G::kAnd, {"BPOUT{*n}-{div}"}, "No bistable trip signal from division {div}",
                      R::kPerDivision, "LC-BP"));
  decl.push_back(gate("BPOUT{n}-{div}", G::kOr, {"fail:{id}", "fail-each:SENSOR"},
                      "BP-{n} of division {div} gives no trip signal", R::kPerUnit, "LC-BP"));

  TopEventSpec top;
  top.id = "RTS";
  top.gate = "RTS";
  top.kind = TopEventKind::kFailureToAct;
  top.description = "RTS fails to trip the reactor during an AOO";
  top.scopes = {{"Full RTS model", "RTS", "all"},
                {"RTS hardware only", "RTS", "hardware"},
                {"Automatic trip only", "AUTO", "all"},
                {"RPS only", "RPS", "all"}};
  p.gates.top_events.push_back(std::move(top));

  auto& policy = p.ccf_policy;
  policy.include_intra_division = true;
  policy.include_cross_division = true;
  policy.include_partial_interdivision = false;
  // one aggregate sensor event per division; no sensor CCF is modelled
  policy.excluded_classes = {"SENSOR"};
  policy.class_labels = {{"SP", "Selective processor"},
                         {"LC-DOM", "Logic cabinet digital output module"},
                         {"LC-BP", "Logic cabinet bistable processor"},
                         {"LC-LP", "Logic cabinet logic processor"},
                         {"RTB-UV", "Reactor trip breaker undervoltage"},
                         {"RTB-ST", "Reactor trip breaker shunt trip"},
                         {"SENSOR", "Sensor"}};
  policy.event_descriptions = {{"LC-BP-HD-CCF", "Logic bistable processor hardware CCF."},
                               {"LC-LP-HD-CCF", "Logic cabinet logic processor hardware CCF"}};
  return SystemModel::create(std::move(p));
}

const std::vector<ExpectedSpof>& rts_expected_spofs() {
  static const std::vector<ExpectedSpof> spofs{
      {"SP-HD-CCF", "Selective processor hardware CCF."},
      {"LC-DOM-HD-CCF", "Logic cabinet digital output module hardware CCF."},
      {"RTB-UV-HD-CCF", "Reactor trip breaker undervoltage hardware CCF."},
      {"LC-BP-HD-CCF", "Logic bistable processor hardware CCF."},
      {"LC-LP-HD-CCF", "Logic cabinet logic processor hardware CCF"},
      {"LC-LP-SF-CCF-TA", "Logic cabinet logic processor software CCF type A."},
      {"LC-LP-SF-CCF-TC", "Logic cabinet logic processor software CCF type C."},
      {"LC-DOM-SF-CCF-TA", "Logic cabinet digital output module software CCF type A."},
      {"LC-DOM-SF-CCF-TC", "Logic cabinet digital output module software CCF type C."},
      {"SP-SF-CCF-TA", "Selective processor software CCF type A."},
      {"SP-SF-CCF-TC", "Selective processor software CCF type C."},
      {"LC-BP-SF-CCF-TA", "Logic cabinet bistable processor software CCF type A."},
      {"LC-BP-SF-CCF-TC", "Logic cabinet bistable processor software CCF type C."},
  };
  return spofs;
}

}  // namespace resha
