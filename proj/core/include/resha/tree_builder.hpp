#pragma once

#include <string>
#include <vector>

#include "resha/fault_tree.hpp"
#include "resha/stpa.hpp"
#include "resha/system_model.hpp"

namespace resha {

/// Expands the model's gate declarations under one top event into a hardware
/// fault tree. Every referenced failure-bearing node gets
///   FAIL-<id> = OR(HW-<id>[, SW-<id> | HU-<id>])
/// where HW-<id> holds the independent event and the software or human OR is
/// left empty for integrate_ucas / inject_ccfs to fill.
/// Throws TreeError on unknown classes, unknown gates or cycles.
FaultTree build_hardware_fault_tree(const SystemModel& model, const std::string& top_event);

/// Adds one basic event per selected UCA under its source's SW- or HU- gate.
/// Throws IntegrationError naming the first UCA whose source has no such gate.
FaultTree integrate_ucas(const FaultTree& ft, const std::vector<UcaRecord>& selected, const SystemModel& model);

/// `<class>-SF-<uca>` for software sources, `<class>-HU-<uca>` for people.
std::string uca_event_name(const std::string& equipment_class, Technology technology, const std::string& uca_id);

}  // namespace resha
