#pragma once

#include <string>
#include <vector>

#include "resha/system_model.hpp"

namespace resha {

/// Four-division digital reactor trip system used as the reference case:
/// MCR and RSR operators with manual trip switches, a black-box diverse
/// protection system on the shunt-trip path, and the four-division RPS
/// (sensors, bistable and logic processors, output modules, selective
/// processors, undervoltage trip breakers).
SystemModel build_rts_reference_model();

struct ExpectedSpof {
  std::string name;
  std::string description;
};

/// The thirteen single points of failure of the RPS undervoltage path, in the
/// published order.
const std::vector<ExpectedSpof>& rts_expected_spofs();

}  // namespace resha
