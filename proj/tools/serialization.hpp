#pragma once

#include "json.hpp"
#include "trapexp/perturbation.hpp"
#include "trapexp/protocol.hpp"
#include "trapexp/simulator.hpp"
#include "trapexp/units.hpp"

namespace trapexp::cli {

nlohmann::json control_to_json(const Control& control);
Control control_from_json(const nlohmann::json& j);

/// protocol.json payload. `trap` adds SI times next to the dimensionless ones.
nlohmann::json protocol_to_json(const DesignedProtocol& design, const TrapSpec& trap);

/// Rebuilds the protocol from a protocol.json document. The control is taken
/// verbatim from the segment list (no re-validation of tiling); the
/// trajectory is re-integrated from that control.
DesignedProtocol protocol_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const FidelityReport& report);
nlohmann::json diagnostics_to_json(const EvolveDiagnostics& d);
nlohmann::json convergence_to_json(const ConvergenceReport& c);

/// Finite numbers as numbers, everything else as null.
nlohmann::json number_or_null(double value);

}  // namespace trapexp::cli
