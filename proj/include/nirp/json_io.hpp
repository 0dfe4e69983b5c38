#pragma once

#include <json.hpp>

#include "nirp/equilibrium.hpp"
#include "nirp/errors.hpp"
#include "nirp/ledger.hpp"
#include "nirp/scenario.hpp"

namespace nirp {

using json = nlohmann::json;

json to_json(const ModelParams& p);
json to_json(const CoreState& s);
json to_json(const AuxState& s);
json to_json(const SolverSettings& s);
json to_json(const ExpectedOutcome& e);
json to_json(const Scenario& s);
json to_json(const Equilibrium& eq);
json to_json(const AuditReport& r);
json to_json(const OutcomeEvaluation& e);

/// Scenario documents start from baseline defaults and apply present keys;
/// unknown keys raise ConfigError. "params", "initial", "aux_initial",
/// "settings" and "expected_outcome" are all optional objects.
Scenario scenario_from_json(const json& j);

SweepSpec sweep_spec_from_json(const json& j);

/// Base scenario reference inside a sweep document: either a preset name or
/// an inline scenario object under "base".
Scenario sweep_base_from_json(const json& j);

}  // namespace nirp
