#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nirp/equilibrium.hpp"
#include "nirp/integrate.hpp"
#include "nirp/ledger.hpp"

namespace nirp {

/// Quantitative checks evaluated against a finished trajectory. Every field
/// is optional; absent checks are skipped.
struct ExpectedOutcome {
    std::optional<Termination> termination;
    /// Final (omega, lambda, ell) within this distance of the interior
    /// equilibrium solved at the scenario's asymptotic policy rate.
    std::optional<double> equilibrium_proximity;
    std::optional<std::pair<double, double>> min_policy_rate_range;
    std::optional<std::pair<double, double>> final_inflation_range;
    std::optional<bool> final_inflation_positive;
    std::optional<double> final_wage_share_below;
    std::optional<double> final_employment_below;
    std::optional<std::pair<double, double>> final_target_rate_range;
    std::optional<std::pair<double, double>> final_policy_rate_range;
    std::optional<std::pair<double, double>> final_lending_rate_range;
    std::optional<std::pair<double, double>> final_gov_debt_range;
    /// Policy rate strictly positive over the trailing fraction of the
    /// realized time span.
    std::optional<double> positive_rate_tail_fraction;
};

struct Scenario {
    std::string name;
    ModelParams params;
    CoreState initial_core;
    AuxState initial_aux;
    SolverSettings settings;
    ExpectedOutcome expected;
};

struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    std::string detail;
};

struct OutcomeEvaluation {
    bool pass = true;
    std::vector<CheckResult> checks;
};

struct ScenarioRun {
    Trajectory trajectory;
    AuditReport audit;
    OutcomeEvaluation outcome;
};

inline constexpr int kPresetVersion = 1;

/// Names of the shipped presets, in figure order.
const std::vector<std::string>& preset_names();

/// The five experiment presets. Unknown names raise std::invalid_argument
/// listing the valid ones.
Scenario preset(const std::string& name);

/// Integrates, audits and evaluates the expected-outcome predicate.
ScenarioRun run_scenario(const Scenario& scenario);

/// Evaluates the predicate alone against an existing trajectory.
OutcomeEvaluation evaluate_outcome(const Scenario& scenario,
                                   const Trajectory& traj);

/// One sweep axis: a parameter or initial-condition name with an inclusive
/// linear range. Recognized names: omega0, lambda0, ell0, rho0, r_g0, b0 and
/// every ModelParams scalar field name.
struct SweepAxis {
    std::string name;
    double min = 0.0;
    double max = 0.0;
    int steps = 0;  // number of grid points along this axis, >= 1

    std::vector<double> values() const;
};

struct SweepSpec {
    std::vector<SweepAxis> axes;  // 1 or 2 axes
};

struct SweepCell {
    int index = 0;
    std::vector<double> axis_values;
    Termination termination = Termination::HorizonReached;
    bool failed = false;          // integration raised instead of terminating
    std::string failure;
    double min_policy_rate = 0.0;
    CoreState final_core;
    AuxState final_aux;
    double final_inflation = 0.0;
    double final_lending_rate = 0.0;
};

/// Runs the grid over a base scenario on a worker pool; cells are
/// independent and results are merged by cell index, so outcomes do not
/// depend on scheduling. threads = 0 picks the hardware concurrency.
std::vector<SweepCell> sweep(const SweepSpec& spec, const Scenario& base,
                             unsigned threads = 0);

/// Applies an axis value to a copy of the scenario; shared with the CLI for
/// its override flags.
void apply_axis_value(Scenario& scenario, const std::string& name, double value);

}  // namespace nirp
