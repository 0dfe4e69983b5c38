#include "nirp/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace nirp {

namespace {

Scenario fixed_rate_scenario(std::string name, double ell0, double horizon) {
    Scenario s;
    s.name = std::move(name);
    s.params = fixed_rate_params(0.03);
    // With the lending rate pinned, the frozen policy coordinates start at
    // r_fixed - loan_spread so the deposit rate keeps the usual spread below
    // the lending rate.
    const double r_g0 = 0.03 - s.params.loan_spread;
    s.initial_core = {0.8, 0.9, ell0, r_g0, r_g0};
    s.initial_aux = {0.0, 1.0, 100.0};
    s.settings.horizon = horizon;
    return s;
}

Scenario policy_scenario(std::string name, double ell0, double horizon) {
    Scenario s;
    s.name = std::move(name);
    s.params = default_params();  // g=0.2, t=0, spread 0.03, eta_r=0.1, eta_g=0.2
    s.initial_core = {0.8, 0.9, ell0, 0.0, 0.0};
    s.initial_aux = {0.4, 1.0, 100.0};
    s.settings.horizon = horizon;
    return s;
}

}  // namespace

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {"fig2", "fig3", "fig4",
                                                   "fig5", "fig6"};
    return names;
}

Scenario preset(const std::string& name) {
    if (name == "fig2") {
        Scenario s = fixed_rate_scenario("fig2", 0.6, 300.0);
        s.expected.termination = Termination::ConvergedToEquilibrium;
        s.expected.equilibrium_proximity = 1e-3;
        s.expected.final_inflation_positive = true;
        return s;
    }
    if (name == "fig3") {
        Scenario s = fixed_rate_scenario("fig3", 6.0, 150.0);
        s.expected.termination = Termination::DebtBlowup;
        return s;
    }
    if (name == "fig4") {
        Scenario s = policy_scenario("fig4", 0.6, 300.0);
        s.expected.termination = Termination::ConvergedToEquilibrium;
        s.expected.final_target_rate_range = {{0.010, 0.016}};
        s.expected.final_policy_rate_range = {{0.010, 0.016}};
        return s;
    }
    if (name == "fig5") {
        Scenario s = policy_scenario("fig5", 6.0, 400.0);
        s.expected.termination = Termination::ConvergedToEquilibrium;
        s.expected.min_policy_rate_range = {{-0.025, -0.005}};
        s.expected.positive_rate_tail_fraction = 0.1;
        return s;
    }
    if (name == "fig6") {
        Scenario s = policy_scenario("fig6", 8.0, 400.0);
        s.expected.termination = Termination::ConvergedToEquilibrium;
        s.expected.min_policy_rate_range = {{-0.030, -0.012}};
        s.expected.positive_rate_tail_fraction = 0.1;
        return s;
    }
    std::ostringstream msg;
    msg << "unknown preset '" << name << "'; known presets:";
    for (const auto& n : preset_names()) msg << ' ' << n;
    throw std::invalid_argument(msg.str());
}

OutcomeEvaluation evaluate_outcome(const Scenario& scenario,
                                   const Trajectory& traj) {
    OutcomeEvaluation eval;
    const auto& e = scenario.expected;
    const Sample& last = traj.back();

    auto record = [&](const std::string& name, bool pass, double measured,
                      std::string detail) {
        eval.checks.push_back({name, pass, measured, std::move(detail)});
        eval.pass = eval.pass && pass;
    };
    auto in_range = [](double v, const std::pair<double, double>& r) {
        return v >= r.first && v <= r.second;
    };
    auto range_str = [](const std::pair<double, double>& r) {
        std::ostringstream os;
        os << "[" << r.first << ", " << r.second << "]";
        return os.str();
    };

    if (e.termination) {
        record("termination", traj.termination == *e.termination,
               static_cast<double>(traj.termination),
               "expected " + to_string(*e.termination) + ", got " +
                   to_string(traj.termination));
    }
    if (e.equilibrium_proximity) {
        const Equilibrium eq = solve_interior_equilibrium(
            scenario.params, last.core.policy_rate);
        const double dist = std::max(
            {std::abs(last.core.wage_share - eq.omega_bar),
             std::abs(last.core.employment - eq.lambda_bar),
             std::abs(last.core.private_debt_ratio - eq.ell_bar)});
        record("equilibrium_proximity", dist < *e.equilibrium_proximity, dist,
               "final (omega,lambda,ell) distance to interior equilibrium");
    }
    if (e.min_policy_rate_range) {
        double min_rg = traj.samples.front().core.policy_rate;
        for (const auto& s : traj.samples)
            min_rg = std::min(min_rg, s.core.policy_rate);
        record("min_policy_rate", in_range(min_rg, *e.min_policy_rate_range),
               min_rg, "expected in " + range_str(*e.min_policy_rate_range));
    }
    if (e.final_inflation_range) {
        record("final_inflation",
               in_range(last.derived.inflation, *e.final_inflation_range),
               last.derived.inflation,
               "expected in " + range_str(*e.final_inflation_range));
    }
    if (e.final_inflation_positive) {
        record("final_inflation_positive", last.derived.inflation > 0.0,
               last.derived.inflation, "expected > 0");
    }
    if (e.final_wage_share_below) {
        record("final_wage_share_below",
               last.core.wage_share < *e.final_wage_share_below,
               last.core.wage_share,
               "expected < " + std::to_string(*e.final_wage_share_below));
    }
    if (e.final_employment_below) {
        record("final_employment_below",
               last.core.employment < *e.final_employment_below,
               last.core.employment,
               "expected < " + std::to_string(*e.final_employment_below));
    }
    if (e.final_target_rate_range) {
        record("final_target_rate",
               in_range(last.core.target_rate, *e.final_target_rate_range),
               last.core.target_rate,
               "expected in " + range_str(*e.final_target_rate_range));
    }
    if (e.final_policy_rate_range) {
        record("final_policy_rate",
               in_range(last.core.policy_rate, *e.final_policy_rate_range),
               last.core.policy_rate,
               "expected in " + range_str(*e.final_policy_rate_range));
    }
    if (e.final_lending_rate_range) {
        record("final_lending_rate",
               in_range(last.derived.lending_rate, *e.final_lending_rate_range),
               last.derived.lending_rate,
               "expected in " + range_str(*e.final_lending_rate_range));
    }
    if (e.final_gov_debt_range) {
        record("final_gov_debt_ratio",
               in_range(last.aux.gov_debt_ratio, *e.final_gov_debt_range),
               last.aux.gov_debt_ratio,
               "expected in " + range_str(*e.final_gov_debt_range));
    }
    if (e.positive_rate_tail_fraction) {
        const double t0 = traj.front().t;
        const double t1 = last.t;
        const double cutoff = t1 - *e.positive_rate_tail_fraction * (t1 - t0);
        bool all_positive = true;
        double min_tail = last.core.policy_rate;
        for (const auto& s : traj.samples) {
            if (s.t < cutoff) continue;
            min_tail = std::min(min_tail, s.core.policy_rate);
            all_positive = all_positive && s.core.policy_rate > 0.0;
        }
        record("positive_rate_tail", all_positive, min_tail,
               "min policy rate over the trailing span, expected > 0");
    }
    return eval;
}

ScenarioRun run_scenario(const Scenario& scenario) {
    ScenarioRun run;
    run.trajectory = integrate(scenario.initial_core, scenario.initial_aux,
                               scenario.params, scenario.settings);
    run.audit = audit_trajectory(run.trajectory, scenario.params);
    run.outcome = evaluate_outcome(scenario, run.trajectory);
    return run;
}

std::vector<double> SweepAxis::values() const {
    if (steps < 1) throw std::invalid_argument("SweepAxis: steps must be >= 1");
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(steps));
    if (steps == 1) {
        v.push_back(min);
        return v;
    }
    for (int i = 0; i < steps; ++i)
        v.push_back(min + (max - min) * static_cast<double>(i) /
                              static_cast<double>(steps - 1));
    return v;
}

void apply_axis_value(Scenario& s, const std::string& name, double value) {
    // Initial conditions
    if (name == "omega0") { s.initial_core.wage_share = value; return; }
    if (name == "lambda0") { s.initial_core.employment = value; return; }
    if (name == "ell0") { s.initial_core.private_debt_ratio = value; return; }
    if (name == "rho0") { s.initial_core.target_rate = value; return; }
    if (name == "r_g0") { s.initial_core.policy_rate = value; return; }
    if (name == "b0") { s.initial_aux.gov_debt_ratio = value; return; }
    // Parameters
    ModelParams& p = s.params;
    if (name == "phillips_const") { p.phillips_const = value; return; }
    if (name == "phillips_coef") { p.phillips_coef = value; return; }
    if (name == "inv_const") { p.inv_const = value; return; }
    if (name == "inv_shift") { p.inv_shift = value; return; }
    if (name == "inv_slope") { p.inv_slope = value; return; }
    if (name == "capital_ratio_banks") { p.capital_ratio_banks = value; return; }
    if (name == "markup") { p.markup = value; return; }
    if (name == "productivity_growth") { p.productivity_growth = value; return; }
    if (name == "labor_growth") { p.labor_growth = value; return; }
    if (name == "money_illusion") { p.money_illusion = value; return; }
    if (name == "depreciation") { p.depreciation = value; return; }
    if (name == "inflation_relax") { p.inflation_relax = value; return; }
    if (name == "capital_output") { p.capital_output = value; return; }
    if (name == "gov_spend_share") { p.gov_spend_share = value; return; }
    if (name == "tax_share") { p.tax_share = value; return; }
    if (name == "loan_spread") { p.loan_spread = value; return; }
    if (name == "rate_adjust_speed") { p.rate_adjust_speed = value; return; }
    if (name == "target_adjust_speed") { p.target_adjust_speed = value; return; }
    if (name == "r_fixed") { p.policy_mode.r_fixed = value; return; }
    throw std::invalid_argument("unknown sweep axis '" + name + "'");
}

std::vector<SweepCell> sweep(const SweepSpec& spec, const Scenario& base,
                             unsigned threads) {
    if (spec.axes.empty() || spec.axes.size() > 2)
        throw std::invalid_argument("sweep: need 1 or 2 axes");

    std::vector<std::vector<double>> grids;
    for (const auto& axis : spec.axes) grids.push_back(axis.values());

    std::vector<std::vector<double>> points;  // row-major cross product
    if (grids.size() == 1) {
        for (double v : grids[0]) points.push_back({v});
    } else {
        for (double v0 : grids[0])
            for (double v1 : grids[1]) points.push_back({v0, v1});
    }

    std::vector<SweepCell> cells(points.size());
    auto run_cell = [&](std::size_t idx) {
        SweepCell& cell = cells[idx];
        cell.index = static_cast<int>(idx);
        cell.axis_values = points[idx];
        Scenario s = base;
        for (std::size_t a = 0; a < spec.axes.size(); ++a)
            apply_axis_value(s, spec.axes[a].name, points[idx][a]);
        try {
            const Trajectory traj =
                integrate(s.initial_core, s.initial_aux, s.params, s.settings);
            cell.termination = traj.termination;
            cell.final_core = traj.back().core;
            cell.final_aux = traj.back().aux;
            cell.final_inflation = traj.back().derived.inflation;
            cell.final_lending_rate = traj.back().derived.lending_rate;
            double min_rg = traj.front().core.policy_rate;
            for (const auto& smp : traj.samples)
                min_rg = std::min(min_rg, smp.core.policy_rate);
            cell.min_policy_rate = min_rg;
        } catch (const std::exception& ex) {
            cell.failed = true;
            cell.failure = ex.what();
        }
    };

    unsigned n_threads = threads == 0 ? std::thread::hardware_concurrency()
                                      : threads;
    n_threads = std::max(1u, std::min<unsigned>(n_threads,
                                                static_cast<unsigned>(cells.size())));
    if (n_threads == 1) {
        for (std::size_t i = 0; i < cells.size(); ++i) run_cell(i);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned w = 0; w < n_threads; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < cells.size(); i += n_threads)
                    run_cell(i);
            });
        }
        for (auto& th : pool) th.join();
    }
    return cells;
}

}  // namespace nirp
