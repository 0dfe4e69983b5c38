// nirpsim: stock-flow consistent Keen-type macro simulator with a
// negative-rate monetary policy rule.
//
// Subcommands: simulate, equilibrium, sweep, audit, rates-check.
// Exit codes: 0 success, 1 usage/config error, 2 numerical failure,
// 3 acceptance-predicate or audit failure.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "nirp/json_io.hpp"
#include "nirp/rates.hpp"
#include "nirp/scenario.hpp"
#include "nirp/svg.hpp"
#include "nirp/trajectory_csv.hpp"

namespace fs = std::filesystem;
using nirp::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitPredicate = 3;

json read_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw nirp::ConfigError("cannot open: " + path);
    json j;
    try {
        f >> j;
    } catch (const json::parse_error& ex) {
        throw nirp::ConfigError(path + ": " + ex.what());
    }
    return j;
}

nirp::Scenario load_scenario(const std::string& ref) {
    if (fs::exists(ref)) return nirp::scenario_from_json(read_json_file(ref));
    return nirp::preset(ref);
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << text;
    if (!f) throw std::runtime_error("write failed: " + path);
}

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct CommonFlags {
    std::string out_dir = ".";
    std::string format = "text";
    bool seedless = false;  // accepted for interface parity; runs are
                            // deterministic unconditionally
    double tol = 0.0;       // 0 = keep scenario default
    double horizon = 0.0;   // 0 = keep scenario default
};

void apply_overrides(nirp::Scenario& s, const CommonFlags& flags) {
    if (flags.tol > 0.0) {
        s.settings.rel_tol = flags.tol;
        s.settings.abs_tol = flags.tol * 1e-2;
    }
    if (flags.horizon > 0.0) s.settings.horizon = flags.horizon;
}

int cmd_simulate(const std::string& ref, const CommonFlags& flags) {
    nirp::Scenario scenario = load_scenario(ref);
    apply_overrides(scenario, flags);

    const nirp::ScenarioRun run = nirp::run_scenario(scenario);

    fs::create_directories(flags.out_dir);
    const fs::path dir(flags.out_dir);
    nirp::write_trajectory_csv(run.trajectory, (dir / "trajectory.csv").string());
    nirp::write_svg(run.trajectory, scenario.name,
                    (dir / "trajectory.svg").string());
    write_text_file((dir / "audit.json").string(),
                    nirp::to_json(run.audit).dump(2) + "\n");

    json summary = {
        {"scenario", scenario.name},
        {"termination", nirp::to_string(run.trajectory.termination)},
        {"samples", run.trajectory.samples.size()},
        {"final_t", run.trajectory.back().t},
        {"audit", nirp::to_json(run.audit)},
        {"outcome", nirp::to_json(run.outcome)},
    };
    if (flags.format == "json") {
        std::cout << summary.dump(2) << "\n";
    } else {
        std::cout << "scenario " << scenario.name << ": "
                  << nirp::to_string(run.trajectory.termination) << " at t="
                  << run.trajectory.back().t << " ("
                  << run.trajectory.samples.size() << " samples)\n";
        std::cout << "audit: " << (run.audit.pass ? "PASS" : "FAIL")
                  << " (max residual " << run.audit.max_residual << " in "
                  << run.audit.worst_identity << ")\n";
        for (const auto& c : run.outcome.checks)
            std::cout << "check " << c.name << ": "
                      << (c.pass ? "pass" : "FAIL") << " (measured "
                      << c.measured << "; " << c.detail << ")\n";
        std::cout << "wrote " << (dir / "trajectory.csv").string() << ", "
                  << (dir / "trajectory.svg").string() << ", "
                  << (dir / "audit.json").string() << "\n";
    }
    if (!run.audit.pass || !run.outcome.pass) return kExitPredicate;
    return kExitOk;
}

int cmd_equilibrium(const std::string& scenario_ref, double r_g_bar,
                    double fixed_rate, bool use_fixed_rate) {
    nirp::ModelParams params;
    if (!scenario_ref.empty())
        params = load_scenario(scenario_ref).params;
    else
        params = nirp::default_params();
    if (use_fixed_rate) params.policy_mode = nirp::PolicyMode::fixed_rate(fixed_rate);

    const nirp::Equilibrium eq = nirp::solve_interior_equilibrium(params, r_g_bar);
    std::cout << nirp::to_json(eq).dump(2) << "\n";
    return kExitOk;
}

int cmd_sweep(const std::string& spec_path, const CommonFlags& flags,
              unsigned threads) {
    const json doc = read_json_file(spec_path);
    const nirp::SweepSpec spec = nirp::sweep_spec_from_json(doc);
    nirp::Scenario base = nirp::sweep_base_from_json(doc);
    apply_overrides(base, flags);

    const auto cells = nirp::sweep(spec, base, threads);

    fs::create_directories(flags.out_dir);
    const fs::path csv_path = fs::path(flags.out_dir) / "sweep.csv";
    std::string out = "cell";
    for (const auto& axis : spec.axes) out += "," + axis.name;
    out += ",termination,min_r_g,final_omega,final_lambda,final_ell,final_rho,"
           "final_r_g,final_b,final_inflation,final_lending_rate,error\n";
    for (const auto& c : cells) {
        out += std::to_string(c.index);
        for (double v : c.axis_values) out += "," + fmt17(v);
        if (c.failed) {
            out += ",error,,,,,,,,,," + c.failure + "\n";
            continue;
        }
        out += "," + nirp::to_string(c.termination);
        out += "," + fmt17(c.min_policy_rate);
        out += "," + fmt17(c.final_core.wage_share);
        out += "," + fmt17(c.final_core.employment);
        out += "," + fmt17(c.final_core.private_debt_ratio);
        out += "," + fmt17(c.final_core.target_rate);
        out += "," + fmt17(c.final_core.policy_rate);
        out += "," + fmt17(c.final_aux.gov_debt_ratio);
        out += "," + fmt17(c.final_inflation);
        out += "," + fmt17(c.final_lending_rate);
        out += ",\n";
    }
    write_text_file(csv_path.string(), out);

    std::cout << "swept " << cells.size() << " cells; wrote "
              << csv_path.string() << "\n";
    return kExitOk;
}

int cmd_audit(const std::string& csv_path, const std::string& scenario_ref,
              const CommonFlags& flags) {
    const nirp::Trajectory traj = nirp::read_trajectory_csv(csv_path);
    nirp::ModelParams params = scenario_ref.empty()
                                   ? nirp::default_params()
                                   : load_scenario(scenario_ref).params;
    const nirp::AuditReport report = nirp::audit_trajectory(traj, params);
    if (flags.format == "json") {
        std::cout << nirp::to_json(report).dump(2) << "\n";
    } else {
        std::cout << "audit: " << (report.pass ? "PASS" : "FAIL")
                  << " (threshold " << report.threshold << ")\n";
        for (const auto& c : report.identities)
            std::cout << "  " << c.name << ": max residual " << c.residual
                      << " at t=" << c.t << "\n";
    }
    return report.pass ? kExitOk : kExitPredicate;
}

int cmd_rates_check(const std::string& csv_path, const CommonFlags& flags) {
    const nirp::RatesSeries series = nirp::load_rates_csv(csv_path);
    const nirp::SpreadReport report = nirp::rates_check(series);
    if (flags.format == "json") {
        const json j = {
            {"pass", report.pass},
            {"observations_used", report.observations_used},
            {"lending_spread_mean", report.lending_spread_mean},
            {"lending_spread_stdev", report.lending_spread_stdev},
            {"deposit_spread_mean", report.deposit_spread_mean},
            {"deposit_spread_stdev", report.deposit_spread_stdev},
            {"lending_spread_positive_fraction",
             report.lending_spread_positive_fraction},
        };
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "rates check: " << (report.pass ? "PASS" : "FAIL") << "\n"
                  << "  observations used: " << report.observations_used << "\n"
                  << "  lending - policy spread: mean "
                  << report.lending_spread_mean << ", stdev "
                  << report.lending_spread_stdev << ", positive fraction "
                  << report.lending_spread_positive_fraction << "\n"
                  << "  deposit - policy spread: mean "
                  << report.deposit_spread_mean << ", stdev "
                  << report.deposit_spread_stdev << "\n";
    }
    return report.pass ? kExitOk : kExitPredicate;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Simulator for a stock-flow consistent Keen-type macro model whose "
        "policy rate may become arbitrarily negative"};
    app.require_subcommand(1);

    CommonFlags flags;
    app.add_option("--out", flags.out_dir, "Output directory")
        ->capture_default_str();
    app.add_option("--format", flags.format, "Report format: text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    app.add_flag("--seedless", flags.seedless,
                 "No-op; every run is deterministic");
    app.add_option("--tol", flags.tol,
                   "Override relative tolerance (absolute = 1e-2 * rel)");
    app.add_option("--horizon", flags.horizon, "Override horizon in years");

    std::string scenario_ref;
    auto* simulate = app.add_subcommand(
        "simulate", "Integrate a preset or scenario JSON; writes "
                    "trajectory.csv, trajectory.svg and audit.json");
    simulate->add_option("scenario", scenario_ref,
                         "Preset name (fig2..fig6) or scenario JSON path")
        ->required();

    double eq_rg = 0.0, eq_fixed_rate = 0.03;
    bool eq_use_fixed = false;
    std::string eq_scenario;
    auto* equilibrium = app.add_subcommand(
        "equilibrium", "Solve the interior equilibrium and print it as JSON");
    equilibrium->add_option("--rg", eq_rg,
                            "Asymptotic policy rate selecting the member of "
                            "the equilibrium family")
        ->capture_default_str();
    equilibrium->add_option("--scenario", eq_scenario,
                            "Take parameters from this preset or JSON file");
    equilibrium->add_flag("--fixed-rate", eq_use_fixed,
                          "Use a fixed lending rate instead of the policy rule");
    equilibrium->add_option("--r-fixed", eq_fixed_rate,
                            "Fixed lending rate used with --fixed-rate")
        ->capture_default_str();

    std::string sweep_spec_path;
    unsigned sweep_threads = 0;
    auto* sweep_cmd =
        app.add_subcommand("sweep", "Run a parameter grid; writes sweep.csv");
    sweep_cmd->add_option("spec", sweep_spec_path, "Sweep spec JSON path")
        ->required();
    sweep_cmd->add_option("--threads", sweep_threads,
                          "Worker threads (0 = hardware)");

    std::string audit_csv, audit_scenario;
    auto* audit_cmd = app.add_subcommand(
        "audit", "Re-audit a written trajectory CSV against the ledger");
    audit_cmd->add_option("trajectory", audit_csv, "trajectory.csv path")
        ->required();
    audit_cmd->add_option("--scenario", audit_scenario,
                          "Parameters the trajectory was produced with");

    std::string rates_csv;
    auto* rates_cmd = app.add_subcommand(
        "rates-check",
        "Spread statistics for a historical rates CSV "
        "(date,policy_rate,deposit_rate,lending_rate; percent per year)");
    rates_cmd->add_option("rates", rates_csv, "rates CSV path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) return cmd_simulate(scenario_ref, flags);
        if (equilibrium->parsed())
            return cmd_equilibrium(eq_scenario, eq_rg, eq_fixed_rate,
                                   eq_use_fixed);
        if (sweep_cmd->parsed())
            return cmd_sweep(sweep_spec_path, flags, sweep_threads);
        if (audit_cmd->parsed())
            return cmd_audit(audit_csv, audit_scenario, flags);
        if (rates_cmd->parsed()) return cmd_rates_check(rates_csv, flags);
    } catch (const nirp::ConfigError& ex) {
        std::cerr << "config error: " << ex.what() << "\n";
        return kExitUsage;
    } catch (const nirp::ParseError& ex) {
        std::cerr << "parse error: " << ex.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitUsage;
    } catch (const nirp::EquilibriumError& ex) {
        std::cerr << "numerical error: " << ex.what() << "\n";
        return kExitNumerical;
    } catch (const std::runtime_error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitNumerical;
    }
    return kExitUsage;
}
