#include "nirp/json_io.hpp"

#include <set>
#include <string>

namespace nirp {

namespace {

void require_object(const json& j, const std::string& what) {
    if (!j.is_object())
        throw ConfigError(what + " must be a JSON object");
}

void check_keys(const json& j, const std::set<std::string>& allowed,
                const std::string& what) {
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!allowed.contains(key))
            throw ConfigError("unknown field '" + key + "' in " + what);
    }
}

double get_number(const json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number())
        throw ConfigError("field '" + key + "' must be a number");
    return j.at(key).get<double>();
}

std::pair<double, double> get_range(const json& j, const std::string& key) {
    const auto& v = j.at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw ConfigError("field '" + key + "' must be a [lo, hi] number pair");
    return {v[0].get<double>(), v[1].get<double>()};
}

}  // namespace

json to_json(const ModelParams& p) {
    json mode;
    if (p.policy_mode.is_fixed())
        mode = {{"mode", "FixedRate"}, {"r_fixed", p.policy_mode.r_fixed}};
    else
        mode = {{"mode", "ActiveRule"}};
    return {
        {"phillips_const", p.phillips_const},
        {"phillips_coef", p.phillips_coef},
        {"inv_const", p.inv_const},
        {"inv_shift", p.inv_shift},
        {"inv_slope", p.inv_slope},
        {"capital_ratio_banks", p.capital_ratio_banks},
        {"markup", p.markup},
        {"productivity_growth", p.productivity_growth},
        {"labor_growth", p.labor_growth},
        {"money_illusion", p.money_illusion},
        {"depreciation", p.depreciation},
        {"inflation_relax", p.inflation_relax},
        {"capital_output", p.capital_output},
        {"gov_spend_share", p.gov_spend_share},
        {"tax_share", p.tax_share},
        {"loan_spread", p.loan_spread},
        {"rate_adjust_speed", p.rate_adjust_speed},
        {"target_adjust_speed", p.target_adjust_speed},
        {"policy_mode", mode},
    };
}

json to_json(const CoreState& s) {
    return {
        {"wage_share", s.wage_share},
        {"employment", s.employment},
        {"private_debt_ratio", s.private_debt_ratio},
        {"target_rate", s.target_rate},
        {"policy_rate", s.policy_rate},
    };
}

json to_json(const AuxState& s) {
    return {
        {"gov_debt_ratio", s.gov_debt_ratio},
        {"price_level", s.price_level},
        {"real_output", s.real_output},
    };
}

json to_json(const SolverSettings& s) {
    return {
        {"rel_tol", s.rel_tol},
        {"abs_tol", s.abs_tol},
        {"initial_step", s.initial_step},
        {"max_step", s.max_step},
        {"horizon", s.horizon},
        {"blowup_threshold", s.blowup_threshold},
        {"collapse_threshold", s.collapse_threshold},
        {"convergence_window", s.convergence_window},
        {"convergence_tol", s.convergence_tol},
    };
}

json to_json(const ExpectedOutcome& e) {
    json j = json::object();
    if (e.termination) j["termination"] = to_string(*e.termination);
    if (e.equilibrium_proximity)
        j["equilibrium_proximity"] = *e.equilibrium_proximity;
    auto put_range = [&](const char* key,
                         const std::optional<std::pair<double, double>>& r) {
        if (r) j[key] = {r->first, r->second};
    };
    put_range("min_policy_rate_range", e.min_policy_rate_range);
    put_range("final_inflation_range", e.final_inflation_range);
    if (e.final_inflation_positive)
        j["final_inflation_positive"] = *e.final_inflation_positive;
    if (e.final_wage_share_below)
        j["final_wage_share_below"] = *e.final_wage_share_below;
    if (e.final_employment_below)
        j["final_employment_below"] = *e.final_employment_below;
    put_range("final_target_rate_range", e.final_target_rate_range);
    put_range("final_policy_rate_range", e.final_policy_rate_range);
    put_range("final_lending_rate_range", e.final_lending_rate_range);
    put_range("final_gov_debt_range", e.final_gov_debt_range);
    if (e.positive_rate_tail_fraction)
        j["positive_rate_tail_fraction"] = *e.positive_rate_tail_fraction;
    return j;
}

json to_json(const Scenario& s) {
    return {
        {"name", s.name},
        {"params", to_json(s.params)},
        {"initial", to_json(s.initial_core)},
        {"aux_initial", to_json(s.initial_aux)},
        {"settings", to_json(s.settings)},
        {"expected_outcome", to_json(s.expected)},
    };
}

json to_json(const Equilibrium& eq) {
    json eigs = json::array();
    for (const auto& ev : eq.eigenvalues)
        eigs.push_back({{"re", ev.real()}, {"im", ev.imag()}});
    json jac = json::array();
    for (const auto& row : eq.jacobian) {
        json r = json::array();
        for (double v : row) r.push_back(v);
        jac.push_back(r);
    }
    return {
        {"pi_bar", eq.pi_bar},
        {"omega_bar", eq.omega_bar},
        {"lambda_bar", eq.lambda_bar},
        {"ell_bar", eq.ell_bar},
        {"rho_bar", eq.rho_bar},
        {"r_g_bar", eq.r_g_bar},
        {"b_bar", eq.b_bar},
        {"jacobian", jac},
        {"eigenvalues", eigs},
        {"classification", to_string(eq.classification)},
    };
}

json to_json(const AuditReport& r) {
    json ids = json::array();
    for (const auto& c : r.identities)
        ids.push_back({{"identity", c.name},
                       {"max_residual", c.residual},
                       {"t_worst", c.t}});
    return {
        {"pass", r.pass},
        {"threshold", r.threshold},
        {"max_residual", r.max_residual},
        {"worst_identity", r.worst_identity},
        {"identities", ids},
    };
}

json to_json(const OutcomeEvaluation& e) {
    json checks = json::array();
    for (const auto& c : e.checks)
        checks.push_back({{"check", c.name},
                          {"pass", c.pass},
                          {"measured", c.measured},
                          {"detail", c.detail}});
    return {{"pass", e.pass}, {"checks", checks}};
}

namespace {

ModelParams params_from_json(const json& j) {
    require_object(j, "params");
    check_keys(j,
               {"phillips_const", "phillips_coef", "inv_const", "inv_shift",
                "inv_slope", "capital_ratio_banks", "markup",
                "productivity_growth", "labor_growth", "money_illusion",
                "depreciation", "inflation_relax", "capital_output",
                "gov_spend_share", "tax_share", "loan_spread",
                "rate_adjust_speed", "target_adjust_speed", "policy_mode"},
               "params");
    ModelParams p = default_params();
    p.phillips_const = get_number(j, "phillips_const", p.phillips_const);
    p.phillips_coef = get_number(j, "phillips_coef", p.phillips_coef);
    p.inv_const = get_number(j, "inv_const", p.inv_const);
    p.inv_shift = get_number(j, "inv_shift", p.inv_shift);
    p.inv_slope = get_number(j, "inv_slope", p.inv_slope);
    p.capital_ratio_banks =
        get_number(j, "capital_ratio_banks", p.capital_ratio_banks);
    p.markup = get_number(j, "markup", p.markup);
    p.productivity_growth =
        get_number(j, "productivity_growth", p.productivity_growth);
    p.labor_growth = get_number(j, "labor_growth", p.labor_growth);
    p.money_illusion = get_number(j, "money_illusion", p.money_illusion);
    p.depreciation = get_number(j, "depreciation", p.depreciation);
    p.inflation_relax = get_number(j, "inflation_relax", p.inflation_relax);
    p.capital_output = get_number(j, "capital_output", p.capital_output);
    p.gov_spend_share = get_number(j, "gov_spend_share", p.gov_spend_share);
    p.tax_share = get_number(j, "tax_share", p.tax_share);
    p.loan_spread = get_number(j, "loan_spread", p.loan_spread);
    p.rate_adjust_speed = get_number(j, "rate_adjust_speed", p.rate_adjust_speed);
    p.target_adjust_speed =
        get_number(j, "target_adjust_speed", p.target_adjust_speed);
    if (j.contains("policy_mode")) {
        const auto& m = j.at("policy_mode");
        require_object(m, "policy_mode");
        check_keys(m, {"mode", "r_fixed"}, "policy_mode");
        const std::string kind = m.value("mode", "ActiveRule");
        if (kind == "ActiveRule") {
            p.policy_mode = PolicyMode::active_rule();
        } else if (kind == "FixedRate") {
            if (!m.contains("r_fixed"))
                throw ConfigError("policy_mode FixedRate requires 'r_fixed'");
            p.policy_mode = PolicyMode::fixed_rate(m.at("r_fixed").get<double>());
        } else {
            throw ConfigError("policy_mode.mode must be ActiveRule or FixedRate");
        }
    }
    return p;
}

CoreState core_from_json(const json& j, const CoreState& base) {
    require_object(j, "initial");
    check_keys(j,
               {"wage_share", "employment", "private_debt_ratio", "target_rate",
                "policy_rate"},
               "initial");
    CoreState s = base;
    s.wage_share = get_number(j, "wage_share", s.wage_share);
    s.employment = get_number(j, "employment", s.employment);
    s.private_debt_ratio =
        get_number(j, "private_debt_ratio", s.private_debt_ratio);
    s.target_rate = get_number(j, "target_rate", s.target_rate);
    s.policy_rate = get_number(j, "policy_rate", s.policy_rate);
    return s;
}

AuxState aux_from_json(const json& j, const AuxState& base) {
    require_object(j, "aux_initial");
    check_keys(j, {"gov_debt_ratio", "price_level", "real_output"},
               "aux_initial");
    AuxState s = base;
    s.gov_debt_ratio = get_number(j, "gov_debt_ratio", s.gov_debt_ratio);
    s.price_level = get_number(j, "price_level", s.price_level);
    s.real_output = get_number(j, "real_output", s.real_output);
    return s;
}

SolverSettings settings_from_json(const json& j, const SolverSettings& base) {
    require_object(j, "settings");
    check_keys(j,
               {"rel_tol", "abs_tol", "initial_step", "max_step", "horizon",
                "blowup_threshold", "collapse_threshold", "convergence_window",
                "convergence_tol"},
               "settings");
    SolverSettings s = base;
    s.rel_tol = get_number(j, "rel_tol", s.rel_tol);
    s.abs_tol = get_number(j, "abs_tol", s.abs_tol);
    s.initial_step = get_number(j, "initial_step", s.initial_step);
    s.max_step = get_number(j, "max_step", s.max_step);
    s.horizon = get_number(j, "horizon", s.horizon);
    s.blowup_threshold = get_number(j, "blowup_threshold", s.blowup_threshold);
    s.collapse_threshold =
        get_number(j, "collapse_threshold", s.collapse_threshold);
    s.convergence_window =
        get_number(j, "convergence_window", s.convergence_window);
    s.convergence_tol = get_number(j, "convergence_tol", s.convergence_tol);
    return s;
}

ExpectedOutcome expected_from_json(const json& j) {
    require_object(j, "expected_outcome");
    check_keys(j,
               {"termination", "equilibrium_proximity", "min_policy_rate_range",
                "final_inflation_range", "final_inflation_positive",
                "final_wage_share_below", "final_employment_below",
                "final_target_rate_range", "final_policy_rate_range",
                "final_lending_rate_range", "final_gov_debt_range",
                "positive_rate_tail_fraction"},
               "expected_outcome");
    ExpectedOutcome e;
    if (j.contains("termination"))
        e.termination =
            termination_from_string(j.at("termination").get<std::string>());
    if (j.contains("equilibrium_proximity"))
        e.equilibrium_proximity = j.at("equilibrium_proximity").get<double>();
    if (j.contains("min_policy_rate_range"))
        e.min_policy_rate_range = get_range(j, "min_policy_rate_range");
    if (j.contains("final_inflation_range"))
        e.final_inflation_range = get_range(j, "final_inflation_range");
    if (j.contains("final_inflation_positive"))
        e.final_inflation_positive =
            j.at("final_inflation_positive").get<bool>();
    if (j.contains("final_wage_share_below"))
        e.final_wage_share_below = j.at("final_wage_share_below").get<double>();
    if (j.contains("final_employment_below"))
        e.final_employment_below = j.at("final_employment_below").get<double>();
    if (j.contains("final_target_rate_range"))
        e.final_target_rate_range = get_range(j, "final_target_rate_range");
    if (j.contains("final_policy_rate_range"))
        e.final_policy_rate_range = get_range(j, "final_policy_rate_range");
    if (j.contains("final_lending_rate_range"))
        e.final_lending_rate_range = get_range(j, "final_lending_rate_range");
    if (j.contains("final_gov_debt_range"))
        e.final_gov_debt_range = get_range(j, "final_gov_debt_range");
    if (j.contains("positive_rate_tail_fraction"))
        e.positive_rate_tail_fraction =
            j.at("positive_rate_tail_fraction").get<double>();
    return e;
}

}  // namespace

Scenario scenario_from_json(const json& j) {
    require_object(j, "scenario");
    check_keys(j,
               {"name", "params", "initial", "aux_initial", "settings",
                "expected_outcome"},
               "scenario");
    Scenario s;
    s.name = j.value("name", "custom");
    if (j.contains("params")) s.params = params_from_json(j.at("params"));
    if (j.contains("initial"))
        s.initial_core = core_from_json(j.at("initial"), s.initial_core);
    if (j.contains("aux_initial"))
        s.initial_aux = aux_from_json(j.at("aux_initial"), s.initial_aux);
    if (j.contains("settings"))
        s.settings = settings_from_json(j.at("settings"), s.settings);
    if (j.contains("expected_outcome"))
        s.expected = expected_from_json(j.at("expected_outcome"));
    try {
        s.params.validate();
        s.settings.validate();
    } catch (const std::invalid_argument& ex) {
        throw ConfigError(ex.what());
    }
    return s;
}

SweepSpec sweep_spec_from_json(const json& j) {
    require_object(j, "sweep spec");
    check_keys(j, {"axes", "base"}, "sweep spec");
    if (!j.contains("axes") || !j.at("axes").is_array() || j.at("axes").empty())
        throw ConfigError("sweep spec requires a non-empty 'axes' array");
    SweepSpec spec;
    for (const auto& a : j.at("axes")) {
        require_object(a, "axis");
        check_keys(a, {"name", "min", "max", "steps"}, "axis");
        SweepAxis axis;
        if (!a.contains("name"))
            throw ConfigError("axis requires a 'name'");
        axis.name = a.at("name").get<std::string>();
        axis.min = get_number(a, "min", 0.0);
        axis.max = get_number(a, "max", axis.min);
        axis.steps = a.value("steps", 1);
        if (axis.steps < 1) throw ConfigError("axis 'steps' must be >= 1");
        spec.axes.push_back(axis);
    }
    return spec;
}

Scenario sweep_base_from_json(const json& j) {
    if (!j.contains("base"))
        throw ConfigError("sweep spec requires a 'base' scenario");
    const auto& b = j.at("base");
    if (b.is_string()) return preset(b.get<std::string>());
    return scenario_from_json(b);
}

}  // namespace nirp
