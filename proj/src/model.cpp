#include "nirp/model.hpp"

#include <cmath>
#include <stdexcept>

namespace nirp {

void ModelParams::validate() const {
    auto fail = [](const std::string& msg) {
        throw std::invalid_argument("ModelParams: " + msg);
    };
    if (!(markup >= 1.0)) fail("markup must be >= 1");
    if (!(capital_ratio_banks > 0.0 && capital_ratio_banks < 1.0))
        fail("capital_ratio_banks must lie in (0,1)");
    if (!(capital_output > 0.0)) fail("capital_output must be > 0");
    if (!(depreciation >= 0.0)) fail("depreciation must be >= 0");
    if (!(money_illusion >= 0.0 && money_illusion <= 1.0))
        fail("money_illusion must lie in [0,1]");
    if (!(rate_adjust_speed >= 0.0)) fail("rate_adjust_speed must be >= 0");
    if (!(target_adjust_speed >= 0.0)) fail("target_adjust_speed must be >= 0");
    if (!(phillips_coef > 0.0)) fail("phillips_coef must be > 0");
    if (!(inv_slope > 0.0)) fail("inv_slope must be > 0");
    if (!(inflation_relax >= 0.0)) fail("inflation_relax must be >= 0");
}

ModelParams default_params() { return ModelParams{}; }

ModelParams fixed_rate_params(double r) {
    ModelParams p;
    p.gov_spend_share = 0.0;
    p.tax_share = 0.0;
    p.rate_adjust_speed = 0.0;
    p.target_adjust_speed = 0.0;
    p.policy_mode = PolicyMode::fixed_rate(r);
    return p;
}

double phillips(double employment, const ModelParams& params) {
    if (employment >= 1.0)
        throw std::domain_error("phillips: employment rate at or above 1");
    const double gap = 1.0 - employment;
    return params.phillips_const + params.phillips_coef / (gap * gap);
}

double phillips_inverse(double wage_growth, const ModelParams& params) {
    if (wage_growth <= params.phillips_const)
        throw std::domain_error(
            "phillips_inverse: no employment rate attains this wage growth");
    return 1.0 -
           std::sqrt(params.phillips_coef / (wage_growth - params.phillips_const));
}

double investment(double pi, const ModelParams& params) {
    return params.inv_const + std::exp(params.inv_shift + params.inv_slope * pi);
}

double investment_inverse(double y, const ModelParams& params) {
    if (y <= params.inv_const)
        throw std::domain_error("investment_inverse: value at or below the floor");
    return (std::log(y - params.inv_const) - params.inv_shift) / params.inv_slope;
}

double inflation(double wage_share, const ModelParams& params) {
    return params.inflation_relax * (params.markup * wage_share - 1.0);
}

double profit_share(const CoreState& s, const ModelParams& params) {
    return 1.0 - s.wage_share - params.tax_share -
           params.lending_rate(s.policy_rate) * s.private_debt_ratio;
}

CoreState core_rhs(const CoreState& s, const ModelParams& params) {
    if (!(std::isfinite(s.wage_share) && std::isfinite(s.employment) &&
          std::isfinite(s.private_debt_ratio) && std::isfinite(s.target_rate) &&
          std::isfinite(s.policy_rate)))
        throw std::invalid_argument("core_rhs: non-finite state");

    const double pi = profit_share(s, params);
    const double kappa = investment(pi, params);
    const double infl = inflation(s.wage_share, params);
    const double growth =
        kappa / params.capital_output - params.depreciation;  // g_K
    const double growth_gap =
        growth - params.productivity_growth - params.labor_growth;
    const double r = params.lending_rate(s.policy_rate);

    CoreState d;
    d.wage_share =
        s.wage_share * (phillips(s.employment, params) -
                        params.productivity_growth -
                        (1.0 - params.money_illusion) * infl);
    d.employment = s.employment * growth_gap;
    d.private_debt_ratio = s.private_debt_ratio * (r - growth - infl) +
                           s.wage_share + params.tax_share + kappa - 1.0;
    if (params.policy_mode.is_fixed()) {
        d.target_rate = 0.0;
        d.policy_rate = 0.0;
    } else {
        d.target_rate = params.target_adjust_speed * growth_gap;
        d.policy_rate =
            params.rate_adjust_speed * (s.target_rate - s.policy_rate);
    }
    return d;
}

AuxState aux_rhs(const CoreState& core, const AuxState& aux,
                 const ModelParams& params) {
    if (!(aux.price_level > 0.0 && aux.real_output > 0.0))
        throw std::invalid_argument("aux_rhs: price level and output must be positive");

    const double pi = profit_share(core, params);
    const double infl = inflation(core.wage_share, params);
    const double growth =
        investment(pi, params) / params.capital_output - params.depreciation;

    AuxState d;
    d.gov_debt_ratio =
        (params.gov_spend_share - params.tax_share) +
        aux.gov_debt_ratio * (core.policy_rate - infl - growth);
    d.price_level = aux.price_level * infl;
    d.real_output = aux.real_output * growth;
    return d;
}

Derived derive(const CoreState& core, const AuxState& /*aux*/,
               const ModelParams& params) {
    Derived d;
    d.profit_share = profit_share(core, params);
    d.inflation = inflation(core.wage_share, params);
    d.lending_rate = params.lending_rate(core.policy_rate);
    d.deposit_rate = core.policy_rate;
    d.capital_growth =
        investment(d.profit_share, params) / params.capital_output -
        params.depreciation;
    return d;
}

ScaleAnchors anchors_for(const CoreState& initial_core,
                         const AuxState& initial_aux) {
    ScaleAnchors a;
    a.productivity0 = 1.0;
    a.labor_force0 =
        initial_aux.real_output / (a.productivity0 * initial_core.employment);
    return a;
}

Levels reconstruct_levels(const CoreState& core, const AuxState& aux,
                          const ModelParams& params, double t,
                          const ScaleAnchors& anchors) {
    Levels lv;
    lv.productivity =
        anchors.productivity0 * std::exp(params.productivity_growth * t);
    lv.labor_force = anchors.labor_force0 * std::exp(params.labor_growth * t);
    lv.nominal_wage = core.wage_share * aux.price_level * lv.productivity;
    lv.capital = params.capital_output * aux.real_output;
    const double nominal_output = aux.price_level * aux.real_output;
    lv.loans = core.private_debt_ratio * nominal_output;
    lv.bills = aux.gov_debt_ratio * nominal_output;
    lv.deposits = (1.0 - params.capital_ratio_banks) * lv.loans;
    return lv;
}

}  // namespace nirp
