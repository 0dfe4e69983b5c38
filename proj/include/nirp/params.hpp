#pragma once

#include <stdexcept>
#include <string>

namespace nirp {

/// How the lending rate faced by firms is determined.
///
/// ActiveRule: the public sector steers the policy rate r_g through the
/// target-rate feedback rule, and loans are priced at r_g + loan_spread.
/// FixedRate: the lending rate is pinned at r_fixed and the policy ODEs are
/// frozen (target_rate and policy_rate keep their initial values).
struct PolicyMode {
    enum class Kind { ActiveRule, FixedRate };

    Kind kind = Kind::ActiveRule;
    double r_fixed = 0.0;  // lending rate when kind == FixedRate, 1/year

    static PolicyMode active_rule() { return {Kind::ActiveRule, 0.0}; }
    static PolicyMode fixed_rate(double r) { return {Kind::FixedRate, r}; }

    bool is_fixed() const { return kind == Kind::FixedRate; }
    bool operator==(const PolicyMode&) const = default;
};

/// Structural constants of the model. Defaults are the baseline calibration
/// with the active monetary rule; the no-policy experiments override
/// gov_spend_share, tax_share and the adjustment speeds to zero and switch
/// policy_mode to FixedRate.
///
/// The Phillips-curve constants and the wage/debt symbols of the source
/// material collide (both called a and b); field names keep them apart.
struct ModelParams {
    double phillips_const = -0.0401;      // additive Phillips term, 1/year
    double phillips_coef = 0.0001;        // Phillips pole coefficient
    double inv_const = -0.0065;           // investment floor
    double inv_shift = -5.0;              // affine term in investment exponent
    double inv_slope = 20.0;              // profit sensitivity of investment
    double capital_ratio_banks = 0.1;     // regulatory capital / loans
    double markup = 1.3;                  // price markup over unit labor cost
    double productivity_growth = 0.025;   // 1/year
    double labor_growth = 0.02;           // 1/year
    double money_illusion = 0.8;          // wage indexation to inflation, in [0,1]
    double depreciation = 0.03;           // 1/year
    double inflation_relax = 0.35;        // speed of price adjustment, 1/year
    double capital_output = 3.0;          // capital to output ratio, years
    double gov_spend_share = 0.2;         // G/Y
    double tax_share = 0.0;               // T/Y
    double loan_spread = 0.03;            // lending minus policy rate, 1/year
    double rate_adjust_speed = 0.1;       // eta_r, 1/year
    double target_adjust_speed = 0.2;     // eta_g, 1/year
    PolicyMode policy_mode{};

    /// Lending rate charged on loans given the current policy rate.
    double lending_rate(double policy_rate) const {
        return policy_mode.is_fixed() ? policy_mode.r_fixed
                                      : policy_rate + loan_spread;
    }

    /// Throws std::invalid_argument if a structural invariant is violated.
    void validate() const;

    bool operator==(const ModelParams&) const = default;
};

/// Baseline calibration with the active monetary rule (the default).
ModelParams default_params();

/// Baseline calibration with no public sector and a fixed lending rate:
/// gov_spend_share = tax_share = 0, adjustment speeds 0, FixedRate(r).
ModelParams fixed_rate_params(double r);

}  // namespace nirp
