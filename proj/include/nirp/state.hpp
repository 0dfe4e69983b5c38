#pragma once

namespace nirp {

/// The five ratios evolved by the main system of ODEs.
struct CoreState {
    double wage_share = 0.0;         // omega = W/(pY)
    double employment = 0.0;         // lambda, employed / labor force
    double private_debt_ratio = 0.0; // ell = Lambda/(pY)
    double target_rate = 0.0;        // rho, 1/year
    double policy_rate = 0.0;        // r_g, 1/year

    bool operator==(const CoreState&) const = default;
};

/// Ratios and levels integrated alongside the core but feeding nothing back
/// into it: the government debt ratio, the price level and real output.
struct AuxState {
    double gov_debt_ratio = 0.0; // b = B/(pY)
    double price_level = 1.0;    // p, index with p(0) = 1
    double real_output = 100.0;  // Y, goods/year with Y(0) = 100

    bool operator==(const AuxState&) const = default;
};

/// Observables computed algebraically from a (core, aux) state.
struct Derived {
    double profit_share = 0.0;   // pi
    double inflation = 0.0;      // i(omega), 1/year
    double lending_rate = 0.0;   // r, 1/year
    double deposit_rate = 0.0;   // r_d = r_g, 1/year
    double capital_growth = 0.0; // g_K = kappa(pi)/nu - delta, 1/year
};

}  // namespace nirp
