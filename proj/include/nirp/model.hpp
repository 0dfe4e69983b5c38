#pragma once

#include "nirp/params.hpp"
#include "nirp/state.hpp"

namespace nirp {

/// Wage growth as a function of the employment rate:
///   Phi(lambda) = phillips_const + phillips_coef / (1 - lambda)^2.
/// Strictly increasing on [0, 1) with a pole at full employment.
/// Throws std::domain_error for lambda >= 1.
double phillips(double employment, const ModelParams& params);

/// Inverse of phillips on its range: 1 - sqrt(coef / (y - const)).
/// Defined for y > phillips_const; throws std::domain_error otherwise.
/// May return a negative value when y is below phillips(0).
double phillips_inverse(double wage_growth, const ModelParams& params);

/// Investment share of output as a function of the profit share:
///   kappa(pi) = inv_const + exp(inv_shift + inv_slope * pi).
/// Strictly increasing, bounded below by inv_const, unbounded above.
double investment(double profit_share, const ModelParams& params);

/// Inverse of investment: (ln(y - inv_const) - inv_shift) / inv_slope.
/// Defined for y > inv_const; throws std::domain_error otherwise.
double investment_inverse(double investment_share, const ModelParams& params);

/// Price inflation implied by the markup rule:
///   i(omega) = inflation_relax * (markup * omega - 1).
double inflation(double wage_share, const ModelParams& params);

/// Pre-depreciation profit share: 1 - omega - t - r * ell, where r is the
/// mode-dependent lending rate.
double profit_share(const CoreState& state, const ModelParams& params);

/// Right-hand side of the five core ODEs, returned with derivatives packed
/// in the CoreState fields. Under FixedRate the target/policy derivatives
/// are identically zero. Throws std::domain_error when employment >= 1 and
/// std::invalid_argument on non-finite input.
CoreState core_rhs(const CoreState& state, const ModelParams& params);

/// Right-hand side of the auxiliary ODEs (gov debt ratio, price level,
/// real output). Requires price_level > 0 and real_output > 0.
AuxState aux_rhs(const CoreState& core, const AuxState& aux,
                 const ModelParams& params);

/// Algebraic observables at a state.
Derived derive(const CoreState& core, const AuxState& aux,
               const ModelParams& params);

/// Presentation anchors for nominal levels. Productivity starts at 1;
/// the labor force level is fixed so that employment matches the initial
/// condition: N0 = Y0 / (a0 * lambda0).
struct ScaleAnchors {
    double productivity0 = 1.0;
    double labor_force0 = 0.0;
};

ScaleAnchors anchors_for(const CoreState& initial_core,
                         const AuxState& initial_aux);

/// Nominal levels reconstructed from ratios at time t.
struct Levels {
    double productivity = 0.0;  // a(t) = a0 * exp(alpha t)
    double labor_force = 0.0;   // N(t) = N0 * exp(beta t)
    double nominal_wage = 0.0;  // w = omega * p * a
    double capital = 0.0;       // K = nu * Y
    double loans = 0.0;         // Lambda = ell * p * Y
    double bills = 0.0;         // B = b * p * Y
    double deposits = 0.0;      // Delta = (1 - k_r) * Lambda
};

Levels reconstruct_levels(const CoreState& core, const AuxState& aux,
                          const ModelParams& params, double t,
                          const ScaleAnchors& anchors);

}  // namespace nirp
