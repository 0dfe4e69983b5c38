#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "nirp/model.hpp"

namespace nirp {

enum class Stability { LocallyStable, Unstable, Marginal };

std::string to_string(Stability s);

struct EquilibriumError : std::runtime_error {
    enum class Kind { NoInteriorEquilibrium, DegenerateEquilibrium, GovDebtUndefined };
    Kind kind;
    EquilibriumError(Kind k, const std::string& msg)
        : std::runtime_error(msg), kind(k) {}
};

using Matrix5 = std::array<std::array<double, 5>, 5>;

struct Equilibrium {
    double pi_bar = 0.0;      // equilibrium profit share
    double omega_bar = 0.0;   // wage share
    double lambda_bar = 0.0;  // employment rate
    double ell_bar = 0.0;     // private debt ratio
    double rho_bar = 0.0;     // target rate (= policy rate)
    double r_g_bar = 0.0;     // policy rate
    double b_bar = 0.0;       // government debt ratio
    Matrix5 jacobian{};
    std::vector<std::complex<double>> eigenvalues;
    Stability classification = Stability::Marginal;

    CoreState core_state() const {
        return {omega_bar, lambda_bar, ell_bar, rho_bar, r_g_bar};
    }
};

/// Solves the interior equilibrium for a given asymptotic policy rate.
/// The profit share comes from inverting the investment function at the
/// balanced accumulation rate nu*(alpha+beta+delta); the wage share and debt
/// ratio are mutually implicit through the inflation term and are resolved
/// by bracketed bisection on omega in (0,1). When several roots exist the
/// rightmost (highest wage share) is returned; it is the continuation of the
/// finite-debt equilibrium. Jacobian, eigenvalues and classification are
/// filled in via classify_stability.
Equilibrium solve_interior_equilibrium(const ModelParams& params, double r_g_bar);

/// Central finite-difference Jacobian of core_rhs at x with per-coordinate
/// step h_i = step_scale * (1 + |x_i|).
Matrix5 numerical_jacobian(const CoreState& x, const ModelParams& params,
                           double step_scale = 1e-6);

/// Fills jacobian, eigenvalues (sorted by real part, then imaginary part)
/// and the stability classification of an equilibrium. Structurally neutral
/// directions (eigenvalues with modulus below zero_tol: the frozen policy
/// coordinates under FixedRate, and the tangent of the one-parameter
/// equilibrium family under the active rule) are excluded from the
/// max-real-part classification. Requires the equilibrium residual under
/// core_rhs to be below 1e-8.
void classify_stability(Equilibrium& eq, const ModelParams& params,
                        double marginal_tol = 1e-7, double zero_tol = 1e-9);

/// Sup-norm of core_rhs at a point; the equilibrium residual.
double equilibrium_residual(const CoreState& x, const ModelParams& params);

}  // namespace nirp
