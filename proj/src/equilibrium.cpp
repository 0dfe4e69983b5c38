#include "nirp/equilibrium.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace nirp {

namespace {

// Bisection to near machine precision; f(lo) and f(hi) must differ in sign.
template <typename F>
double bisect(F&& f, double lo, double hi, double flo) {
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-16 * std::max(1.0, std::abs(mid))) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

std::string to_string(Stability s) {
    switch (s) {
        case Stability::LocallyStable: return "LocallyStable";
        case Stability::Unstable: return "Unstable";
        case Stability::Marginal: return "Marginal";
    }
    return "Marginal";
}

double equilibrium_residual(const CoreState& x, const ModelParams& params) {
    const CoreState d = core_rhs(x, params);
    return std::max({std::abs(d.wage_share), std::abs(d.employment),
                     std::abs(d.private_debt_ratio), std::abs(d.target_rate),
                     std::abs(d.policy_rate)});
}

Equilibrium solve_interior_equilibrium(const ModelParams& params, double r_g_bar) {
    params.validate();

    const double alpha = params.productivity_growth;
    const double beta = params.labor_growth;
    const double balanced_accumulation =
        params.capital_output * (alpha + beta + params.depreciation);

    Equilibrium eq;
    eq.rho_bar = r_g_bar;
    eq.r_g_bar = r_g_bar;
    eq.pi_bar = investment_inverse(balanced_accumulation, params);

    const double kappa_bar = balanced_accumulation;  // kappa(pi_bar) by construction
    const double excess_investment = kappa_bar - eq.pi_bar;
    const double lending = params.lending_rate(r_g_bar);

    // ell as a function of omega through the inflation term.
    auto ell_of = [&](double omega) {
        return excess_investment / (alpha + beta + inflation(omega, params));
    };
    // Root of omega - (1 - pi - t - r*ell(omega)).
    auto f = [&](double omega) {
        return omega -
               (1.0 - eq.pi_bar - params.tax_share - lending * ell_of(omega));
    };

    // Scan from the right so that the bracket encloses the rightmost root.
    // The inflation denominator has a pole in omega; a grid interval whose
    // denominator changes sign holds the discontinuity, not a root, and is
    // skipped.
    auto denom_at = [&](double omega) {
        return alpha + beta + inflation(omega, params);
    };
    constexpr int kScan = 4096;
    double hi = 1.0 - 1e-9;
    double fhi = f(hi);
    double denom_hi = denom_at(hi);
    bool bracketed = false;
    double lo = 0.0, flo = 0.0;
    for (int i = 1; i <= kScan; ++i) {
        const double x = 1.0 - static_cast<double>(i) / kScan * (1.0 - 1e-9);
        const double denom_x = denom_at(x);
        const bool pole_interval =
            denom_x == 0.0 || (denom_x > 0.0) != (denom_hi > 0.0);
        const double fx = denom_x == 0.0 ? std::numeric_limits<double>::
                                               quiet_NaN()
                                         : f(x);
        if (!pole_interval && std::isfinite(fx) && std::isfinite(fhi) &&
            (fx > 0.0) != (fhi > 0.0)) {
            lo = x;
            flo = fx;
            bracketed = true;
            break;
        }
        hi = x;
        fhi = fx;
        denom_hi = denom_x;
    }
    if (!bracketed)
        throw EquilibriumError(EquilibriumError::Kind::NoInteriorEquilibrium,
                               "no root of the wage-share equation in (0,1)");

    eq.omega_bar = bisect(f, lo, hi, flo);

    const double infl_bar = inflation(eq.omega_bar, params);
    const double ell_denominator = alpha + beta + infl_bar;
    if (ell_denominator <= 0.0)
        throw EquilibriumError(
            EquilibriumError::Kind::DegenerateEquilibrium,
            "nonpositive growth-plus-inflation denominator at the root");
    eq.ell_bar = excess_investment / ell_denominator;
    eq.lambda_bar = phillips_inverse(
        alpha + (1.0 - params.money_illusion) * infl_bar, params);

    const double b_denominator = infl_bar + alpha + beta - r_g_bar;
    if (std::abs(b_denominator) < 1e-14)
        throw EquilibriumError(EquilibriumError::Kind::GovDebtUndefined,
                               "government debt ratio denominator vanishes");
    eq.b_bar = (params.gov_spend_share - params.tax_share) / b_denominator;

    classify_stability(eq, params);
    return eq;
}

Matrix5 numerical_jacobian(const CoreState& x, const ModelParams& params,
                           double step_scale) {
    std::array<double, 5> v = {x.wage_share, x.employment, x.private_debt_ratio,
                               x.target_rate, x.policy_rate};
    auto rhs_at = [&](const std::array<double, 5>& w) {
        const CoreState d =
            core_rhs({w[0], w[1], w[2], w[3], w[4]}, params);
        return std::array<double, 5>{d.wage_share, d.employment,
                                     d.private_debt_ratio, d.target_rate,
                                     d.policy_rate};
    };

    Matrix5 jac{};
    for (int j = 0; j < 5; ++j) {
        const double h = step_scale * (1.0 + std::abs(v[j]));
        auto vp = v, vm = v;
        vp[j] += h;
        vm[j] -= h;
        const auto fp = rhs_at(vp);
        const auto fm = rhs_at(vm);
        for (int i = 0; i < 5; ++i) jac[i][j] = (fp[i] - fm[i]) / (2.0 * h);
    }
    for (const auto& row : jac)
        for (double e : row)
            if (!std::isfinite(e))
                throw std::invalid_argument("numerical_jacobian: non-finite entry");
    return jac;
}

void classify_stability(Equilibrium& eq, const ModelParams& params,
                        double marginal_tol, double zero_tol) {
    if (equilibrium_residual(eq.core_state(), params) >= 1e-8)
        throw std::invalid_argument(
            "classify_stability: point is not an equilibrium (residual >= 1e-8)");

    eq.jacobian = numerical_jacobian(eq.core_state(), params);

    Eigen::Matrix<double, 5, 5> m;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) m(i, j) = eq.jacobian[i][j];
    const Eigen::EigenSolver<Eigen::Matrix<double, 5, 5>> solver(m);

    eq.eigenvalues.clear();
    for (int i = 0; i < 5; ++i)
        eq.eigenvalues.emplace_back(solver.eigenvalues()[i].real(),
                                    solver.eigenvalues()[i].imag());
    std::sort(eq.eigenvalues.begin(), eq.eigenvalues.end(),
              [](const auto& a, const auto& b) {
                  return a.real() != b.real() ? a.real() < b.real()
                                              : a.imag() < b.imag();
              });

    // The frozen policy coordinates (FixedRate) and the tangent of the
    // equilibrium family (active rule) contribute structural zero modes;
    // stability is decided by the remaining spectrum.
    double max_re = -std::numeric_limits<double>::infinity();
    bool any = false;
    for (const auto& ev : eq.eigenvalues) {
        if (std::abs(ev) < zero_tol) continue;
        max_re = std::max(max_re, ev.real());
        any = true;
    }
    if (!any || std::abs(max_re) < marginal_tol)
        eq.classification = Stability::Marginal;
    else
        eq.classification =
            max_re > 0.0 ? Stability::Unstable : Stability::LocallyStable;
}

}  // namespace nirp
