#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "nirp/model.hpp"

using namespace nirp;

namespace {

const ModelParams kBase = default_params();

// Independent bisection inverse used as an oracle for the closed forms.
template <typename F>
double bisect_inverse(F&& f, double target, double lo, double hi) {
    double flo = f(lo) - target;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid) - target;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("phillips curve values") {
    CHECK(phillips(0.0, kBase) == doctest::Approx(-0.0400).epsilon(1e-12));
    CHECK(phillips(0.9, kBase) == doctest::Approx(-0.0301).epsilon(1e-12));
    CHECK_THROWS_AS(phillips(1.0, kBase), std::domain_error);
    CHECK_THROWS_AS(phillips(1.5, kBase), std::domain_error);
    // grows without bound approaching full employment
    CHECK(phillips(0.999999, kBase) > 1e4);
}

TEST_CASE("phillips inverse") {
    CHECK(phillips_inverse(-0.0301, kBase) == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(phillips_inverse(kBase.phillips_const + kBase.phillips_coef, kBase) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(phillips_inverse(kBase.phillips_const, kBase),
                    std::domain_error);
    CHECK_THROWS_AS(phillips_inverse(kBase.phillips_const - 0.01, kBase),
                    std::domain_error);
}

TEST_CASE("investment function values") {
    CHECK(investment(0.25, kBase) == doctest::Approx(0.9935).epsilon(1e-12));
    // limit toward the floor
    CHECK(investment(-100.0, kBase) ==
          doctest::Approx(kBase.inv_const).epsilon(1e-12));
    // inverse of the balanced accumulation rate, cross-checked by bisection
    const double pi_star = bisect_inverse(
        [&](double pi) { return investment(pi, kBase); }, 0.225, -1.0, 1.0);
    CHECK(pi_star == doctest::Approx(0.176839).epsilon(1e-4));
    CHECK(investment(0.176839, kBase) == doctest::Approx(0.225).epsilon(1e-4));
}

TEST_CASE("investment inverse") {
    CHECK(investment_inverse(0.225, kBase) ==
          doctest::Approx(0.176839).epsilon(1e-5));
    CHECK(investment_inverse(kBase.inv_const + std::exp(kBase.inv_shift), kBase) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(investment_inverse(0.9935, kBase) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK_THROWS_AS(investment_inverse(kBase.inv_const, kBase), std::domain_error);
    // closed form agrees with the bisection oracle to tight tolerance
    const double oracle = bisect_inverse(
        [&](double pi) { return investment(pi, kBase); }, 0.225, -1.0, 1.0);
    CHECK(std::abs(investment_inverse(0.225, kBase) - oracle) < 1e-9);
}

TEST_CASE("inverse roundtrips within 1e-10 relative") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const double lambda = u(rng) * 0.999;
        const double y = phillips(lambda, kBase);
        const double back = phillips_inverse(y, kBase);
        CHECK(std::abs(back - lambda) <= 1e-10 * std::max(1.0, std::abs(lambda)));

        const double pi = -0.5 + 1.0 * u(rng);
        const double k = investment(pi, kBase);
        const double pi_back = investment_inverse(k, kBase);
        CHECK(std::abs(pi_back - pi) <= 1e-10 * std::max(1.0, std::abs(pi)));
    }
}

TEST_CASE("phillips and investment are strictly increasing") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        double a = u(rng) * 0.9999, b = u(rng) * 0.9999;
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        CHECK(phillips(a, kBase) < phillips(b, kBase));

        // away from the floor, where the exponential is not absorbed by
        // the constant term in double precision
        double pa = -1.2 + 3.2 * u(rng), pb = -1.2 + 3.2 * u(rng);
        if (std::abs(pa - pb) < 1e-3) continue;
        if (pa > pb) std::swap(pa, pb);
        CHECK(investment(pa, kBase) < investment(pb, kBase));
    }
}

TEST_CASE("inflation values") {
    CHECK(inflation(1.0 / kBase.markup, kBase) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(inflation(0.8, kBase) == doctest::Approx(0.0140).epsilon(1e-12));
    CHECK(inflation(0.0, kBase) == doctest::Approx(-0.35).epsilon(1e-12));
}

TEST_CASE("profit share in both policy modes") {
    ModelParams fixed = fixed_rate_params(0.03);
    CHECK(profit_share({0.8, 0.9, 0.6, 0.0, 0.0}, fixed) ==
          doctest::Approx(0.182).epsilon(1e-12));
    CHECK(profit_share({1.0, 0.9, 0.0, 0.0, 0.0}, fixed) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(profit_share({0.8, 0.9, 6.0, 0.0, 0.0}, fixed) ==
          doctest::Approx(0.02).epsilon(1e-12));

    // active rule uses policy rate plus spread
    ModelParams active = default_params();
    const CoreState s{0.8, 0.9, 0.6, 0.0, 0.01};
    CHECK(profit_share(s, active) ==
          doctest::Approx(1.0 - 0.8 - 0.0 - (0.01 + 0.03) * 0.6).epsilon(1e-12));
}

TEST_CASE("profit share identity holds exactly") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        CoreState s{u(rng), u(rng) * 0.99, 10.0 * u(rng) - 2.0,
                    0.05 * u(rng) - 0.02, 0.05 * u(rng) - 0.02};
        for (const ModelParams& p :
             {default_params(), fixed_rate_params(0.03)}) {
            const double r = p.lending_rate(s.policy_rate);
            const double lhs = profit_share(s, p) + s.wage_share + p.tax_share +
                               r * s.private_debt_ratio;
            CHECK(lhs == doctest::Approx(1.0).epsilon(1e-14));
        }
    }
}

TEST_CASE("core rhs at the no-policy initial point") {
    // omega_dot = 0.8 * (Phi(0.9) - alpha - 0.2 * i(0.8)) = -0.04632
    ModelParams fixed = fixed_rate_params(0.03);
    const CoreState s{0.8, 0.9, 0.6, 0.0, 0.0};
    const CoreState d = core_rhs(s, fixed);
    CHECK(d.wage_share == doctest::Approx(-0.04632).epsilon(1e-12));
    CHECK(d.target_rate == 0.0);
    CHECK(d.policy_rate == 0.0);
}

TEST_CASE("wage share derivative vanishes when the bracket does") {
    ModelParams p = default_params();
    const double lambda = 0.93;
    // solve i(omega) = (Phi(lambda) - alpha) / (1 - gamma) for omega
    const double target_inflation =
        (phillips(lambda, p) - p.productivity_growth) / (1.0 - p.money_illusion);
    const double omega =
        (target_inflation / p.inflation_relax + 1.0) / p.markup;
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        CoreState s{omega, lambda, 8.0 * u(rng), 0.04 * u(rng) - 0.02,
                    0.04 * u(rng) - 0.02};
        CHECK(std::abs(core_rhs(s, p).wage_share) < 1e-14);
    }
}

TEST_CASE("axes are invariant sets") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const ModelParams& p : {default_params(), fixed_rate_params(0.03)}) {
        for (int i = 0; i < 100; ++i) {
            CoreState on_omega_axis{0.0, u(rng) * 0.99, 3.0 * u(rng),
                                    0.02 * u(rng), 0.02 * u(rng)};
            CHECK(core_rhs(on_omega_axis, p).wage_share == 0.0);
            CoreState on_lambda_axis{u(rng), 0.0, 3.0 * u(rng), 0.02 * u(rng),
                                     0.02 * u(rng)};
            CHECK(core_rhs(on_lambda_axis, p).employment == 0.0);
        }
    }
}

TEST_CASE("reduction to the three-dimensional model without policy") {
    // With eta_r = eta_g = 0 and a fixed lending rate, the (omega, lambda,
    // ell) block must match an independently coded Keen-with-inflation rhs
    // and the policy coordinates must stay frozen.
    ModelParams p = fixed_rate_params(0.03);
    const double r = 0.03;
    auto keen3 = [&](double w, double l, double d) {
        const double pi = 1.0 - w - r * d;
        const double kappa = p.inv_const + std::exp(p.inv_shift + p.inv_slope * pi);
        const double infl = p.inflation_relax * (p.markup * w - 1.0);
        const double growth = kappa / p.capital_output - p.depreciation;
        const double phi =
            p.phillips_const + p.phillips_coef / ((1.0 - l) * (1.0 - l));
        return std::array<double, 3>{
            w * (phi - p.productivity_growth - (1.0 - p.money_illusion) * infl),
            l * (growth - p.productivity_growth - p.labor_growth),
            d * (r - growth - infl) + w + kappa - 1.0};
    };
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        CoreState s{0.9 * u(rng), 0.98 * u(rng), 8.0 * u(rng), u(rng) - 0.5,
                    u(rng) - 0.5};
        const CoreState d = core_rhs(s, p);
        const auto expect =
            keen3(s.wage_share, s.employment, s.private_debt_ratio);
        CHECK(d.wage_share == doctest::Approx(expect[0]).epsilon(1e-14));
        CHECK(d.employment == doctest::Approx(expect[1]).epsilon(1e-14));
        CHECK(d.private_debt_ratio == doctest::Approx(expect[2]).epsilon(1e-14));
        CHECK(d.target_rate == 0.0);
        CHECK(d.policy_rate == 0.0);
    }
}

TEST_CASE("core rhs rejects singular or non-finite states") {
    CHECK_THROWS_AS(core_rhs({0.8, 1.0, 0.6, 0.0, 0.0}, kBase),
                    std::domain_error);
    CHECK_THROWS_AS(
        core_rhs({std::nan(""), 0.9, 0.6, 0.0, 0.0}, kBase),
        std::invalid_argument);
}

TEST_CASE("aux rhs special cases") {
    ModelParams p = default_params();
    p.gov_spend_share = 0.15;
    p.tax_share = 0.15;
    const CoreState core{0.8, 0.9, 0.6, 0.0, 0.0};
    SUBCASE("g = t and b = 0 freezes the debt ratio") {
        const AuxState aux{0.0, 1.0, 100.0};
        CHECK(aux_rhs(core, aux, p).gov_debt_ratio == doctest::Approx(0.0));
    }
    SUBCASE("price level is stationary at the markup wage share") {
        const CoreState at_markup{1.0 / p.markup, 0.9, 0.6, 0.0, 0.0};
        const AuxState aux{0.4, 1.0, 100.0};
        CHECK(aux_rhs(at_markup, aux, p).price_level ==
              doctest::Approx(0.0).epsilon(1e-14));
    }
    SUBCASE("positivity preconditions enforced") {
        CHECK_THROWS_AS(aux_rhs(core, {0.0, -1.0, 100.0}, p),
                        std::invalid_argument);
        CHECK_THROWS_AS(aux_rhs(core, {0.0, 1.0, 0.0}, p),
                        std::invalid_argument);
    }
}

TEST_CASE("derived observables") {
    ModelParams p = default_params();
    const CoreState core{0.8, 0.9, 0.6, 0.01, 0.005};
    const AuxState aux{0.4, 1.0, 100.0};
    const Derived d = derive(core, aux, p);
    CHECK(d.lending_rate - d.deposit_rate ==
          doctest::Approx(p.loan_spread).epsilon(1e-14));
    CHECK(d.profit_share + core.wage_share + p.tax_share +
              d.lending_rate * core.private_debt_ratio ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(d.inflation == doctest::Approx(inflation(0.8, p)));
}

TEST_CASE("reconstructed levels tie ratios back to nominal quantities") {
    ModelParams p = default_params();
    const CoreState core0{0.8, 0.9, 0.6, 0.0, 0.0};
    const AuxState aux0{0.4, 1.0, 100.0};
    const ScaleAnchors anchors = anchors_for(core0, aux0);
    CHECK(anchors.labor_force0 == doctest::Approx(100.0 / 0.9));
    const Levels lv = reconstruct_levels(core0, aux0, p, 0.0, anchors);
    CHECK(lv.capital == doctest::Approx(300.0));
    CHECK(lv.loans == doctest::Approx(60.0));
    CHECK(lv.bills == doctest::Approx(40.0));
    CHECK(lv.deposits == doctest::Approx(54.0));
    CHECK(lv.nominal_wage == doctest::Approx(0.8));
}
