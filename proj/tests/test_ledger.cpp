#include <doctest.h>

#include <cmath>
#include <random>

#include "nirp/ledger.hpp"
#include "nirp/scenario.hpp"

using namespace nirp;

namespace {

double check_named(const std::vector<IdentityCheck>& checks,
                   const std::string& name) {
    for (const auto& c : checks)
        if (c.name == name) return c.residual;
    FAIL("missing identity ", name);
    return 0.0;
}

CoreState random_core(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return {0.9 * u(rng), 0.98 * u(rng), 8.0 * u(rng) - 1.0,
            0.06 * u(rng) - 0.02, 0.06 * u(rng) - 0.02};
}

}  // namespace

TEST_CASE("bank flows follow the capital-ratio rule, scaled example") {
    // Pick output so the loan flow is exactly 100 currency units per year;
    // a tenth goes to bank capital and the rest to deposits.
    ModelParams p = default_params();
    const CoreState core{0.8, 0.9, 0.6, 0.0, 0.0};
    const double pi = profit_share(core, p);
    const double per_output = investment(pi, p) - pi;  // dLambda / pY
    AuxState aux{0.4, 1.0, 100.0 / per_output};
    const LedgerSnapshot s = build_snapshot(core, aux, p);
    CHECK(s.d_loans == doctest::Approx(100.0).epsilon(1e-12));
    CHECK(s.s_banks == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(s.d_deposits == doctest::Approx(90.0).epsilon(1e-12));
}

TEST_CASE("household flow-of-funds identity on random states") {
    std::mt19937 rng(23);
    for (const ModelParams& p : {default_params(), fixed_rate_params(0.03)}) {
        for (int i = 0; i < 300; ++i) {
            const CoreState core = random_core(rng);
            AuxState aux{2.0 * static_cast<double>(i % 5) - 1.0,
                         0.5 + static_cast<double>(i % 7) * 0.3,
                         20.0 + static_cast<double>(i % 11) * 30.0};
            const LedgerSnapshot s = build_snapshot(core, aux, p);
            const double scale =
                std::max({std::abs(s.s_households), std::abs(s.nominal_output),
                          std::abs(s.d_deposits + s.d_bills), 1.0});
            CHECK(std::abs(s.s_households - (s.d_deposits + s.d_bills)) /
                      scale <
                  1e-9);
        }
    }
}

TEST_CASE("financial balances sum to zero on random states") {
    std::mt19937 rng(29);
    for (int i = 0; i < 300; ++i) {
        const CoreState core = random_core(rng);
        AuxState aux{0.4, 1.0, 100.0};
        const LedgerSnapshot s = build_snapshot(core, aux, default_params());
        const double total = s.s_households + s.s_firms + s.s_firms_capital +
                             s.s_banks + s.s_public;
        CHECK(std::abs(total) / std::max(std::abs(s.nominal_output), 1.0) <
              1e-9);
    }
}

TEST_CASE("snapshot identities all hold at machine precision") {
    const Scenario fig4 = preset("fig4");
    const LedgerSnapshot s =
        build_snapshot(fig4.initial_core, fig4.initial_aux, fig4.params);
    for (const auto& c : audit_snapshot(s)) {
        INFO(c.name);
        CHECK(c.residual < 1e-12);
    }
}

TEST_CASE("corrupting the dividends cell is caught and attributed") {
    const Scenario fig4 = preset("fig4");
    LedgerSnapshot s =
        build_snapshot(fig4.initial_core, fig4.initial_aux, fig4.params);
    for (auto& row : s.transactions) {
        if (row.name != "dividends") continue;
        row.cells[static_cast<std::size_t>(Column::Banks)] -=
            1e-3 * s.nominal_output;
    }
    const auto checks = audit_snapshot(s);
    CHECK(check_named(checks, "tx_row_dividends") > 1e-6);
    CHECK(check_named(checks, "tx_row_wages") < 1e-12);
    CHECK(check_named(checks, "tx_row_consumption") < 1e-12);
}

TEST_CASE("audits of short preset runs pass") {
    for (const char* name : {"fig2", "fig3"}) {
        Scenario s = preset(name);
        s.settings.horizon = std::min(s.settings.horizon, 60.0);
        const Trajectory traj =
            integrate(s.initial_core, s.initial_aux, s.params, s.settings);
        const AuditReport report = audit_trajectory(traj, s.params);
        INFO(name, " worst identity ", report.worst_identity, " residual ",
             report.max_residual);
        CHECK(report.pass);
        CHECK(report.max_residual < 1e-8);
    }
}

TEST_CASE("net worth evolution matches financial balances") {
    // Finite differences of the integrated net worths against the trapezoid
    // of the balances; second-order consistent, so a fine step keeps the
    // residual per unit time below 1e-6 relative.
    // The early transient's flows have second derivatives of a few hundred
    // per year (the investment exponential reacts fast), so the quadrature
    // comparison needs a small step to sit inside its h^2 regime.
    Scenario s = preset("fig4");
    s.settings.horizon = 20.0;
    s.settings.max_step = 0.002;
    s.settings.rel_tol = 1e-11;
    s.settings.abs_tol = 1e-13;
    const Trajectory traj =
        integrate(s.initial_core, s.initial_aux, s.params, s.settings);

    struct Worths {
        double h, f, b, g, pk, infl;
        double sh, sf, sb, sg;
    };
    std::vector<Worths> w;
    for (const auto& smp : traj.samples) {
        const LedgerSnapshot snap =
            build_snapshot(smp.core, smp.aux, s.params, smp.t);
        w.push_back({snap.net_worth_households, snap.net_worth_firms,
                     snap.net_worth_banks, snap.net_worth_public,
                     snap.capital_value, smp.derived.inflation,
                     snap.s_households, snap.s_firms, snap.s_banks,
                     snap.s_public});
    }
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        const double dt = traj.samples[i + 1].t - traj.samples[i].t;
        auto close = [&](double dx, double flow_a, double flow_b,
                         double scale) {
            const double rate = dx / dt;
            const double flow = 0.5 * (flow_a + flow_b);
            CHECK(std::abs(rate - flow) / std::max(scale, 1.0) < 1e-6);
        };
        const double scale =
            std::max({std::abs(w[i].pk), std::abs(w[i].h), 1.0});
        close(w[i + 1].h - w[i].h, w[i].sh, w[i + 1].sh, scale);
        close(w[i + 1].b - w[i].b, w[i].sb, w[i + 1].sb, scale);
        close(w[i + 1].g - w[i].g, w[i].sg, w[i + 1].sg, scale);
        // firms accumulate the revaluation term p_dot K = inflation * pK
        close(w[i + 1].f - w[i].f, w[i].sf + w[i].infl * w[i].pk,
              w[i + 1].sf + w[i + 1].infl * w[i + 1].pk, scale);
    }
}

TEST_CASE("audit of an empty trajectory is rejected") {
    Trajectory empty;
    CHECK_THROWS_AS(audit_trajectory(empty, default_params()),
                    std::invalid_argument);
}
