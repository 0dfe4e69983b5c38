#include "nirp/ledger.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace nirp {

namespace {

constexpr auto HH = static_cast<int>(Column::Households);
constexpr auto FC = static_cast<int>(Column::FirmsCurrent);
constexpr auto FK = static_cast<int>(Column::FirmsCapital);
constexpr auto BK = static_cast<int>(Column::Banks);
constexpr auto PB = static_cast<int>(Column::Public);

MatrixRow row(std::string name,
              std::initializer_list<std::pair<int, double>> cells,
              double expected = 0.0) {
    MatrixRow r;
    r.name = std::move(name);
    r.expected_sum = expected;
    for (auto [col, v] : cells) r.cells[static_cast<std::size_t>(col)] = v;
    return r;
}

std::array<double, 5> column_sums(const std::vector<MatrixRow>& rows) {
    std::array<double, 5> s{};
    for (const auto& r : rows)
        for (std::size_t c = 0; c < 5; ++c) s[c] += r.cells[c];
    return s;
}

double row_scale(const MatrixRow& r) {
    double scale = std::abs(r.expected_sum);
    for (double c : r.cells) scale = std::max(scale, std::abs(c));
    return scale > 0.0 ? scale : 1.0;
}

}  // namespace

LedgerSnapshot build_snapshot(const CoreState& core, const AuxState& aux,
                              const ModelParams& params, double t) {
    if (!(aux.price_level > 0.0 && aux.real_output > 0.0))
        throw std::invalid_argument(
            "build_snapshot: price level and output must be positive");

    const double pY = aux.price_level * aux.real_output;
    const double pi = profit_share(core, params);
    const double kappa = investment(pi, params);
    const double r = params.lending_rate(core.policy_rate);
    const double r_d = core.policy_rate;
    const double r_g = core.policy_rate;
    const double k_r = params.capital_ratio_banks;

    LedgerSnapshot s;
    s.t = t;
    s.price_level = aux.price_level;
    s.real_output = aux.real_output;
    s.nominal_output = pY;
    s.capital_ratio = k_r;

    s.capital_value = aux.price_level * params.capital_output * aux.real_output;
    s.loans = core.private_debt_ratio * pY;
    // Delta0 = (1-k_r) Lambda0 together with dDelta = (1-k_r) dLambda
    // integrates to this proportion at every instant.
    s.deposits = (1.0 - k_r) * s.loans;
    s.bills = aux.gov_debt_ratio * pY;

    s.net_worth_households = s.deposits + s.bills;
    s.net_worth_firms = s.capital_value - s.loans;
    s.net_worth_banks = s.loans - s.deposits;
    s.net_worth_public = -s.bills;

    s.gov_spending = params.gov_spend_share * pY;
    s.taxes = params.tax_share * pY;
    s.investment_flow = kappa * pY;
    s.consumption = pY - s.investment_flow - s.gov_spending;  // residual closure
    s.wages = core.wage_share * pY;
    s.depreciation_flow = aux.price_level * params.depreciation *
                          params.capital_output * aux.real_output;
    s.interest_deposits = r_d * s.deposits;
    s.interest_loans = r * s.loans;
    s.interest_bills = r_g * s.bills;

    // dLambda = pI - Pi_p with pre-depreciation profits Pi_p = pi * pY.
    s.d_loans = s.investment_flow - pi * pY;
    s.d_deposits = (1.0 - k_r) * s.d_loans;
    s.d_bills = s.gov_spending - s.taxes + s.interest_bills;
    s.net_investment = s.investment_flow - s.depreciation_flow;

    s.s_banks = k_r * s.d_loans;
    s.dividends = s.interest_loans - s.interest_deposits - s.s_banks;
    s.s_public = s.taxes - s.gov_spending - s.interest_bills;
    s.s_households = s.wages + s.interest_deposits + s.interest_bills +
                     s.dividends - s.consumption;
    s.s_firms = pY - s.wages - s.taxes - s.interest_loans - s.depreciation_flow;
    s.s_firms_capital = -s.net_investment;

    s.balance_sheet = {
        row("capital_stock", {{FC, s.capital_value}}, s.capital_value),
        row("deposits", {{HH, s.deposits}, {BK, -s.deposits}}),
        row("loans", {{FC, -s.loans}, {BK, s.loans}}),
        row("bills", {{HH, s.bills}, {PB, -s.bills}}),
    };
    s.transactions = {
        row("consumption", {{HH, -s.consumption}, {FC, s.consumption}}),
        row("gov_spending", {{FC, s.gov_spending}, {PB, -s.gov_spending}}),
        row("investment", {{FC, s.investment_flow}, {FK, -s.investment_flow}}),
        row("wages", {{HH, s.wages}, {FC, -s.wages}}),
        row("taxes", {{FC, -s.taxes}, {PB, s.taxes}}),
        row("depreciation",
            {{FC, -s.depreciation_flow}, {FK, s.depreciation_flow}}),
        row("interest_deposits",
            {{HH, s.interest_deposits}, {BK, -s.interest_deposits}}),
        row("interest_loans", {{FC, -s.interest_loans}, {BK, s.interest_loans}}),
        row("interest_bills", {{HH, s.interest_bills}, {PB, -s.interest_bills}}),
        row("dividends", {{HH, s.dividends}, {BK, -s.dividends}}),
    };
    s.flow_of_funds = {
        row("change_capital", {{FC, s.net_investment}}, s.net_investment),
        row("change_deposits", {{HH, s.d_deposits}, {BK, -s.d_deposits}}),
        row("change_loans", {{FC, -s.d_loans}, {BK, s.d_loans}}),
        row("change_bills", {{HH, s.d_bills}, {PB, -s.d_bills}}),
    };
    return s;
}

std::vector<IdentityCheck> audit_snapshot(const LedgerSnapshot& s) {
    std::vector<IdentityCheck> checks;
    auto add = [&](const std::string& name, double actual, double expected,
                   double scale) {
        checks.push_back({name, std::abs(actual - expected) /
                                    std::max(std::abs(scale), 1e-300),
                          s.t});
    };

    const double flow_scale =
        std::max({std::abs(s.nominal_output), std::abs(s.interest_loans),
                  std::abs(s.consumption), std::abs(s.d_loans), 1.0});
    const double stock_scale =
        std::max({std::abs(s.capital_value), std::abs(s.loans),
                  std::abs(s.bills), 1.0});

    for (const auto& r : s.balance_sheet)
        add("sheet_row_" + r.name, r.sum(), r.expected_sum, row_scale(r));
    for (const auto& r : s.transactions)
        add("tx_row_" + r.name, r.sum(), r.expected_sum, row_scale(r));
    for (const auto& r : s.flow_of_funds)
        add("funds_row_" + r.name, r.sum(), r.expected_sum, row_scale(r));

    // Balance-sheet columns reproduce the stated net worths; the grand
    // total is the value of the capital stock.
    const auto sheet = column_sums(s.balance_sheet);
    add("net_worth_households", sheet[HH], s.net_worth_households, stock_scale);
    add("net_worth_firms", sheet[FC] + sheet[FK], s.net_worth_firms, stock_scale);
    add("net_worth_banks", sheet[BK], s.net_worth_banks, stock_scale);
    add("net_worth_public", sheet[PB], s.net_worth_public, stock_scale);
    add("net_worth_total",
        s.net_worth_households + s.net_worth_firms + s.net_worth_banks +
            s.net_worth_public,
        s.capital_value, stock_scale);

    // Transaction columns reproduce the financial balances, which sum to
    // zero against firms' net capital accumulation.
    const auto tx = column_sums(s.transactions);
    add("balance_households", tx[HH], s.s_households, flow_scale);
    add("balance_firms_current", tx[FC], s.s_firms, flow_scale);
    add("balance_firms_capital", tx[FK], s.s_firms_capital, flow_scale);
    add("balance_banks", tx[BK], s.s_banks, flow_scale);
    add("balance_public", tx[PB], s.s_public, flow_scale);
    add("financial_balances_sum",
        s.s_households + s.s_firms + s.s_firms_capital + s.s_banks + s.s_public,
        0.0, flow_scale);

    // Flow-of-funds columns close against the financial balances.
    const auto ff = column_sums(s.flow_of_funds);
    add("funds_households", ff[HH], s.s_households, flow_scale);
    add("funds_firms", ff[FC] + ff[FK], s.s_firms, flow_scale);
    add("funds_banks", ff[BK], s.s_banks, flow_scale);
    add("funds_public", ff[PB], s.s_public, flow_scale);

    // Bank behaviour: regulatory capital proportional to loans, savings and
    // deposit flows in the regulatory proportion.
    add("regulatory_capital", s.net_worth_banks, s.capital_ratio * s.loans,
        stock_scale);
    add("bank_saving_rule", s.s_banks, s.capital_ratio * s.d_loans, flow_scale);
    add("deposit_flow_rule", s.d_deposits,
        (1.0 - s.capital_ratio) * s.d_loans, flow_scale);

    // Household flow-of-funds identity.
    add("household_funds_identity", s.s_households, s.d_deposits + s.d_bills,
        flow_scale);

    return checks;
}

AuditReport audit_trajectory(const Trajectory& traj, const ModelParams& params,
                             double threshold) {
    if (traj.samples.empty())
        throw std::invalid_argument("audit_trajectory: empty trajectory");

    std::map<std::string, IdentityCheck> worst;
    for (const auto& sample : traj.samples) {
        const LedgerSnapshot snap =
            build_snapshot(sample.core, sample.aux, params, sample.t);
        for (const auto& check : audit_snapshot(snap)) {
            auto [it, inserted] = worst.try_emplace(check.name, check);
            if (!inserted && check.residual > it->second.residual)
                it->second = check;
        }
    }

    AuditReport report;
    report.threshold = threshold;
    for (auto& [name, check] : worst) {
        report.identities.push_back(check);
        if (check.residual > report.max_residual) {
            report.max_residual = check.residual;
            report.worst_identity = name;
        }
    }
    report.pass = report.max_residual < threshold;
    return report;
}

}  // namespace nirp
