#pragma once

#include <array>
#include <string>
#include <vector>

#include "nirp/integrate.hpp"
#include "nirp/model.hpp"

namespace nirp {

/// Accounting-matrix columns. Firms split into a current and a capital
/// account in the transactions block; the balance-sheet and flow-of-funds
/// blocks use the merged firm column (FirmsCurrent slot).
enum class Column : int {
    Households = 0,
    FirmsCurrent = 1,
    FirmsCapital = 2,
    Banks = 3,
    Public = 4,
};

struct MatrixRow {
    std::string name;
    std::array<double, 5> cells{};  // indexed by Column
    double expected_sum = 0.0;      // 0 for pure transfers

    double sum() const {
        double s = 0.0;
        for (double c : cells) s += c;
        return s;
    }
};

/// The full accounting matrix at an instant: sector balance sheets,
/// transaction flows, financial balances and the flow of funds, all
/// reconstructed algebraically from the (core, aux) state.
struct LedgerSnapshot {
    double t = 0.0;
    double price_level = 0.0;
    double real_output = 0.0;
    double nominal_output = 0.0;  // pY
    double capital_ratio = 0.0;   // k_r, carried for the bank-rule checks

    // Stocks
    double capital_value = 0.0;  // pK
    double loans = 0.0;          // Lambda
    double deposits = 0.0;       // Delta = (1 - k_r) Lambda
    double bills = 0.0;          // B

    // Net worths
    double net_worth_households = 0.0;
    double net_worth_firms = 0.0;
    double net_worth_banks = 0.0;
    double net_worth_public = 0.0;

    // Flow levels
    double consumption = 0.0;        // pC, residual closure
    double gov_spending = 0.0;       // pG
    double investment_flow = 0.0;    // pI
    double wages = 0.0;              // W
    double taxes = 0.0;              // pT
    double depreciation_flow = 0.0;  // p delta K
    double interest_deposits = 0.0;  // r_d Delta
    double interest_loans = 0.0;     // r Lambda
    double interest_bills = 0.0;     // r_g B
    double dividends = 0.0;          // Pi_b

    // Financial balances
    double s_households = 0.0;
    double s_firms = 0.0;          // S_f, current account
    double s_firms_capital = 0.0;  // -p(I - delta K)
    double s_banks = 0.0;
    double s_public = 0.0;

    // Flow of funds
    double d_loans = 0.0;         // dLambda/dt
    double d_deposits = 0.0;      // dDelta/dt
    double d_bills = 0.0;         // dB/dt
    double net_investment = 0.0;  // p(I - delta K)

    /// The three blocks of the matrix with sector-by-sector entries; the
    /// audit recomputes every sum from these cells, so a corrupted cell is
    /// caught and attributed to its row.
    std::vector<MatrixRow> balance_sheet;
    std::vector<MatrixRow> transactions;
    std::vector<MatrixRow> flow_of_funds;
};

LedgerSnapshot build_snapshot(const CoreState& core, const AuxState& aux,
                              const ModelParams& params, double t = 0.0);

struct IdentityCheck {
    std::string name;
    double residual = 0.0;  // relative to the identity's magnitude
    double t = 0.0;         // time of the worst violation
};

struct AuditReport {
    bool pass = false;
    double threshold = 0.0;
    double max_residual = 0.0;
    std::string worst_identity;
    std::vector<IdentityCheck> identities;
};

/// Checks every row and column identity of one snapshot. Residuals are
/// relative to the largest magnitude participating in each identity.
std::vector<IdentityCheck> audit_snapshot(const LedgerSnapshot& snap);

/// Audits a snapshot at every trajectory sample and reports the worst
/// residual per identity. PASS iff all are below the threshold.
AuditReport audit_trajectory(const Trajectory& traj, const ModelParams& params,
                             double threshold = 1e-8);

}  // namespace nirp
