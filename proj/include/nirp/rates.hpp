#pragma once

#include <optional>
#include <string>
#include <vector>

namespace nirp {

/// One dated observation of the three market rates, stored as decimal
/// fractions per year (the CSV carries percent). Missing cells stay unset;
/// nothing is interpolated.
struct RateObservation {
    std::string date;  // ISO-8601 calendar date
    std::optional<double> policy_rate;
    std::optional<double> deposit_rate;
    std::optional<double> lending_rate;

    bool complete() const {
        return policy_rate && deposit_rate && lending_rate;
    }
};

struct RatesSeries {
    std::vector<RateObservation> observations;

    std::size_t complete_count() const;
};

/// Parses a CSV with header "date,policy_rate,deposit_rate,lending_rate".
/// Dates must be ISO-8601 and strictly increasing; rate cells are percent
/// per year and may be empty. Raises std::runtime_error with line context
/// on malformed input.
RatesSeries load_rates_csv(const std::string& path);
RatesSeries parse_rates_csv(const std::string& text, const std::string& origin);

struct SpreadReport {
    std::size_t observations_used = 0;
    double lending_spread_mean = 0.0;    // lending - policy, decimal/year
    double lending_spread_stdev = 0.0;   // sample standard deviation
    double deposit_spread_mean = 0.0;    // deposit - policy
    double deposit_spread_stdev = 0.0;
    double lending_spread_positive_fraction = 0.0;
    bool pass = false;
};

/// Stylized-fact check behind the constant-spread assumption: the lending
/// spread should be positive on average and dominate the deposit-policy
/// gap. Requires at least 24 complete observations; throws
/// std::runtime_error otherwise.
SpreadReport rates_check(const RatesSeries& series);

}  // namespace nirp
