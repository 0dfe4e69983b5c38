#include "nirp/rates.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "nirp/errors.hpp"

namespace nirp {

namespace {

bool valid_iso_date(const std::string& s, int& yout, int& mout, int& dout) {
    int y = 0, m = 0, d = 0;
    char extra = 0;
    if (std::sscanf(s.c_str(), "%4d-%2d-%2d%c", &y, &m, &d, &extra) != 3)
        return false;
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    if (m < 1 || m > 12 || d < 1 || d > 31) return false;
    yout = y;
    mout = m;
    dout = d;
    return true;
}

std::optional<double> parse_rate_cell(const std::string& cell,
                                      const std::string& context) {
    if (cell.empty()) return std::nullopt;  // explicitly missing
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(cell, &pos);
    } catch (const std::exception&) {
        throw ParseError(context + ": not a number: '" + cell + "'");
    }
    if (pos != cell.size())
        throw ParseError(context + ": trailing characters: '" + cell + "'");
    if (!std::isfinite(v))
        throw ParseError(context + ": non-finite rate");
    return v / 100.0;  // percent to decimal
}

struct MeanStdev {
    double mean = 0.0;
    double stdev = 0.0;
};

MeanStdev mean_stdev(const std::vector<double>& v) {
    MeanStdev out;
    const auto n = static_cast<double>(v.size());
    for (double x : v) out.mean += x;
    out.mean /= n;
    if (v.size() > 1) {
        double ss = 0.0;
        for (double x : v) ss += (x - out.mean) * (x - out.mean);
        out.stdev = std::sqrt(ss / (n - 1.0));
    }
    return out;
}

}  // namespace

std::size_t RatesSeries::complete_count() const {
    std::size_t n = 0;
    for (const auto& o : observations)
        if (o.complete()) ++n;
    return n;
}

RatesSeries parse_rates_csv(const std::string& text, const std::string& origin) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line))
        throw ParseError(origin + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "date,policy_rate,deposit_rate,lending_rate")
        throw ParseError(
            origin + ": expected header 'date,policy_rate,deposit_rate,lending_rate'");

    RatesSeries series;
    std::size_t line_no = 1;
    long prev_key = -1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::string ctx = origin + ":" + std::to_string(line_no);

        std::vector<std::string> cells;
        std::string cell;
        std::stringstream ss(line);
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        while (cells.size() < 4) cells.emplace_back();
        if (cells.size() != 4)
            throw ParseError(ctx + ": expected 4 fields");

        RateObservation obs;
        int y = 0, m = 0, d = 0;
        if (!valid_iso_date(cells[0], y, m, d))
            throw ParseError(ctx + ": invalid ISO-8601 date '" +
                                     cells[0] + "'");
        const long key = y * 10000L + m * 100L + d;
        if (key <= prev_key)
            throw ParseError(ctx + ": dates must be strictly increasing");
        prev_key = key;
        obs.date = cells[0];
        obs.policy_rate = parse_rate_cell(cells[1], ctx + " policy_rate");
        obs.deposit_rate = parse_rate_cell(cells[2], ctx + " deposit_rate");
        obs.lending_rate = parse_rate_cell(cells[3], ctx + " lending_rate");
        series.observations.push_back(std::move(obs));
    }
    return series;
}

RatesSeries load_rates_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open: " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_rates_csv(buf.str(), path);
}

SpreadReport rates_check(const RatesSeries& series) {
    std::vector<double> lending_spread, deposit_spread;
    for (const auto& o : series.observations) {
        if (!o.complete()) continue;
        lending_spread.push_back(*o.lending_rate - *o.policy_rate);
        deposit_spread.push_back(*o.deposit_rate - *o.policy_rate);
    }
    if (lending_spread.size() < 24)
        throw std::invalid_argument(
            "rates_check: need at least 24 complete observations, have " +
            std::to_string(lending_spread.size()));

    SpreadReport r;
    r.observations_used = lending_spread.size();
    const auto ls = mean_stdev(lending_spread);
    const auto ds = mean_stdev(deposit_spread);
    r.lending_spread_mean = ls.mean;
    r.lending_spread_stdev = ls.stdev;
    r.deposit_spread_mean = ds.mean;
    r.deposit_spread_stdev = ds.stdev;
    std::size_t positive = 0;
    for (double s : lending_spread)
        if (s > 0.0) ++positive;
    r.lending_spread_positive_fraction =
        static_cast<double>(positive) / static_cast<double>(lending_spread.size());
    r.pass = r.lending_spread_mean > 0.0 &&
             std::abs(r.deposit_spread_mean) < r.lending_spread_mean;
    return r;
}

}  // namespace nirp
