#include "nirp/trajectory_csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "nirp/errors.hpp"
#include <vector>

namespace nirp {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    return out;
}

}  // namespace

std::string trajectory_csv_string(const Trajectory& traj) {
    if (traj.samples.empty())
        throw std::invalid_argument("trajectory_csv: empty trajectory");
    std::string out(kTrajectoryHeader);
    out += '\n';
    const std::string term = to_string(traj.termination);
    for (const auto& s : traj.samples) {
        out += fmt(s.t);
        out += ',';
        out += fmt(s.core.wage_share);
        out += ',';
        out += fmt(s.core.employment);
        out += ',';
        out += fmt(s.core.private_debt_ratio);
        out += ',';
        out += fmt(s.core.target_rate);
        out += ',';
        out += fmt(s.core.policy_rate);
        out += ',';
        out += fmt(s.aux.gov_debt_ratio);
        out += ',';
        out += fmt(s.aux.price_level);
        out += ',';
        out += fmt(s.aux.real_output);
        out += ',';
        out += fmt(s.derived.profit_share);
        out += ',';
        out += fmt(s.derived.inflation);
        out += ',';
        out += fmt(s.derived.capital_growth);
        out += ',';
        out += term;
        out += '\n';
    }
    return out;
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << trajectory_csv_string(traj);
    if (!f) throw std::runtime_error("write failed: " + path);
}

Trajectory read_trajectory_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open: " + path);

    std::string line;
    if (!std::getline(f, line))
        throw ParseError(path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kTrajectoryHeader)
        throw ParseError(path + ": unexpected header '" + line + "'");

    Trajectory traj;
    std::size_t line_no = 1;
    while (std::getline(f, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split(line);
        if (fields.size() != 13)
            throw ParseError(path + ":" + std::to_string(line_no) +
                             ": expected 13 fields, got " +
                             std::to_string(fields.size()));
        auto num = [&](int i) {
            try {
                std::size_t pos = 0;
                const double v = std::stod(fields[static_cast<std::size_t>(i)], &pos);
                if (pos != fields[static_cast<std::size_t>(i)].size())
                    throw std::invalid_argument("trailing characters");
                return v;
            } catch (const std::exception&) {
                throw ParseError(
                    path + ":" + std::to_string(line_no) + ": field " +
                    std::to_string(i + 1) + " is not a number: '" +
                    fields[static_cast<std::size_t>(i)] + "'");
            }
        };
        Sample s;
        s.t = num(0);
        s.core.wage_share = num(1);
        s.core.employment = num(2);
        s.core.private_debt_ratio = num(3);
        s.core.target_rate = num(4);
        s.core.policy_rate = num(5);
        s.aux.gov_debt_ratio = num(6);
        s.aux.price_level = num(7);
        s.aux.real_output = num(8);
        s.derived.profit_share = num(9);
        s.derived.inflation = num(10);
        s.derived.capital_growth = num(11);
        traj.termination = termination_from_string(fields[12]);
        traj.samples.push_back(s);
    }
    if (traj.samples.empty())
        throw ParseError(path + ": no samples");
    return traj;
}

}  // namespace nirp
