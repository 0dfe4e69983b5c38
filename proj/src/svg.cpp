#include "nirp/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace nirp {

namespace {

std::string num(double v, const char* spec = "%.2f") {
    char buf[40];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Series {
    std::string id;
    std::string label;
    std::string color;
    std::vector<double> values;
    bool right_axis = false;
};

struct Range {
    double lo = 0.0, hi = 1.0;
};

Range padded_range(const std::vector<const Series*>& series) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto* s : series)
        for (double v : s->values) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    if (!(lo <= hi)) {
        lo = 0.0;
        hi = 1.0;
    }
    double pad = 0.05 * (hi - lo);
    if (pad <= 0.0) pad = std::max(1e-9, std::abs(lo) * 0.1 + 1e-6);
    return {lo - pad, hi + pad};
}

std::vector<double> nice_ticks(double lo, double hi, int target = 5) {
    const double span = hi - lo;
    if (!(span > 0.0)) return {lo};
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (mag * m >= raw) {
            step = mag * m;
            break;
        }
    }
    std::vector<double> ticks;
    double v = std::ceil(lo / step) * step;
    for (; v <= hi + 0.5 * step; v += step) {
        if (std::abs(v) < 1e-12 * step) v = 0.0;
        ticks.push_back(v);
    }
    return ticks;
}

struct Panel {
    std::string title;
    std::vector<Series> series;
    bool zero_line = false;
    std::string zero_line_id;
    // label formatter for left-axis ticks (log panels relabel)
    std::function<std::string(double)> left_label;
};

void render_panel(std::string& out, const Panel& panel, double px, double py,
                  double pw, double ph, const std::vector<double>& t) {
    const double ml = 58, mr = panel.series.size() > 1 &&
                                       panel.series.back().right_axis
                                   ? 52
                                   : 14;
    const double mt = 30, mb = 34;
    const double x0 = px + ml, x1 = px + pw - mr;
    const double y0 = py + mt, y1 = py + ph - mb;

    const double t_lo = t.front(), t_hi = t.back();
    auto map_x = [&](double v) {
        return x0 + (v - t_lo) / std::max(t_hi - t_lo, 1e-12) * (x1 - x0);
    };

    std::vector<const Series*> left, right;
    for (const auto& s : panel.series)
        (s.right_axis ? right : left).push_back(&s);
    const Range lr = padded_range(left);
    const Range rr = right.empty() ? Range{} : padded_range(right);

    auto map_y = [&](double v, const Range& r) {
        return y1 - (v - r.lo) / std::max(r.hi - r.lo, 1e-300) * (y1 - y0);
    };

    out += "<g>\n";
    out += "<rect x=\"" + num(x0) + "\" y=\"" + num(y0) + "\" width=\"" +
           num(x1 - x0) + "\" height=\"" + num(y1 - y0) +
           "\" fill=\"none\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
    out += "<text x=\"" + num(px + pw / 2) + "\" y=\"" + num(py + 16) +
           "\" text-anchor=\"middle\" font-size=\"13\" fill=\"#000000\">" +
           xml_escape(panel.title) + "</text>\n";

    for (double tick : nice_ticks(t_lo, t_hi)) {
        const double x = map_x(tick);
        out += "<line x1=\"" + num(x) + "\" y1=\"" + num(y1) + "\" x2=\"" +
               num(x) + "\" y2=\"" + num(y1 + 4) +
               "\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
        out += "<text x=\"" + num(x) + "\" y=\"" + num(y1 + 16) +
               "\" text-anchor=\"middle\" font-size=\"10\" fill=\"#333333\">" +
               num(tick, "%g") + "</text>\n";
    }
    for (double tick : nice_ticks(lr.lo, lr.hi)) {
        const double y = map_y(tick, lr);
        out += "<line x1=\"" + num(x0 - 4) + "\" y1=\"" + num(y) + "\" x2=\"" +
               num(x0) + "\" y2=\"" + num(y) +
               "\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
        const std::string label =
            panel.left_label ? panel.left_label(tick) : num(tick, "%g");
        out += "<text x=\"" + num(x0 - 6) + "\" y=\"" + num(y + 3) +
               "\" text-anchor=\"end\" font-size=\"10\" fill=\"#333333\">" +
               label + "</text>\n";
    }
    if (!right.empty()) {
        for (double tick : nice_ticks(rr.lo, rr.hi)) {
            const double y = map_y(tick, rr);
            out += "<line x1=\"" + num(x1) + "\" y1=\"" + num(y) +
                   "\" x2=\"" + num(x1 + 4) + "\" y2=\"" + num(y) +
                   "\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
            out += "<text x=\"" + num(x1 + 6) + "\" y=\"" + num(y + 3) +
                   "\" text-anchor=\"start\" font-size=\"10\" fill=\"#333333\">" +
                   num(tick, "%g") + "</text>\n";
        }
    }

    if (panel.zero_line && lr.lo < 0.0 && lr.hi > 0.0) {
        const double y = map_y(0.0, lr);
        out += "<line id=\"" + panel.zero_line_id + "\" x1=\"" + num(x0) +
               "\" y1=\"" + num(y) + "\" x2=\"" + num(x1) + "\" y2=\"" +
               num(y) +
               "\" stroke=\"#888888\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>\n";
    }

    double legend_x = x0 + 6;
    for (const auto& s : panel.series) {
        const double ly = y0 + 12;
        out += "<line x1=\"" + num(legend_x) + "\" y1=\"" + num(ly - 4) +
               "\" x2=\"" + num(legend_x + 16) + "\" y2=\"" + num(ly - 4) +
               "\" stroke=\"" + s.color + "\" stroke-width=\"2\"/>\n";
        out += "<text x=\"" + num(legend_x + 20) + "\" y=\"" + num(ly) +
               "\" font-size=\"10\" fill=\"#333333\">" + xml_escape(s.label) +
               "</text>\n";
        legend_x += 26 + 7.0 * static_cast<double>(s.label.size());
    }

    for (const auto& s : panel.series) {
        const Range& r = s.right_axis ? rr : lr;
        out += "<polyline id=\"" + s.id +
               "\" fill=\"none\" stroke=\"" + s.color +
               "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i) out += ' ';
            out += num(map_x(t[i])) + "," + num(map_y(s.values[i], r));
        }
        out += "\"/>\n";
    }
    out += "</g>\n";
}

}  // namespace

std::string render_svg(const Trajectory& traj, const std::string& title) {
    if (traj.samples.empty())
        throw std::invalid_argument("render_svg: empty trajectory");

    const std::size_t n = traj.samples.size();
    std::vector<double> t(n);
    auto col = [&](auto getter) {
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = getter(traj.samples[i]);
        return v;
    };
    for (std::size_t i = 0; i < n; ++i) t[i] = traj.samples[i].t;

    Panel shares{"wage share and employment",
                 {{"series-omega", "omega", "#1f77b4",
                   col([](const Sample& s) { return s.core.wage_share; })},
                  {"series-lambda", "lambda", "#d62728",
                   col([](const Sample& s) { return s.core.employment; })}},
                 false,
                 "",
                 nullptr};
    Panel debt{"debt ratios",
               {{"series-ell", "ell (private)", "#1f77b4",
                 col([](const Sample& s) { return s.core.private_debt_ratio; })},
                {"series-b", "b (government)", "#2ca02c",
                 col([](const Sample& s) { return s.aux.gov_debt_ratio; })}},
               false,
               "",
               nullptr};
    Panel rates{"policy and target rates",
                {{"series-r_g", "r_g", "#1f77b4",
                  col([](const Sample& s) { return s.core.policy_rate; })},
                 {"series-rho", "rho", "#ff7f0e",
                  col([](const Sample& s) { return s.core.target_rate; })}},
                true,
                "zero-rate",
                nullptr};
    Panel output{"output (log scale) and inflation",
                 {{"series-logY", "Y", "#1f77b4",
                   col([](const Sample& s) {
                       return std::log10(std::max(s.aux.real_output, 1e-300));
                   })},
                  {"series-inflation", "inflation", "#d62728",
                   col([](const Sample& s) { return s.derived.inflation; }),
                   true}},
                 false,
                 "",
                 [](double v) { return num(std::pow(10.0, v), "%.3g"); }};

    const double W = 1200, H = 840, panel_w = W / 2, panel_h = (H - 40) / 2;
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(W, "%g") +
           "\" height=\"" + num(H, "%g") + "\" viewBox=\"0 0 " + num(W, "%g") +
           " " + num(H, "%g") + "\" font-family=\"sans-serif\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    out += "<text x=\"" + num(W / 2) +
           "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\" "
           "fill=\"#000000\">" +
           xml_escape(title) + "</text>\n";

    render_panel(out, shares, 0, 40, panel_w, panel_h, t);
    render_panel(out, debt, panel_w, 40, panel_w, panel_h, t);
    render_panel(out, rates, 0, 40 + panel_h, panel_w, panel_h, t);
    render_panel(out, output, panel_w, 40 + panel_h, panel_w, panel_h, t);

    out += "</svg>\n";
    return out;
}

void write_svg(const Trajectory& traj, const std::string& title,
               const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << render_svg(traj, title);
    if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace nirp
