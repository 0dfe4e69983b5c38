#include "nirp/ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nirp::ode {

namespace {

// Dormand-Prince 5(4) tableau. The fifth-order solution is propagated; the
// embedded fourth-order weights feed the error estimate. FSAL: the last stage
// of an accepted step is the first stage of the next.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;

constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b minus the embedded fourth-order weights
constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695,
                 e4 = b4 - 393.0 / 640, e5 = b5 - -92097.0 / 339200,
                 e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

bool all_finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(),
                       [](double x) { return std::isfinite(x); });
}

}  // namespace

DriveStats integrate_adaptive(const RhsFn& rhs, std::span<double> y, double t0,
                              double t_end, const AdaptiveOptions& opts,
                              const ValidFn& valid, const AcceptFn& on_accept) {
    const std::size_t n = y.size();
    if (t_end <= t0) throw std::invalid_argument("integrate_adaptive: t_end <= t0");
    if (!(opts.rel_tol > 0 && opts.abs_tol > 0))
        throw std::invalid_argument("integrate_adaptive: tolerances must be positive");
    if (!valid(t0, y))
        throw std::invalid_argument("integrate_adaptive: invalid initial state");

    DriveStats stats;
    stats.accumulated_error.assign(n, 0.0);

    std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);
    std::vector<double> ytmp(n), ynew(n), err(n);

    double t = t0;
    double h = std::min(opts.initial_step, std::min(opts.max_step, t_end - t0));
    bool have_k1 = false;

    auto stage = [&](double tt, std::span<const double> yy,
                     std::vector<double>& out) -> bool {
        if (!all_finite(yy) || !valid(tt, yy)) return false;
        rhs(tt, yy, out);
        ++stats.rhs_evals;
        return all_finite(out);
    };

    while (t < t_end) {
        h = std::min(h, t_end - t);
        const double floor = opts.min_step_floor * std::max(1.0, std::abs(t));
        if (h < floor) {
            stats.outcome = DriveOutcome::StepUnderflow;
            stats.final_time = t;
            return stats;
        }

        bool ok = have_k1 || stage(t, y, k1);
        if (ok) {
            have_k1 = true;
            for (std::size_t i = 0; i < n; ++i)
                ytmp[i] = y[i] + h * a21 * k1[i];
            ok = stage(t + c2 * h, ytmp, k2);
        }
        if (ok) {
            for (std::size_t i = 0; i < n; ++i)
                ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
            ok = stage(t + c3 * h, ytmp, k3);
        }
        if (ok) {
            for (std::size_t i = 0; i < n; ++i)
                ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
            ok = stage(t + c4 * h, ytmp, k4);
        }
        if (ok) {
            for (std::size_t i = 0; i < n; ++i)
                ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] +
                                      a54 * k4[i]);
            ok = stage(t + c5 * h, ytmp, k5);
        }
        if (ok) {
            for (std::size_t i = 0; i < n; ++i)
                ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                                      a64 * k4[i] + a65 * k5[i]);
            ok = stage(t + h, ytmp, k6);
        }
        if (ok) {
            for (std::size_t i = 0; i < n; ++i)
                ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] +
                                      b5 * k5[i] + b6 * k6[i]);
            ok = stage(t + h, ynew, k7);
        }

        if (!ok) {
            ++stats.rejected;
            h *= 0.5;
            continue;
        }

        double err_norm_sq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                          e6 * k6[i] + e7 * k7[i]);
            const double scale =
                opts.abs_tol +
                opts.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            const double r = err[i] / scale;
            err_norm_sq += r * r;
        }
        const double err_norm = std::sqrt(err_norm_sq / static_cast<double>(n));

        if (err_norm > 1.0) {
            ++stats.rejected;
            const double shrink =
                std::max(0.2, 0.9 * std::pow(err_norm, -0.2));
            h *= shrink;
            continue;
        }

        // accepted
        t += h;
        std::copy(ynew.begin(), ynew.end(), y.begin());
        std::swap(k1, k7);  // FSAL
        for (std::size_t i = 0; i < n; ++i)
            stats.accumulated_error[i] += std::abs(err[i]);
        ++stats.accepted;

        const double grow =
            err_norm == 0.0 ? 5.0
                            : std::clamp(0.9 * std::pow(err_norm, -0.2), 0.2, 5.0);
        h = std::min(h * grow, opts.max_step);

        if (!on_accept(t, y, err)) {
            stats.outcome = DriveOutcome::StoppedByObserver;
            stats.final_time = t;
            return stats;
        }
    }

    stats.outcome = DriveOutcome::ReachedEnd;
    stats.final_time = t;
    return stats;
}

void rk4_fixed(const RhsFn& rhs, std::span<double> y, double t0, double t_end,
               std::size_t n_steps) {
    if (n_steps == 0) throw std::invalid_argument("rk4_fixed: n_steps == 0");
    const std::size_t n = y.size();
    const double h = (t_end - t0) / static_cast<double>(n_steps);
    std::vector<double> k1(n), k2(n), k3(n), k4(n), ytmp(n);

    for (std::size_t step = 0; step < n_steps; ++step) {
        const double t = t0 + h * static_cast<double>(step);
        rhs(t, y, k1);
        for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + 0.5 * h * k1[i];
        rhs(t + 0.5 * h, ytmp, k2);
        for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + 0.5 * h * k2[i];
        rhs(t + 0.5 * h, ytmp, k3);
        for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * k3[i];
        rhs(t + h, ytmp, k4);
        for (std::size_t i = 0; i < n; ++i)
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
}

}  // namespace nirp::ode
