#include "nirp/integrate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace nirp {

namespace {

constexpr std::size_t kDim = 8;

void pack(const CoreState& c, const AuxState& a, std::span<double> y) {
    y[0] = c.wage_share;
    y[1] = c.employment;
    y[2] = c.private_debt_ratio;
    y[3] = c.target_rate;
    y[4] = c.policy_rate;
    y[5] = a.gov_debt_ratio;
    y[6] = a.price_level;
    y[7] = a.real_output;
}

CoreState unpack_core(std::span<const double> y) {
    return {y[0], y[1], y[2], y[3], y[4]};
}

AuxState unpack_aux(std::span<const double> y) { return {y[5], y[6], y[7]}; }

ode::RhsFn joint_rhs(const ModelParams& params) {
    return [&params](double /*t*/, std::span<const double> y,
                     std::span<double> dydt) {
        const CoreState core = unpack_core(y);
        const AuxState aux = unpack_aux(y);
        const CoreState dc = core_rhs(core, params);
        const AuxState da = aux_rhs(core, aux, params);
        pack(dc, da, dydt);
    };
}

bool joint_state_valid(std::span<const double> y) {
    for (double v : y)
        if (!std::isfinite(v)) return false;
    // employment below the Phillips pole, positive price level and output
    return y[1] < 1.0 && y[6] > 0.0 && y[7] > 0.0;
}

// Trailing window over the core 5-vector: converged when every coordinate's
// max-min variation across the window falls below the tolerance.
class ConvergenceWindow {
  public:
    ConvergenceWindow(double span_years, double tol)
        : span_(span_years), tol_(tol) {}

    bool push_and_check(double t, std::span<const double> y) {
        if (tol_ <= 0.0) return false;
        entries_.push_back({t, {y[0], y[1], y[2], y[3], y[4]}});
        while (!entries_.empty() && entries_.front().t < t - span_)
            entries_.pop_front();
        if (entries_.back().t - entries_.front().t < 0.95 * span_) return false;
        for (int c = 0; c < 5; ++c) {
            double lo = entries_.front().v[c], hi = lo;
            for (const auto& e : entries_) {
                lo = std::min(lo, e.v[c]);
                hi = std::max(hi, e.v[c]);
            }
            if (hi - lo >= tol_) return false;
        }
        return true;
    }

  private:
    struct Entry {
        double t;
        std::array<double, 5> v;
    };
    double span_;
    double tol_;
    std::deque<Entry> entries_;
};

}  // namespace

void SolverSettings::validate() const {
    auto fail = [](const char* msg) {
        throw std::invalid_argument(std::string("SolverSettings: ") + msg);
    };
    if (!(rel_tol > 0.0 && abs_tol > 0.0)) fail("tolerances must be positive");
    if (!(initial_step > 0.0 && max_step > 0.0)) fail("steps must be positive");
    if (!(horizon > 0.0)) fail("horizon must be positive");
    if (!(blowup_threshold > 0.0)) fail("blowup threshold must be positive");
    if (!(collapse_threshold > 0.0)) fail("collapse threshold must be positive");
    if (!(convergence_window > 0.0)) fail("convergence window must be positive");
}

std::string to_string(Termination t) {
    switch (t) {
        case Termination::HorizonReached: return "HorizonReached";
        case Termination::ConvergedToEquilibrium: return "ConvergedToEquilibrium";
        case Termination::DebtBlowup: return "DebtBlowup";
        case Termination::CollapseToZero: return "CollapseToZero";
        case Termination::SingularState: return "SingularState";
    }
    return "HorizonReached";
}

Termination termination_from_string(const std::string& s) {
    if (s == "HorizonReached") return Termination::HorizonReached;
    if (s == "ConvergedToEquilibrium") return Termination::ConvergedToEquilibrium;
    if (s == "DebtBlowup") return Termination::DebtBlowup;
    if (s == "CollapseToZero") return Termination::CollapseToZero;
    if (s == "SingularState") return Termination::SingularState;
    throw std::invalid_argument("unknown termination kind: " + s);
}

Trajectory integrate(const CoreState& initial_core, const AuxState& initial_aux,
                     const ModelParams& params, const SolverSettings& settings) {
    params.validate();
    settings.validate();

    std::array<double, kDim> y{};
    pack(initial_core, initial_aux, y);
    if (!joint_state_valid(y))
        throw std::invalid_argument("integrate: initial state violates invariants");

    Trajectory traj;
    traj.samples.push_back(
        {0.0, initial_core, initial_aux, derive(initial_core, initial_aux, params)});

    ConvergenceWindow window(settings.convergence_window, settings.convergence_tol);
    window.push_and_check(0.0, y);

    bool event_fired = false;
    auto on_accept = [&](double t, std::span<const double> ys,
                         std::span<const double> /*err*/) -> bool {
        const CoreState core = unpack_core(ys);
        const AuxState aux = unpack_aux(ys);
        traj.samples.push_back({t, core, aux, derive(core, aux, params)});

        if (core.private_debt_ratio > settings.blowup_threshold) {
            traj.termination = Termination::DebtBlowup;
            event_fired = true;
            return false;
        }
        if (core.wage_share < settings.collapse_threshold &&
            core.employment < settings.collapse_threshold) {
            traj.termination = Termination::CollapseToZero;
            event_fired = true;
            return false;
        }
        if (window.push_and_check(t, ys)) {
            traj.termination = Termination::ConvergedToEquilibrium;
            event_fired = true;
            return false;
        }
        return true;
    };

    ode::AdaptiveOptions opts;
    opts.rel_tol = settings.rel_tol;
    opts.abs_tol = settings.abs_tol;
    opts.initial_step = settings.initial_step;
    opts.max_step = settings.max_step;

    const auto rhs = joint_rhs(params);
    const auto stats = ode::integrate_adaptive(
        rhs, y, 0.0, settings.horizon, opts,
        [](double, std::span<const double> ys) { return joint_state_valid(ys); },
        on_accept);

    traj.accumulated_error = stats.accumulated_error;
    traj.steps_accepted = stats.accepted;
    traj.steps_rejected = stats.rejected;
    traj.rhs_evaluations = stats.rhs_evals;

    if (!event_fired) {
        traj.termination = stats.outcome == ode::DriveOutcome::StepUnderflow
                               ? Termination::SingularState
                               : Termination::HorizonReached;
    }
    return traj;
}

JointState integrate_fixed_rk4(const CoreState& initial_core,
                               const AuxState& initial_aux,
                               const ModelParams& params, double t_end,
                               std::size_t n_steps) {
    std::array<double, kDim> y{};
    pack(initial_core, initial_aux, y);
    const auto rhs = joint_rhs(params);
    ode::rk4_fixed(rhs, y, 0.0, t_end, n_steps);
    return {unpack_core(y), unpack_aux(y)};
}

OrderCheckResult convergence_order_check(const CoreState& initial_core,
                                         const AuxState& initial_aux,
                                         const ModelParams& params, double t_end,
                                         double coarsest_step, int levels) {
    if (levels < 2)
        throw std::invalid_argument("convergence_order_check: need >= 2 levels");

    // Tight-tolerance adaptive reference run.
    SolverSettings ref;
    ref.rel_tol = 1e-12;
    ref.abs_tol = 1e-14;
    ref.horizon = t_end;
    ref.convergence_tol = 0.0;  // no early stop
    const Trajectory reference = integrate(initial_core, initial_aux, params, ref);
    if (reference.termination != Termination::HorizonReached)
        throw std::runtime_error(
            "convergence_order_check: reference run hit an event; "
            "pick a smooth regime");
    std::array<double, kDim> yref{};
    pack(reference.back().core, reference.back().aux, yref);

    OrderCheckResult result;
    double h = coarsest_step;
    for (int lvl = 0; lvl < levels; ++lvl, h *= 0.5) {
        const auto n = static_cast<std::size_t>(std::llround(t_end / h));
        const JointState end =
            integrate_fixed_rk4(initial_core, initial_aux, params, t_end, n);
        std::array<double, kDim> yend{};
        pack(end.core, end.aux, yend);
        double err = 0.0;
        for (std::size_t i = 0; i < kDim; ++i)
            err = std::max(err, std::abs(yend[i] - yref[i]) /
                                    std::max(1.0, std::abs(yref[i])));
        result.step_sizes.push_back(h);
        result.errors.push_back(err);
    }

    // Least-squares slope of log2(error) against log2(h).
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const auto m = static_cast<double>(levels);
    for (int i = 0; i < levels; ++i) {
        const double x = std::log2(result.step_sizes[i]);
        const double yv = std::log2(result.errors[i]);
        sx += x;
        sy += yv;
        sxx += x * x;
        sxy += x * yv;
    }
    result.measured_order = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    return result;
}

}  // namespace nirp
