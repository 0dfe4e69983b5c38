#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace nirp::ode {

/// dydt = f(t, y); both spans have the system dimension.
using RhsFn =
    std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

/// Predicate for trial states; a step whose stage or end state fails it is
/// rejected and retried with a smaller step.
using ValidFn = std::function<bool(double t, std::span<const double> y)>;

/// Called after every accepted step with the new state and the per-component
/// local error estimate of that step. Return false to stop the integration.
using AcceptFn = std::function<bool(double t, std::span<const double> y,
                                    std::span<const double> step_error)>;

struct AdaptiveOptions {
    double rel_tol = 1e-9;
    double abs_tol = 1e-11;
    double initial_step = 0.01;
    double max_step = 1.0;
    double min_step_floor = 1e-13;  // scaled by max(1,|t|)
};

enum class DriveOutcome { ReachedEnd, StoppedByObserver, StepUnderflow };

struct DriveStats {
    DriveOutcome outcome = DriveOutcome::ReachedEnd;
    double final_time = 0.0;
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t rhs_evals = 0;
    /// Sum over accepted steps of the componentwise |local error estimate|;
    /// a cheap upper proxy for the accumulated truncation error.
    std::vector<double> accumulated_error;
};

/// Adaptive Dormand-Prince 5(4) driver. y holds the initial state on entry
/// and the final state on exit. The observer is not called for the initial
/// state. Steps never overshoot t_end.
DriveStats integrate_adaptive(const RhsFn& rhs, std::span<double> y, double t0,
                              double t_end, const AdaptiveOptions& opts,
                              const ValidFn& valid, const AcceptFn& on_accept);

/// Classical fixed-step fourth-order Runge-Kutta over n_steps equal steps.
/// Used by the convergence-order probe and as an independent cross-check.
void rk4_fixed(const RhsFn& rhs, std::span<double> y, double t0, double t_end,
               std::size_t n_steps);

}  // namespace nirp::ode
