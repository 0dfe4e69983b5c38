#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nirp/model.hpp"
#include "nirp/ode.hpp"

namespace nirp {

struct SolverSettings {
    double rel_tol = 1e-9;
    double abs_tol = 1e-11;
    double initial_step = 0.01;      // years
    double max_step = 1.0;           // years
    double horizon = 300.0;          // years
    double blowup_threshold = 1e6;   // debt ratio triggering DebtBlowup
    double collapse_threshold = 1e-6;  // wage share and employment floor
    double convergence_window = 25.0;  // years of trailing history inspected
    double convergence_tol = 1e-4;     // sup-norm variation over the window;
                                       // <= 0 disables detection

    void validate() const;  // throws std::invalid_argument
};

enum class Termination {
    HorizonReached,
    ConvergedToEquilibrium,
    DebtBlowup,
    CollapseToZero,
    SingularState,
};

std::string to_string(Termination t);
Termination termination_from_string(const std::string& s);

struct Sample {
    double t = 0.0;
    CoreState core;
    AuxState aux;
    Derived derived;
};

struct Trajectory {
    std::vector<Sample> samples;
    Termination termination = Termination::HorizonReached;
    /// Componentwise sum of local error estimates over accepted steps,
    /// ordered (omega, lambda, ell, rho, r_g, b, p, Y).
    std::vector<double> accumulated_error;
    std::size_t steps_accepted = 0;
    std::size_t steps_rejected = 0;
    std::size_t rhs_evaluations = 0;

    const Sample& front() const { return samples.front(); }
    const Sample& back() const { return samples.back(); }
};

/// Advances the joint 8-dimensional system (core 5-vector plus gov debt
/// ratio, price level and real output) with adaptive error control.
/// Samples are the accepted steps; the first sample is the initial state.
/// Integration stops at the first event: debt blow-up, collapse of both the
/// wage share and employment below the collapse threshold, trailing-window
/// convergence of the core 5-vector, step underflow near a singularity, or
/// the horizon.
Trajectory integrate(const CoreState& initial_core, const AuxState& initial_aux,
                     const ModelParams& params, const SolverSettings& settings);

/// Final state of a fixed-step classical RK4 pass over the same joint
/// system; the order probe halves the step against this scheme.
struct JointState {
    CoreState core;
    AuxState aux;
};

JointState integrate_fixed_rk4(const CoreState& initial_core,
                               const AuxState& initial_aux,
                               const ModelParams& params, double t_end,
                               std::size_t n_steps);

struct OrderCheckResult {
    double measured_order = 0.0;          // least-squares slope in log2 space
    std::vector<double> step_sizes;
    std::vector<double> errors;           // sup-norm error vs reference
};

/// Empirical convergence order of the fixed-step RK4 scheme on the smooth
/// part of a trajectory, measured against a tight-tolerance adaptive
/// reference. The nominal order is 4.
OrderCheckResult convergence_order_check(const CoreState& initial_core,
                                         const AuxState& initial_aux,
                                         const ModelParams& params,
                                         double t_end = 10.0,
                                         double coarsest_step = 0.5,
                                         int levels = 4);

}  // namespace nirp
