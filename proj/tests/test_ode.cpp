#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "nirp/ode.hpp"

using namespace nirp::ode;

namespace {

const RhsFn kDecay = [](double, std::span<const double> y,
                        std::span<double> d) { d[0] = -y[0]; };

const ValidFn kAlwaysValid = [](double, std::span<const double>) {
    return true;
};

}  // namespace

TEST_CASE("adaptive driver solves exponential decay to tolerance") {
    std::array<double, 1> y{1.0};
    AdaptiveOptions opts;
    opts.rel_tol = 1e-10;
    opts.abs_tol = 1e-12;
    const auto stats = integrate_adaptive(
        kDecay, y, 0.0, 5.0, opts, kAlwaysValid,
        [](double, std::span<const double>, std::span<const double>) {
            return true;
        });
    CHECK(stats.outcome == DriveOutcome::ReachedEnd);
    CHECK(std::abs(y[0] - std::exp(-5.0)) < 1e-9);
    CHECK(stats.accepted > 0);
}

TEST_CASE("adaptive driver lands exactly on the end time") {
    std::array<double, 1> y{1.0};
    double last_t = 0.0;
    const auto stats = integrate_adaptive(
        kDecay, y, 0.0, 2.7, AdaptiveOptions{}, kAlwaysValid,
        [&](double t, std::span<const double>, std::span<const double>) {
            last_t = t;
            return true;
        });
    CHECK(stats.outcome == DriveOutcome::ReachedEnd);
    CHECK(last_t == doctest::Approx(2.7).epsilon(1e-15));
}

TEST_CASE("observer can stop the run") {
    std::array<double, 1> y{1.0};
    const auto stats = integrate_adaptive(
        kDecay, y, 0.0, 100.0, AdaptiveOptions{}, kAlwaysValid,
        [](double t, std::span<const double>, std::span<const double>) {
            return t < 1.0;
        });
    CHECK(stats.outcome == DriveOutcome::StoppedByObserver);
    CHECK(stats.final_time < 2.0);
}

TEST_CASE("invalid stage states shrink the step until underflow") {
    // A right-hand side with a finite-time blow-up guarded by the validity
    // predicate: y' = y^2 from y=1 blows up at t=1.
    const RhsFn blowup = [](double, std::span<const double> y,
                            std::span<double> d) { d[0] = y[0] * y[0]; };
    std::array<double, 1> y{1.0};
    const auto stats = integrate_adaptive(
        blowup, y, 0.0, 2.0, AdaptiveOptions{},
        [](double, std::span<const double> v) { return v[0] < 1e6; },
        [](double, std::span<const double>, std::span<const double>) {
            return true;
        });
    CHECK(stats.outcome == DriveOutcome::StepUnderflow);
    CHECK(stats.final_time > 0.9);
    CHECK(stats.final_time < 1.1);
}

TEST_CASE("rk4 halving the step cuts the error by about sixteen") {
    auto err_with = [&](std::size_t steps) {
        std::array<double, 1> y{1.0};
        rk4_fixed(kDecay, y, 0.0, 2.0, steps);
        return std::abs(y[0] - std::exp(-2.0));
    };
    const double e1 = err_with(20);
    const double e2 = err_with(40);
    const double ratio = e1 / e2;
    CHECK(ratio > 16.0 * 0.9);
    CHECK(ratio < 16.0 * 1.1);
}

TEST_CASE("rk4 is exact on a constant solution") {
    const RhsFn zero = [](double, std::span<const double>,
                          std::span<double> d) { d[0] = 0.0; d[1] = 0.0; };
    std::array<double, 2> y{3.5, -1.25};
    rk4_fixed(zero, y, 0.0, 10.0, 100);
    CHECK(y[0] == 3.5);
    CHECK(y[1] == -1.25);
}

TEST_CASE("tightening tolerance keeps the final state within the looser "
          "accumulated estimate") {
    auto run = [&](double rel) {
        std::array<double, 2> y{1.0, 0.0};
        // damped oscillator
        const RhsFn osc = [](double, std::span<const double> v,
                             std::span<double> d) {
            d[0] = v[1];
            d[1] = -v[0] - 0.1 * v[1];
        };
        AdaptiveOptions opts;
        opts.rel_tol = rel;
        opts.abs_tol = rel * 1e-2;
        auto stats = integrate_adaptive(
            osc, y, 0.0, 20.0, opts, kAlwaysValid,
            [](double, std::span<const double>, std::span<const double>) {
                return true;
            });
        return std::pair{y, stats.accumulated_error};
    };
    const auto [loose, loose_acc] = run(1e-7);
    const auto [tight, tight_acc] = run(1e-8);
    for (int i = 0; i < 2; ++i) {
        CHECK(std::abs(loose[static_cast<std::size_t>(i)] -
                       tight[static_cast<std::size_t>(i)]) <=
              loose_acc[static_cast<std::size_t>(i)]);
    }
}
