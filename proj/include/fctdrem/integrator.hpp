#pragma once

#include "fctdrem/lre.hpp"

namespace fctdrem {

/// LRE samples at the three distinct RK4 / Simpson nodes of one step [t, t + h].
struct StageSamples {
    ScalarLreSample start;
    ScalarLreSample mid;
    ScalarLreSample end;
};

/// Samples `source` at t, t + h/2 and t + h, with t = n * h.
template <typename Source>
StageSamples sample_stages(const Source &source, long long n, double h) {
    const double t0 = static_cast<double>(n) * h;
    const double tm = (static_cast<double>(n) + 0.5) * h;
    const double t1 = static_cast<double>(n + 1) * h;
    return {source.sample(t0), source.sample(tm), source.sample(t1)};
}

/**
 * Classical 4-stage Runge-Kutta step of  dx/dt = rhs(sample, x).
 *
 * The right-hand side sees the measured data only through the stage
 * samples, so every estimator advanced on the same StageSamples shares
 * bit-identical signal evaluations.
 */
template <typename Real, typename Rhs>
Real rk4_step(const Rhs &rhs, const StageSamples &s, Real x, Real h) {
    const Real k1 = rhs(s.start, x);
    const Real k2 = rhs(s.mid, x + h / 2 * k1);
    const Real k3 = rhs(s.mid, x + h / 2 * k2);
    const Real k4 = rhs(s.end, x + h * k3);
    return x + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
}

/// Simpson rule for the integral of Delta^2 over one step.
template <typename Real>
Real simpson_delta_sq(const StageSamples &s, Real h) {
    const Real a = s.start.delta, m = s.mid.delta, b = s.end.delta;
    return h / 6 * (a * a + 4 * m * m + b * b);
}

} // namespace fctdrem
