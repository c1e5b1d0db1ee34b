#pragma once

#include <cmath>
#include <optional>

#include "fctdrem/integrator.hpp"

namespace fctdrem {

/// sign(x) with sign(0) = 0.
inline double sign0(double x) { return static_cast<double>((x > 0.0) - (x < 0.0)); }

/// |x|^p * sign(x), p >= 0. Zero maps to zero for every p, including p = 0.
inline double signed_power(double x, double p) {
    if (x == 0.0) {
        return 0.0;
    }
    return std::copysign(std::pow(std::abs(x), p), x);
}

struct Alg1Gains {
    double gamma = 5.0;
    double alpha = 0.75;   ///< in [0, 1); 1 is accepted only with AlphaPolicy::allow_unit

    enum class AlphaPolicy { strict, allow_unit };
    void validate(AlphaPolicy policy = AlphaPolicy::strict) const;
};

struct Alg3Gains {
    double gamma = 5.0;
    double varsigma = 2.0;   ///< > 1
    /// Fixed bound on |Delta|; when absent the running maximum of |Delta| is used.
    std::optional<double> delta_max;

    void validate() const;
};

/// Floor applied to the running |Delta| maximum before it is used as a divisor.
inline constexpr double kRunningDeltaMaxFloor = 1e-9;

/**
 * Fractional-power gradient:  d(theta_hat)/dt = gamma * Delta * ceil(Y - Delta theta_hat)^alpha
 */
class Alg1Estimator {
public:
    Alg1Estimator(Alg1Gains gains, double step, double theta0 = 0.0,
                  Alg1Gains::AlphaPolicy policy = Alg1Gains::AlphaPolicy::strict);

    void step(const StageSamples &s);

    /// Right-hand side at one sample.
    double rate(const ScalarLreSample &x, double theta) const;

    double theta_hat() const { return theta_hat_; }
    const Alg1Gains &gains() const { return gains_; }

private:
    Alg1Gains gains_;
    double h_;
    double theta_hat_;
};

/**
 * Excitation-scheduled power law:
 *   d(theta_hat)/dt = gamma * sign(Delta) * ceil(Y - Delta theta_hat)^(|Delta| / (varsigma * Delta_max))
 * started from theta_hat = 0.
 */
class Alg3Estimator {
public:
    Alg3Estimator(Alg3Gains gains, double step);

    void step(const StageSamples &s);

    double rate(const ScalarLreSample &x, double theta, double delta_max) const;

    double theta_hat() const { return theta_hat_; }
    const Alg3Gains &gains() const { return gains_; }

    /// Delta_max in effect for the most recent step.
    double delta_max() const;

private:
    Alg3Gains gains_;
    double h_;
    double theta_hat_ = 0.0;
    double running_max_ = 0.0;
};

} // namespace fctdrem
