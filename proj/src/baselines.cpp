#include "fctdrem/baselines.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace fctdrem {

void Alg1Gains::validate(AlphaPolicy policy) const {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw std::invalid_argument("gamma must be positive");
    }
    const bool upper_ok = policy == AlphaPolicy::allow_unit ? alpha <= 1.0 : alpha < 1.0;
    if (!(alpha >= 0.0 && upper_ok)) {
        throw std::invalid_argument("alpha must lie in [0, 1), got " + std::to_string(alpha));
    }
}

void Alg3Gains::validate() const {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw std::invalid_argument("gamma must be positive");
    }
    if (!(varsigma > 1.0) || !std::isfinite(varsigma)) {
        throw std::invalid_argument("varsigma must be greater than 1");
    }
    if (delta_max && !(*delta_max > 0.0 && std::isfinite(*delta_max))) {
        throw std::invalid_argument("delta_max must be positive");
    }
}

Alg1Estimator::Alg1Estimator(Alg1Gains gains, double step, double theta0,
                             Alg1Gains::AlphaPolicy policy)
    : gains_(gains), h_(step), theta_hat_(theta0) {
    gains_.validate(policy);
    if (!(step > 0.0)) {
        throw std::invalid_argument("step must be positive");
    }
}

double Alg1Estimator::rate(const ScalarLreSample &x, double theta) const {
    return gains_.gamma * x.delta * signed_power(x.y_meas - x.delta * theta, gains_.alpha);
}

void Alg1Estimator::step(const StageSamples &s) {
    theta_hat_ = rk4_step<double>([this](const ScalarLreSample &x, double th) { return rate(x, th); },
                                  s, theta_hat_, h_);
}

Alg3Estimator::Alg3Estimator(Alg3Gains gains, double step) : gains_(gains), h_(step) {
    gains_.validate();
    if (!(step > 0.0)) {
        throw std::invalid_argument("step must be positive");
    }
}

double Alg3Estimator::rate(const ScalarLreSample &x, double theta, double delta_max) const {
    const double exponent = std::abs(x.delta) / (gains_.varsigma * delta_max);
    return gains_.gamma * sign0(x.delta) * signed_power(x.y_meas - x.delta * theta, exponent);
}

double Alg3Estimator::delta_max() const {
    if (gains_.delta_max) {
        return *gains_.delta_max;
    }
    return std::max(running_max_, kRunningDeltaMaxFloor);
}

void Alg3Estimator::step(const StageSamples &s) {
    if (!gains_.delta_max) {
        running_max_ = std::max({running_max_, std::abs(s.start.delta), std::abs(s.mid.delta),
                                 std::abs(s.end.delta)});
    }
    const double dmax = delta_max();
    theta_hat_ = rk4_step<double>(
        [this, dmax](const ScalarLreSample &x, double th) { return rate(x, th, dmax); }, s,
        theta_hat_, h_);
}

} // namespace fctdrem
