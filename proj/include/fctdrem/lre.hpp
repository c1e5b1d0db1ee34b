#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fctdrem/signals.hpp"

namespace fctdrem {

/// One sample of a scalar LRE  Y = Delta * theta  (+ measurement disturbance).
struct ScalarLreSample {
    double t = 0.0;
    std::int64_t index = 0;   // sample index k for sampled streams, 0 otherwise
    double delta = 0.0;
    double y_meas = 0.0;
};

/// One sample of a vector LRE  y = phi^T theta.
struct VectorLreSample {
    double t = 0.0;
    std::int64_t index = 0;
    std::vector<double> phi;
    double y = 0.0;
};

/**
 * Generator of noiseless (or disturbed) scalar LRE data from a regressor
 * spec, a scalar parameter profile and an optional additive disturbance on Y.
 */
class ScalarLre {
public:
    /// Throws std::invalid_argument if the profile is not scalar.
    ScalarLre(Signal delta, ParameterProfile theta, std::optional<Signal> noise = std::nullopt);

    ScalarLreSample sample(double t, std::int64_t index = 0) const;

    const Signal &delta() const { return delta_; }
    const ParameterProfile &theta() const { return theta_; }
    const std::optional<Signal> &noise() const { return noise_; }

private:
    Signal delta_;
    ParameterProfile theta_;
    std::optional<Signal> noise_;
};

ScalarLreSample make_scalar_sample(const Signal &delta, const ParameterProfile &theta,
                                   const std::optional<Signal> &noise, double t,
                                   std::int64_t index = 0);

/// y = sum_i phi_i(t) theta_i(t) (+ noise(t)). Throws on dimension mismatch.
VectorLreSample make_vector_sample(std::span<const Signal> phi, const ParameterProfile &theta,
                                   double t, std::int64_t index = 0,
                                   const std::optional<Signal> &noise = std::nullopt);

} // namespace fctdrem
