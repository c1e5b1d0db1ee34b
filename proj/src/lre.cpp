#include "fctdrem/lre.hpp"

#include <stdexcept>
#include <string>

namespace fctdrem {

ScalarLre::ScalarLre(Signal delta, ParameterProfile theta, std::optional<Signal> noise)
    : delta_(std::move(delta)), theta_(std::move(theta)), noise_(std::move(noise)) {
    if (theta_.dimension() != 1) {
        throw std::invalid_argument("scalar LRE needs a scalar parameter profile, got dimension " +
                                    std::to_string(theta_.dimension()));
    }
}

ScalarLreSample ScalarLre::sample(double t, std::int64_t index) const {
    return make_scalar_sample(delta_, theta_, noise_, t, index);
}

ScalarLreSample make_scalar_sample(const Signal &delta, const ParameterProfile &theta,
                                   const std::optional<Signal> &noise, double t,
                                   std::int64_t index) {
    if (theta.dimension() != 1) {
        throw std::invalid_argument("scalar LRE needs a scalar parameter profile");
    }
    ScalarLreSample s;
    s.t = t;
    s.index = index;
    s.delta = delta(t);
    s.y_meas = s.delta * theta.component(0)(t);
    if (noise) {
        s.y_meas += (*noise)(t);
    }
    return s;
}

VectorLreSample make_vector_sample(std::span<const Signal> phi, const ParameterProfile &theta,
                                   double t, std::int64_t index,
                                   const std::optional<Signal> &noise) {
    if (phi.size() != theta.dimension()) {
        throw std::invalid_argument("regressor has " + std::to_string(phi.size()) +
                                    " entries but the parameter has dimension " +
                                    std::to_string(theta.dimension()));
    }
    VectorLreSample s;
    s.t = t;
    s.index = index;
    s.phi.reserve(phi.size());
    for (std::size_t i = 0; i < phi.size(); ++i) {
        const double p = phi[i](t);
        s.phi.push_back(p);
        s.y += p * theta.component(i)(t);
    }
    if (noise) {
        s.y += (*noise)(t);
    }
    return s;
}

} // namespace fctdrem
