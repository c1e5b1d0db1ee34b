#include "fctdrem/ct_estimator.hpp"

#include <string>

namespace fctdrem {

void CtGains::validate(double step) const {
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw std::invalid_argument("step must be positive");
    }
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw std::invalid_argument("gamma must be positive");
    }
    if (!(mu > 0.0 && mu < 1.0)) {
        throw std::invalid_argument("mu must lie in (0, 1), got " + std::to_string(mu));
    }
    if (t_window < 0.0 || !std::isfinite(t_window)) {
        throw std::invalid_argument("t_window must be positive");
    }
    if (t_window > 0.0) {
        const double ratio = t_window / step;
        const double n = std::round(ratio);
        if (n < 1.0 || std::abs(ratio - n) > 1e-9 * ratio) {
            throw std::invalid_argument("t_window = " + std::to_string(t_window) +
                                        " is not an integer multiple of the step " +
                                        std::to_string(step));
        }
    }
}

std::size_t CtGains::window_steps(double step) const {
    return static_cast<std::size_t>(std::llround(t_window / step));
}

} // namespace fctdrem
