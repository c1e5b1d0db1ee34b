#include "fctdrem/dt_estimator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fctdrem/reconstruction.hpp"

namespace fctdrem {

void DtGains::validate() const {
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw std::invalid_argument("c must be positive");
    }
    if (!(rho > 0.0 && rho < 1.0)) {
        throw std::invalid_argument("rho must lie in (0, 1), got " + std::to_string(rho));
    }
    if (d < 1) {
        throw std::invalid_argument("d must be a positive integer");
    }
    if (!(ts > 0.0) || !std::isfinite(ts)) {
        throw std::invalid_argument("sampling time must be positive");
    }
}

namespace {

DtGains validated(DtGains g) {
    g.validate();
    return g;
}

} // namespace

DtEstimator::DtEstimator(DtGains gains, double theta0)
    : gains_(validated(gains)), theta_hat_(theta0), theta_hat0_(theta0),
      history_(gains_.d, Snapshot{ScaledReal{}, theta0}) {}

void DtEstimator::step(const ScalarLreSample &sample) {
    if (sample.index != k_) {
        throw std::invalid_argument("sample index " + std::to_string(sample.index) +
                                    " does not match estimator step " + std::to_string(k_));
    }
    const double delta = sample.delta;
    const double denom = gains_.c + delta * delta;
    theta_hat_ += delta / denom * (sample.y_meas - delta * theta_hat_);
    w_ *= gains_.c / denom;
    ++k_;
    history_.push({w_, theta_hat_});
}

double DtEstimator::ap_ratio() const { return w_ / history_.delayed().w; }

double DtEstimator::fct() const {
    return fct_reconstruct(theta_hat_, theta_hat0_, clip(w(), gains_.rho));
}

double DtEstimator::fct_ap() const {
    return fct_reconstruct(theta_hat_, delayed_theta_hat(), clip(ap_ratio(), gains_.rho));
}

bool DtEstimator::ie_check() const { return w() < gains_.rho; }

DtOutputs DtEstimator::outputs() const {
    const double w_now = w();
    const double w_d = ap_ratio();
    DtOutputs out{};
    out.theta_grad = theta_hat_;
    out.w = w_now;
    out.w_c = clip(w_now, gains_.rho);
    out.theta_fct = fct_reconstruct(theta_hat_, theta_hat0_, out.w_c);
    out.w_d = w_d;
    out.w_d_c = clip(w_d, gains_.rho);
    out.theta_fct_ap = fct_reconstruct(theta_hat_, delayed_theta_hat(), out.w_d_c);
    out.ie_met = w_now < gains_.rho;
    return out;
}

} // namespace fctdrem
