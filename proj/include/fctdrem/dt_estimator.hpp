#pragma once

#include <cstddef>
#include <cstdint>

#include "fctdrem/delay_line.hpp"
#include "fctdrem/lre.hpp"
#include "fctdrem/scaled_real.hpp"

namespace fctdrem {

/// Gains of the discrete-time gradient / FCT / FCT-AP estimators.
struct DtGains {
    double c = 1.0;        ///< regularizer, > 0
    double rho = 0.98;     ///< clipping threshold, in (0, 1)
    std::size_t d = 1;     ///< AP window in samples, >= 1
    double ts = 1.0;       ///< sampling time in seconds

    void validate() const;
};

struct DtOutputs {
    double theta_grad;
    double theta_fct;
    double theta_fct_ap;
    double w;
    double w_c;
    double w_d;
    double w_d_c;
    bool ie_met;
};

/**
 * @brief Discrete-time scalar gradient estimator with FCT reconstruction.
 *
 * Update on the sample (Delta(k), Y), where Y is the measurement paired with
 * Delta(k), i.e. Y = Delta(k) * theta for noiseless data:
 *
 *   theta_hat(k+1) = theta_hat(k) + Delta(k) / (c + Delta(k)^2) * (Y - Delta(k) theta_hat(k))
 *   w(k+1)         = c / (c + Delta(k)^2) * w(k),   w(0) = 1
 *
 * The parameter error then obeys theta_err(k) = w(k) theta_err(0) and
 * theta_err(k) = [w(k) / w(k - d)] theta_err(k - d). For k < d the
 * pre-history is w = 1 and theta_hat = theta_hat(0).
 */
class DtEstimator {
public:
    DtEstimator(DtGains gains, double theta0 = 0.0);

    /// Consumes the sample with index k() and advances to k() + 1.
    /// Throws std::invalid_argument on an index mismatch.
    void step(const ScalarLreSample &sample);

    std::int64_t k() const { return k_; }
    const DtGains &gains() const { return gains_; }

    double theta_hat() const { return theta_hat_; }
    double theta_hat0() const { return theta_hat0_; }
    double delayed_theta_hat() const { return history_.delayed().theta_hat; }

    const ScaledReal &w_scaled() const { return w_; }
    double w() const { return w_.value(); }

    /// w(k) / w(k - d)
    double ap_ratio() const;

    /// Classic reconstruction from theta_hat(0).
    double fct() const;

    /// Alertness-preserving reconstruction from theta_hat(k - d).
    double fct_ap() const;

    /// w(k) < rho
    bool ie_check() const;

    DtOutputs outputs() const;

private:
    struct Snapshot {
        ScaledReal w;
        double theta_hat;
    };

    DtGains gains_;
    double theta_hat_;
    double theta_hat0_;
    ScaledReal w_;
    std::int64_t k_ = 0;
    DelayLine<Snapshot> history_;
};

} // namespace fctdrem
