#pragma once

#include <cmath>
#include <concepts>
#include <optional>
#include <stdexcept>

#include "fctdrem/delay_line.hpp"
#include "fctdrem/integrator.hpp"
#include "fctdrem/reconstruction.hpp"

namespace fctdrem {

/// Gains of the continuous-time gradient / FCT / FCT-D estimators.
struct CtGains {
    double gamma = 1.0;     ///< adaptation gain, > 0
    double mu = 0.98;       ///< clipping threshold, in (0, 1)
    double t_window = 0.0;  ///< sliding window T_D in seconds; 0 disables the AP variant

    /// Throws std::invalid_argument naming the offending field.
    void validate(double step) const;

    /// Window length in integration steps. Requires validate() to have passed.
    std::size_t window_steps(double step) const;

    /// -ln(1 - mu) / gamma: the interval-excitation energy threshold.
    double ie_threshold() const { return -std::log1p(-mu) / gamma; }
};

template <std::floating_point Real>
struct WValues {
    Real w;
    Real w_d;
};

struct IeFlags {
    bool classic = false;
    bool windowed = false;
};

template <std::floating_point Real>
struct CtOutputs {
    Real theta_grad;
    Real theta_fct;
    Real w;
    Real w_c;
    bool ie_classic_met;

    // alertness-preserving variant, present when a window is configured
    std::optional<Real> theta_fct_d;
    std::optional<Real> w_d;
    std::optional<Real> w_d_c;
    std::optional<bool> ie_window_met;
};

/**
 * @brief Continuous-time scalar gradient estimator with FCT reconstruction.
 *
 * The estimate follows  d(theta_hat)/dt = gamma * Delta * (Y - Delta * theta_hat),
 * advanced by fixed-step RK4. The excitation energy i_acc = int_0^t Delta^2 is
 * accumulated by Simpson's rule on the same stage samples, and the weights are
 * formed in closed form:
 *
 *   w(t)   = exp(-gamma * i_acc(t))
 *   w_D(t) = exp(-gamma * (i_acc(t) - i_acc(t - T_D)))
 *
 * For t < T_D the delayed values are i_acc = 0 and theta_hat(0).
 *
 * @tparam Real internal state precision (double in production)
 */
template <std::floating_point Real>
class BasicCtEstimator {
public:
    BasicCtEstimator(CtGains gains, Real step, Real theta0 = 0)
        : gains_(validated(gains, step)), h_(step), theta_hat_(theta0), theta_hat0_(theta0) {
        if (gains_.t_window > 0.0) {
            history_.emplace(gains_.window_steps(static_cast<double>(step)),
                             Snapshot{Real(0), theta0});
        }
    }

    /// Advances from t = n h to (n + 1) h on the given stage samples.
    void step(const StageSamples &s) {
        const Real gamma = static_cast<Real>(gains_.gamma);
        auto rhs = [gamma](const ScalarLreSample &x, Real theta) {
            const Real delta = static_cast<Real>(x.delta);
            return gamma * delta * (static_cast<Real>(x.y_meas) - delta * theta);
        };
        theta_hat_ = rk4_step<Real>(rhs, s, theta_hat_, h_);
        i_acc_ += simpson_delta_sq<Real>(s, h_);
        ++steps_;
        if (history_) {
            history_->push({i_acc_, theta_hat_});
        }
    }

    Real time() const { return static_cast<Real>(steps_) * h_; }
    long long steps() const { return steps_; }
    Real step_size() const { return h_; }
    const CtGains &gains() const { return gains_; }
    bool has_window() const { return history_.has_value(); }

    Real theta_hat() const { return theta_hat_; }
    Real theta_hat0() const { return theta_hat0_; }

    /// int_0^t Delta^2
    Real excitation_integral() const { return i_acc_; }

    /// int_{t - T_D}^t Delta^2, with zero excitation before t = 0.
    Real window_integral() const { return i_acc_ - window().delayed().i_acc; }

    /// theta_hat(t - T_D), or theta_hat(0) before one full window.
    Real delayed_theta_hat() const { return window().delayed().theta_hat; }

    /// (w, w_D). w_D is 1 when no window is configured.
    WValues<Real> w_values() const {
        const Real gamma = static_cast<Real>(gains_.gamma);
        const Real w = std::exp(-gamma * i_acc_);
        const Real w_d = history_ ? std::exp(-gamma * window_integral()) : Real(1);
        return {w, w_d};
    }

    IeFlags ie_check() const {
        const Real threshold = static_cast<Real>(gains_.ie_threshold());
        return {i_acc_ >= threshold, history_ ? window_integral() >= threshold : false};
    }

    CtOutputs<Real> outputs() const {
        const Real mu = static_cast<Real>(gains_.mu);
        const auto [w, w_d] = w_values();
        const auto ie = ie_check();

        CtOutputs<Real> out{};
        out.theta_grad = theta_hat_;
        out.w = w;
        out.w_c = clip(w, mu);
        out.theta_fct = fct_reconstruct(theta_hat_, theta_hat0_, out.w_c);
        out.ie_classic_met = ie.classic;
        if (history_) {
            const Real w_d_c = clip(w_d, mu);
            out.w_d = w_d;
            out.w_d_c = w_d_c;
            out.theta_fct_d = fct_reconstruct(theta_hat_, delayed_theta_hat(), w_d_c);
            out.ie_window_met = ie.windowed;
        }
        return out;
    }

private:
    struct Snapshot {
        Real i_acc;
        Real theta_hat;
    };

    static CtGains validated(CtGains g, Real step) {
        g.validate(static_cast<double>(step));
        return g;
    }

    const DelayLine<Snapshot> &window() const {
        if (!history_) {
            throw std::logic_error("estimator has no sliding window configured");
        }
        return *history_;
    }

    CtGains gains_;
    Real h_;
    Real theta_hat_;
    Real theta_hat0_;
    Real i_acc_ = 0;
    long long steps_ = 0;
    std::optional<DelayLine<Snapshot>> history_;
};

using CtEstimator = BasicCtEstimator<double>;

} // namespace fctdrem
