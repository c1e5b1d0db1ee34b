#pragma once

namespace fctdrem {

/// Saturates w at the threshold: returns threshold if w >= threshold, w otherwise.
template <typename Real>
constexpr Real clip(Real w, Real threshold) {
    return w >= threshold ? threshold : w;
}

/**
 * Finite-time reconstruction (theta_hat - w_c * theta_ref) / (1 - w_c).
 *
 * theta_ref is the initial estimate for the classic scheme and the estimate
 * one window earlier for the alertness-preserving one. w_c must be a clipped
 * weight, so 1 - w_c >= 1 - threshold > 0.
 */
template <typename Real>
constexpr Real fct_reconstruct(Real theta_hat, Real theta_ref, Real w_c) {
    return (theta_hat - w_c * theta_ref) / (1 - w_c);
}

} // namespace fctdrem
