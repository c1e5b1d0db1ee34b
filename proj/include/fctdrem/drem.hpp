#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "fctdrem/lre.hpp"

namespace fctdrem {

/// Largest regressor dimension handled by the cofactor adjugate.
inline constexpr std::size_t kMaxDremDimension = 5;

/// Stacked, delayed copies of a vector LRE: phi_e * theta = y_e.
struct ExtendedRegressor {
    Eigen::MatrixXd phi_e;
    Eigen::VectorXd y_e;
    std::int64_t k = 0;
};

/// q decoupled scalar LREs  y_mixed_i = delta * theta_i.
struct MixedScalarLres {
    double delta = 0.0;
    Eigen::VectorXd y_mixed;
    std::int64_t k = 0;
};

struct AdjugateDet {
    Eigen::MatrixXd adjugate;
    double det = 0.0;
};

/**
 * @brief Adjugate and determinant by cofactor expansion.
 *
 * Never divides, so adj(m) stays finite for singular m and
 * adj(m) * m = det(m) * I holds up to rounding. Throws std::invalid_argument
 * for non-square input or dimension outside [1, kMaxDremDimension].
 */
AdjugateDet adjugate_and_det(const Eigen::MatrixXd &m);

/// Cofactor-expansion determinant; same limits as adjugate_and_det.
double cofactor_det(const Eigen::MatrixXd &m);

/**
 * Validates a lag vector: lags[0] == 0, strictly increasing, one per parameter.
 */
void validate_lags(std::span<const std::size_t> lags, std::size_t q);

/**
 * @brief Builds the extended regressor at sample k by delay stacking.
 *
 * history[j] must be the sample with index j. Row r is phi(k - lags[r])^T and
 * y_e[r] = y(k - lags[r]); indices before 0 contribute zero rows.
 */
ExtendedRegressor extend(std::span<const VectorLreSample> history,
                         std::span<const std::size_t> lags, std::int64_t k);

/// delta = det(phi_e), y_mixed = adj(phi_e) * y_e.
MixedScalarLres mix(const ExtendedRegressor &ext);

/**
 * Streaming extension + mixing over a vector LRE sampled at k = 0, 1, 2, ...
 * Keeps only the last max(lags) + 1 samples.
 */
class DremMixer {
public:
    DremMixer(std::size_t dimension, std::vector<std::size_t> lags);

    /// Pushes the sample for the next index and returns its mixed LREs.
    MixedScalarLres push(VectorLreSample sample);

    std::size_t dimension() const { return q_; }
    std::span<const std::size_t> lags() const { return lags_; }

private:
    std::size_t q_;
    std::vector<std::size_t> lags_;
    std::deque<VectorLreSample> window_;   // front = newest
    std::int64_t next_k_ = 0;
};

} // namespace fctdrem
