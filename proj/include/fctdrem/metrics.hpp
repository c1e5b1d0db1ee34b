#pragma once

#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fctdrem/signals.hpp"
#include "fctdrem/trajectory.hpp"

namespace fctdrem {

/// Band-and-dwell test for empirical convergence; all times in abscissa units.
struct ConvergenceCriteria {
    double epsilon = 1e-3;
    double hold = 0.5;
    double search_from = 0.0;
    double search_to = std::numeric_limits<double>::infinity();
};

/**
 * Earliest abscissa t in [search_from, search_to) such that
 * |column(s) - target(s)| <= epsilon for every output sample s in [t, t + hold],
 * with t + hold also inside the search range. Evaluated on the output grid only.
 *
 * Throws std::out_of_range for an unknown column and std::invalid_argument when
 * epsilon <= 0 or hold is shorter than one output step.
 */
std::optional<double> convergence_time(const TrajectoryTable &table, std::string_view column,
                                       const PiecewiseProfile &target,
                                       const ConvergenceCriteria &criteria);

/// RMS of column - target over output samples with abscissa in [t0, t1].
/// Throws std::invalid_argument if no sample falls in the interval.
double interval_rms(const TrajectoryTable &table, std::string_view column,
                    const PiecewiseProfile &target, double t0, double t1);

/// Largest |column - target| over [t0, t1]; same contract as interval_rms.
double interval_max_abs_error(const TrajectoryTable &table, std::string_view column,
                              const PiecewiseProfile &target, double t0, double t1);

struct IntervalStat {
    double t0 = 0.0;
    double t1 = 0.0;
    std::optional<double> hit_time;
    double rms = 0.0;
};

struct ConvergenceReport {
    std::string estimator;
    double epsilon = 0.0;
    double hold = 0.0;
    double end = 0.0;                       // last abscissa of the run
    std::optional<double> hit_time;         // searched over the whole run
    double rms = 0.0;                       // over the whole run
    std::vector<IntervalStat> intervals;    // one per parameter-profile segment
};

/**
 * Convergence time over the whole run plus per-interval hit time and RMS for
 * each [edges[i], edges[i+1]) (the right edge is excluded by half an output step).
 */
ConvergenceReport summarize(const TrajectoryTable &table, std::string_view column,
                            const PiecewiseProfile &target, double epsilon, double hold,
                            const std::vector<double> &edges);

} // namespace fctdrem
