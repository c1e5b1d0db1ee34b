#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "fctdrem/metrics.hpp"
#include "fctdrem/scenario.hpp"
#include "fctdrem/trajectory.hpp"

namespace fctdrem {

struct RunResult {
    TrajectoryTable table;
    std::vector<ConvergenceReport> reports;
    std::vector<std::pair<std::string, std::string>> metadata;
};

/**
 * @brief Advances every roster estimator over the horizon.
 *
 * All estimators consume the same signal evaluations. CT runs emit a row every
 * `decimation` integration steps; DT runs emit sample k every `decimation`
 * samples. Column order: abscissa ("t" or "k"), delta, y_meas, theta_true,
 * one estimate column per roster entry, then the diagnostic columns. Vector
 * (DREM) scenarios suffix per-component columns with _1 .. _q.
 */
RunResult simulate(const Scenario &scn);

/// Default convergence band used in summaries.
inline constexpr double kDefaultEpsilon = 1e-3;

/// Default dwell: 0.5 s for CT runs, 2 samples for DT runs.
double default_hold(Mode mode);

/**
 * simulate() and write <name>_trajectory.csv, <name>_summary.csv,
 * <name>_meta.csv and <name>.gp into out_dir (created if missing).
 * Throws IoError with path context.
 */
RunResult run_scenario(const Scenario &scn, const std::filesystem::path &out_dir);

/// Summary rows: estimator, interval bounds, hit time, RMS error.
void write_summary_csv(std::ostream &os, const std::vector<ConvergenceReport> &reports);

} // namespace fctdrem
