#pragma once

#include <filesystem>
#include <string>

#include "fctdrem/trajectory.hpp"

namespace fctdrem {

/**
 * Writes a gnuplot script that plots every theta_true* column and every
 * estimate column (theta_* other than theta_true*) of `<name>_trajectory.csv`.
 * Discrete-time tables (abscissa "k") are drawn with point markers.
 *
 * Throws std::invalid_argument when the table has no rows or no estimate
 * columns, and IoError when the file cannot be written.
 */
std::filesystem::path emit_plots(const TrajectoryTable &table, const std::string &name,
                                 const std::filesystem::path &out_dir);

/// The script text itself.
std::string plot_script(const TrajectoryTable &table, const std::string &name);

} // namespace fctdrem
