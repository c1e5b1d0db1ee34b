#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fctdrem {

/**
 * Uniformly sampled multi-column record.
 *
 * Column 0 is the abscissa (time in seconds, or the sample index k for
 * discrete-time runs); time_scale converts it to seconds.
 */
class TrajectoryTable {
public:
    TrajectoryTable(std::vector<std::string> headers, double time_scale = 1.0);

    /// Throws std::invalid_argument if the row width differs from the header count.
    void append_row(std::span<const double> row);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return headers_.size(); }
    bool empty() const { return rows_ == 0; }

    const std::vector<std::string> &headers() const { return headers_; }
    bool has_column(std::string_view name) const;

    /// Throws std::out_of_range for an unknown column name.
    std::span<const double> column(std::string_view name) const;
    std::span<const double> column(std::size_t index) const { return columns_.at(index); }
    std::size_t column_index(std::string_view name) const;

    std::span<const double> abscissa() const { return columns_.front(); }
    double time_scale() const { return time_scale_; }

    /// Spacing of the abscissa (0 for tables with fewer than two rows).
    double spacing() const;

    /// Comma-separated, header row first, shortest round-trip decimals.
    void write_csv(std::ostream &os) const;

private:
    std::vector<std::string> headers_;
    std::vector<std::vector<double>> columns_;
    double time_scale_;
    std::size_t rows_ = 0;
};

/// Shortest decimal string that parses back to exactly `value`.
std::string format_shortest(double value);

} // namespace fctdrem
