#include "fctdrem/trajectory.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>
#include <stdexcept>
#include <unordered_set>

namespace fctdrem {

std::string format_shortest(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) {
        throw std::runtime_error("failed to format number");
    }
    return std::string(buf, ptr);
}

TrajectoryTable::TrajectoryTable(std::vector<std::string> headers, double time_scale)
    : headers_(std::move(headers)), columns_(headers_.size()), time_scale_(time_scale) {
    if (headers_.empty()) {
        throw std::invalid_argument("trajectory table needs at least one column");
    }
    std::unordered_set<std::string> seen;
    for (const auto &h : headers_) {
        if (!seen.insert(h).second) {
            throw std::invalid_argument("duplicate column header '" + h + "'");
        }
    }
}

void TrajectoryTable::append_row(std::span<const double> row) {
    if (row.size() != headers_.size()) {
        throw std::invalid_argument("row has " + std::to_string(row.size()) + " values, expected " +
                                    std::to_string(headers_.size()));
    }
    for (std::size_t c = 0; c < row.size(); ++c) {
        columns_[c].push_back(row[c]);
    }
    ++rows_;
}

bool TrajectoryTable::has_column(std::string_view name) const {
    return std::find(headers_.begin(), headers_.end(), name) != headers_.end();
}

std::size_t TrajectoryTable::column_index(std::string_view name) const {
    auto it = std::find(headers_.begin(), headers_.end(), name);
    if (it == headers_.end()) {
        throw std::out_of_range("unknown column '" + std::string(name) + "'");
    }
    return static_cast<std::size_t>(it - headers_.begin());
}

std::span<const double> TrajectoryTable::column(std::string_view name) const {
    return columns_[column_index(name)];
}

double TrajectoryTable::spacing() const {
    if (rows_ < 2) {
        return 0.0;
    }
    const auto &x = columns_.front();
    return (x.back() - x.front()) / static_cast<double>(rows_ - 1);
}

void TrajectoryTable::write_csv(std::ostream &os) const {
    for (std::size_t c = 0; c < headers_.size(); ++c) {
        os << (c ? "," : "") << headers_[c];
    }
    os << '\n';
    std::string line;
    for (std::size_t r = 0; r < rows_; ++r) {
        line.clear();
        for (std::size_t c = 0; c < columns_.size(); ++c) {
            if (c) {
                line += ',';
            }
            line += format_shortest(columns_[c][r]);
        }
        line += '\n';
        os << line;
    }
}

} // namespace fctdrem
