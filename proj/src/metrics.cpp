#include "fctdrem/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fctdrem {

namespace {

double tolerance(double x) { return 1e-9 * std::max(1.0, std::abs(x)); }

template <typename Fn>
std::size_t for_each_error(const TrajectoryTable &table, std::string_view column,
                           const PiecewiseProfile &target, double t0, double t1, Fn &&fn) {
    const auto x = table.abscissa();
    const auto v = table.column(column);
    std::size_t n = 0;
    for (std::size_t i = 0; i < table.rows(); ++i) {
        if (x[i] < t0 - tolerance(t0) || x[i] > t1 + tolerance(t1)) {
            continue;
        }
        fn(v[i] - target(x[i] * table.time_scale()));
        ++n;
    }
    return n;
}

} // namespace

std::optional<double> convergence_time(const TrajectoryTable &table, std::string_view column,
                                       const PiecewiseProfile &target,
                                       const ConvergenceCriteria &criteria) {
    const auto v = table.column(column);
    if (!(criteria.epsilon > 0.0)) {
        throw std::invalid_argument("epsilon must be positive");
    }
    const double step = table.spacing();
    if (criteria.hold < step - tolerance(step)) {
        throw std::invalid_argument("hold must cover at least one output step");
    }

    const auto x = table.abscissa();
    std::optional<std::size_t> run_start;
    for (std::size_t i = 0; i < table.rows(); ++i) {
        if (x[i] < criteria.search_from - tolerance(criteria.search_from)) {
            continue;
        }
        if (x[i] >= criteria.search_to) {
            break;
        }
        const double err = std::abs(v[i] - target(x[i] * table.time_scale()));
        if (!(err <= criteria.epsilon)) {
            run_start.reset();
            continue;
        }
        if (!run_start) {
            run_start = i;
        }
        if (x[i] - x[*run_start] >= criteria.hold - tolerance(criteria.hold)) {
            return x[*run_start];
        }
    }
    return std::nullopt;
}

double interval_rms(const TrajectoryTable &table, std::string_view column,
                    const PiecewiseProfile &target, double t0, double t1) {
    double sum_sq = 0.0;
    const auto n =
        for_each_error(table, column, target, t0, t1, [&](double e) { sum_sq += e * e; });
    if (n == 0) {
        throw std::invalid_argument("no output samples in the requested interval");
    }
    return std::sqrt(sum_sq / static_cast<double>(n));
}

double interval_max_abs_error(const TrajectoryTable &table, std::string_view column,
                              const PiecewiseProfile &target, double t0, double t1) {
    double worst = 0.0;
    const auto n = for_each_error(table, column, target, t0, t1, [&](double e) {
        worst = std::isnan(e) ? e : std::max(worst, std::abs(e));
    });
    if (n == 0) {
        throw std::invalid_argument("no output samples in the requested interval");
    }
    return worst;
}

ConvergenceReport summarize(const TrajectoryTable &table, std::string_view column,
                            const PiecewiseProfile &target, double epsilon, double hold,
                            const std::vector<double> &edges) {
    if (table.empty()) {
        throw std::invalid_argument("cannot summarize an empty trajectory");
    }
    ConvergenceReport report;
    report.estimator = std::string(column);
    report.epsilon = epsilon;
    report.hold = hold;
    report.end = table.abscissa().back();
    report.hit_time = convergence_time(table, column, target, {epsilon, hold, 0.0});
    report.rms = interval_rms(table, column, target, table.abscissa().front(), report.end);

    const double half_step = 0.5 * table.spacing();
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        IntervalStat stat;
        stat.t0 = edges[i];
        stat.t1 = edges[i + 1];
        stat.hit_time = convergence_time(table, column, target, {epsilon, hold, stat.t0, stat.t1});
        const bool last = i + 2 == edges.size();
        stat.rms = interval_rms(table, column, target, stat.t0, last ? stat.t1 : stat.t1 - half_step);
        report.intervals.push_back(stat);
    }
    return report;
}

} // namespace fctdrem
