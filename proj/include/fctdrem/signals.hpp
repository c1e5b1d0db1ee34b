#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace fctdrem {

// =============================================================================
// Excitation / disturbance signals
// =============================================================================

namespace signal {

struct Zero {};

struct Constant {
    double value = 0.0;
};

/// amplitude * sin(omega * t + phase)
struct Sine {
    double amplitude = 1.0;
    double omega = 1.0;
    double phase = 0.0;
};

/// 1 / sqrt(t + offset), offset > 0
struct InverseSqrt {
    double offset = 1.0;
};

/// intercept + slope * t
struct Linear {
    double intercept = 0.0;
    double slope = 1.0;
};

} // namespace signal

/**
 * @brief Immutable, analytically evaluable scalar time function.
 *
 * Used for the regressor Delta(t), for the entries of a vector regressor
 * phi(t) and for deterministic measurement disturbances. Evaluation is a pure
 * function of t so integrator stages can sample it at arbitrary instants.
 */
class Signal {
public:
    Signal() = default;
    Signal(signal::Zero s);
    Signal(signal::Constant s);
    Signal(signal::Sine s);
    Signal(signal::InverseSqrt s);   // throws std::invalid_argument if offset <= 0
    Signal(signal::Linear s);

    /// Sum of the terms, evaluated left to right.
    static Signal sum(std::vector<Signal> terms);

    double operator()(double t) const;

    /// Upper bound on |s(t)| for t >= 0, if one exists in closed form.
    std::optional<double> abs_bound() const;

    /// Short human-readable form, e.g. "1*sin(0.314159*t+0)".
    std::string describe() const;

private:
    struct Sum {
        std::vector<Signal> terms;
    };
    using Node = std::variant<signal::Zero, signal::Constant, signal::Sine,
                              signal::InverseSqrt, signal::Linear, Sum>;
    Node node_ = signal::Zero{};
};

/// eval_signal
inline double eval_signal(const Signal &s, double t) { return s(t); }

// =============================================================================
// Piecewise parameter profiles
// =============================================================================

/**
 * One piece of a parameter profile on [start, end).
 *
 * A constant segment has slope 0; a ramp evaluates to value + slope * (t - start).
 */
struct Segment {
    double start = 0.0;
    double end = std::numeric_limits<double>::infinity();
    double value = 0.0;
    double slope = 0.0;

    static Segment constant(double start, double end, double value) {
        return {start, end, value, 0.0};
    }
    static Segment ramp(double start, double end, double value, double slope) {
        return {start, end, value, slope};
    }
    bool is_ramp() const { return slope != 0.0; }
};

/// Right-continuous piecewise-linear scalar profile starting at t = 0.
class PiecewiseProfile {
public:
    /// Segments must start at 0, be contiguous, and the last must extend to +inf.
    explicit PiecewiseProfile(std::vector<Segment> segments);

    static PiecewiseProfile constant(double value);

    double operator()(double t) const;

    std::span<const Segment> segments() const { return segments_; }

    /// Start times of every segment after the first.
    std::vector<double> breakpoints() const;

    /// True if the profile has a single value on the closed interval [t0, t1].
    bool constant_on(double t0, double t1) const;

private:
    std::vector<Segment> segments_;
};

/**
 * Vector parameter theta(t) in R^q, one piecewise profile per component.
 */
class ParameterProfile {
public:
    explicit ParameterProfile(std::vector<PiecewiseProfile> components);
    ParameterProfile(PiecewiseProfile scalar);

    std::size_t dimension() const { return components_.size(); }
    const PiecewiseProfile &component(std::size_t i) const { return components_.at(i); }

    std::vector<double> operator()(double t) const;

    /// Union of all component breakpoints, sorted and deduplicated.
    std::vector<double> breakpoints() const;

    bool constant_on(double t0, double t1) const;

private:
    std::vector<PiecewiseProfile> components_;
};

/// eval_profile
inline std::vector<double> eval_profile(const ParameterProfile &p, double t) { return p(t); }

/// 10 on [0,10), 15 on [10,20), 15 - 0.5 (t - 20) on [20,30), 10 afterwards.
ParameterProfile jump_and_ramp_profile();

} // namespace fctdrem
