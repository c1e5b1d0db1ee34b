#include "fctdrem/signals.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fctdrem {

namespace {

template <class... Ts> struct overloaded : Ts... {
    using Ts::operator()...;
};

} // namespace

Signal::Signal(signal::Zero s) : node_(s) {}
Signal::Signal(signal::Constant s) : node_(s) {}
Signal::Signal(signal::Sine s) : node_(s) {}
Signal::Signal(signal::Linear s) : node_(s) {}

Signal::Signal(signal::InverseSqrt s) : node_(s) {
    if (!(s.offset > 0.0)) {
        throw std::invalid_argument("inverse_sqrt signal requires offset > 0");
    }
}

Signal Signal::sum(std::vector<Signal> terms) {
    Signal s;
    s.node_ = Sum{std::move(terms)};
    return s;
}

double Signal::operator()(double t) const {
    return std::visit(
        overloaded{
            [](const signal::Zero &) { return 0.0; },
            [](const signal::Constant &c) { return c.value; },
            [t](const signal::Sine &s) { return s.amplitude * std::sin(s.omega * t + s.phase); },
            [t](const signal::InverseSqrt &s) { return 1.0 / std::sqrt(t + s.offset); },
            [t](const signal::Linear &l) { return l.intercept + l.slope * t; },
            [t](const Sum &s) {
                double acc = 0.0;
                for (const auto &term : s.terms) {
                    acc += term(t);
                }
                return acc;
            },
        },
        node_);
}

std::optional<double> Signal::abs_bound() const {
    return std::visit(
        overloaded{
            [](const signal::Zero &) -> std::optional<double> { return 0.0; },
            [](const signal::Constant &c) -> std::optional<double> { return std::abs(c.value); },
            [](const signal::Sine &s) -> std::optional<double> { return std::abs(s.amplitude); },
            // decreasing in t, so the bound is attained at t = 0
            [](const signal::InverseSqrt &s) -> std::optional<double> {
                return 1.0 / std::sqrt(s.offset);
            },
            [](const signal::Linear &l) -> std::optional<double> {
                if (l.slope != 0.0) {
                    return std::nullopt;
                }
                return std::abs(l.intercept);
            },
            [](const Sum &s) -> std::optional<double> {
                double bound = 0.0;
                for (const auto &term : s.terms) {
                    auto b = term.abs_bound();
                    if (!b) {
                        return std::nullopt;
                    }
                    bound += *b;
                }
                return bound;
            },
        },
        node_);
}

std::string Signal::describe() const {
    std::ostringstream os;
    os.precision(6);
    std::visit(overloaded{
                   [&](const signal::Zero &) { os << "0"; },
                   [&](const signal::Constant &c) { os << c.value; },
                   [&](const signal::Sine &s) {
                       os << s.amplitude << "*sin(" << s.omega << "*t+" << s.phase << ")";
                   },
                   [&](const signal::InverseSqrt &s) { os << "1/sqrt(t+" << s.offset << ")"; },
                   [&](const signal::Linear &l) { os << l.intercept << "+" << l.slope << "*t"; },
                   [&](const Sum &s) {
                       for (std::size_t i = 0; i < s.terms.size(); ++i) {
                           os << (i ? " + " : "") << s.terms[i].describe();
                       }
                   },
               },
               node_);
    return os.str();
}

// -----------------------------------------------------------------------------

PiecewiseProfile::PiecewiseProfile(std::vector<Segment> segments) : segments_(std::move(segments)) {
    if (segments_.empty()) {
        throw std::invalid_argument("profile needs at least one segment");
    }
    if (segments_.front().start != 0.0) {
        throw std::invalid_argument("profile must start at t = 0");
    }
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        const auto &s = segments_[i];
        if (!std::isfinite(s.value) || !std::isfinite(s.slope)) {
            throw std::invalid_argument("profile segment " + std::to_string(i) +
                                        " has a non-finite value or slope");
        }
        if (!(s.end > s.start)) {
            throw std::invalid_argument("profile segment " + std::to_string(i) +
                                        " must have end > start");
        }
        if (i + 1 < segments_.size() && segments_[i + 1].start != s.end) {
            throw std::invalid_argument("profile segments " + std::to_string(i) + " and " +
                                        std::to_string(i + 1) + " are not contiguous");
        }
    }
    if (!std::isinf(segments_.back().end)) {
        throw std::invalid_argument("last profile segment must extend to +infinity");
    }
}

PiecewiseProfile PiecewiseProfile::constant(double value) {
    return PiecewiseProfile({Segment::constant(0.0, std::numeric_limits<double>::infinity(), value)});
}

double PiecewiseProfile::operator()(double t) const {
    if (t < 0.0) {
        throw std::domain_error("profile evaluated at negative time");
    }
    // last segment whose start is <= t: right-continuous at every boundary
    auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                               [](double v, const Segment &s) { return v < s.start; });
    const Segment &s = *std::prev(it);
    return s.slope == 0.0 ? s.value : s.value + s.slope * (t - s.start);
}

std::vector<double> PiecewiseProfile::breakpoints() const {
    std::vector<double> out;
    for (std::size_t i = 1; i < segments_.size(); ++i) {
        out.push_back(segments_[i].start);
    }
    return out;
}

bool PiecewiseProfile::constant_on(double t0, double t1) const {
    if (t1 < t0) {
        std::swap(t0, t1);
    }
    std::optional<double> value;
    for (const auto &s : segments_) {
        if (s.start > t1 || s.end <= t0) {
            continue;
        }
        if (s.slope != 0.0 && t1 > t0) {
            return false;
        }
        const double v = (*this)(std::max(t0, s.start));
        if (value && *value != v) {
            return false;
        }
        value = v;
    }
    return true;
}

// -----------------------------------------------------------------------------

ParameterProfile::ParameterProfile(std::vector<PiecewiseProfile> components)
    : components_(std::move(components)) {
    if (components_.empty()) {
        throw std::invalid_argument("parameter profile needs at least one component");
    }
}

ParameterProfile::ParameterProfile(PiecewiseProfile scalar) : components_{std::move(scalar)} {}

std::vector<double> ParameterProfile::operator()(double t) const {
    std::vector<double> out;
    out.reserve(components_.size());
    for (const auto &c : components_) {
        out.push_back(c(t));
    }
    return out;
}

std::vector<double> ParameterProfile::breakpoints() const {
    std::vector<double> out;
    for (const auto &c : components_) {
        auto b = c.breakpoints();
        out.insert(out.end(), b.begin(), b.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool ParameterProfile::constant_on(double t0, double t1) const {
    return std::all_of(components_.begin(), components_.end(),
                       [&](const PiecewiseProfile &c) { return c.constant_on(t0, t1); });
}

ParameterProfile jump_and_ramp_profile() {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return PiecewiseProfile({
        Segment::constant(0.0, 10.0, 10.0),
        Segment::constant(10.0, 20.0, 15.0),
        Segment::ramp(20.0, 30.0, 15.0, -0.5),
        Segment::constant(30.0, inf, 10.0),
    });
}

} // namespace fctdrem
