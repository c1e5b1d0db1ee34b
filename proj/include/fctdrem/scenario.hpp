#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "fctdrem/baselines.hpp"
#include "fctdrem/ct_estimator.hpp"
#include "fctdrem/dt_estimator.hpp"
#include "fctdrem/signals.hpp"

namespace fctdrem {

enum class Mode { ct, dt };

enum class EstimatorKind { gradient, fct, fct_ap, alg1, alg3, dt_gradient, dt_fct, dt_fct_ap };

std::string_view to_string(EstimatorKind kind);
std::string_view to_string(Mode mode);
std::optional<EstimatorKind> parse_estimator_kind(std::string_view name);
bool is_discrete(EstimatorKind kind);

using EstimatorGains = std::variant<CtGains, DtGains, Alg1Gains, Alg3Gains>;

struct RosterEntry {
    EstimatorKind kind = EstimatorKind::gradient;
    std::string label;          ///< column stem; defaults to the kind name
    double theta0 = 0.0;
    EstimatorGains gains;
    /// Gains accepted for provenance but not used by the recursions.
    std::vector<std::pair<std::string, double>> recorded;
};

/// Vector-regressor front end: delay-stacked extension + adjugate mixing.
struct DremConfig {
    std::vector<Signal> regressors;
    std::vector<std::size_t> lags;
};

/**
 * Complete experiment description.
 *
 * `step` is the integration step h for CT scenarios and the sampling time
 * T_s for DT scenarios.
 */
struct Scenario {
    std::string name;
    std::string description;
    Mode mode = Mode::ct;
    Signal delta;
    std::optional<DremConfig> drem;
    ParameterProfile theta = ParameterProfile(PiecewiseProfile::constant(0.0));
    std::optional<Signal> noise;
    double step = 1e-3;
    double horizon = 1.0;
    std::size_t decimation = 10;
    std::vector<RosterEntry> roster;

    /// Throws ConfigError naming the offending field.
    void validate() const;

    std::size_t dimension() const { return theta.dimension(); }

    /// floor(horizon / (step * decimation)) + 1
    std::size_t rows() const;

    /// Number of integration steps (CT) or samples (DT) advanced after k = 0.
    std::size_t total_steps() const { return (rows() - 1) * decimation; }
};

/// Parses and validates a TOML scenario document. Throws ConfigError.
Scenario parse_scenario_text(std::string_view text, std::string_view source_name = "<scenario>");

/// Reads and parses a scenario file. Throws IoError or ConfigError.
Scenario parse_scenario(const std::filesystem::path &path);

/// Applies --step / --horizon overrides and re-validates.
void apply_overrides(Scenario &scn, std::optional<double> step, std::optional<double> horizon);

} // namespace fctdrem
