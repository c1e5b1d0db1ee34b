#include "fctdrem/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <toml.hpp>

#include "fctdrem/drem.hpp"
#include "fctdrem/errors.hpp"

namespace fctdrem {

namespace {

template <class... Ts> struct overloaded : Ts... {
    using Ts::operator()...;
};

constexpr std::pair<EstimatorKind, std::string_view> kKindNames[] = {
    {EstimatorKind::gradient, "gradient"},       {EstimatorKind::fct, "fct"},
    {EstimatorKind::fct_ap, "fct_ap"},           {EstimatorKind::alg1, "alg1"},
    {EstimatorKind::alg3, "alg3"},               {EstimatorKind::dt_gradient, "dt_gradient"},
    {EstimatorKind::dt_fct, "dt_fct"},           {EstimatorKind::dt_fct_ap, "dt_fct_ap"},
};

[[noreturn]] void fail(const std::string &path, const std::string &msg) {
    throw ConfigError(path + ": " + msg);
}

/// Reads a TOML table while tracking which keys were consumed.
class TableReader {
public:
    TableReader(const toml::table &table, std::string path) : table_(table), path_(std::move(path)) {}

    const std::string &path() const { return path_; }
    std::string field(std::string_view key) const {
        return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
    }

    bool has(std::string_view key) const { return table_.contains(key); }

    const toml::node *node(std::string_view key) {
        used_.insert(std::string(key));
        return table_.get(key);
    }

    std::optional<double> number(std::string_view key) {
        const toml::node *n = node(key);
        if (!n) {
            return std::nullopt;
        }
        if (auto v = n->as_floating_point()) {
            return v->get();
        }
        if (auto v = n->as_integer()) {
            return static_cast<double>(v->get());
        }
        fail(field(key), "expected a number");
    }

    double require_number(std::string_view key) {
        auto v = number(key);
        if (!v) {
            fail(field(key), "missing required number");
        }
        return *v;
    }

    std::optional<std::int64_t> integer(std::string_view key) {
        const toml::node *n = node(key);
        if (!n) {
            return std::nullopt;
        }
        if (auto v = n->as_integer()) {
            return v->get();
        }
        fail(field(key), "expected an integer");
    }

    std::optional<std::string> string(std::string_view key) {
        const toml::node *n = node(key);
        if (!n) {
            return std::nullopt;
        }
        if (auto v = n->as_string()) {
            return v->get();
        }
        fail(field(key), "expected a string");
    }

    std::string require_string(std::string_view key) {
        auto v = string(key);
        if (!v) {
            fail(field(key), "missing required string");
        }
        return *v;
    }

    const toml::table *table(std::string_view key) {
        const toml::node *n = node(key);
        if (!n) {
            return nullptr;
        }
        if (auto t = n->as_table()) {
            return t;
        }
        fail(field(key), "expected a table");
    }

    const toml::array *array(std::string_view key) {
        const toml::node *n = node(key);
        if (!n) {
            return nullptr;
        }
        if (auto a = n->as_array()) {
            return a;
        }
        fail(field(key), "expected an array");
    }

    /// Rejects any key that was never read.
    void finish() const {
        for (auto &&[k, v] : table_) {
            if (!used_.count(std::string(k.str()))) {
                fail(field(k.str()), "unknown key");
            }
        }
    }

private:
    const toml::table &table_;
    std::string path_;
    std::set<std::string> used_;
};

template <typename Fn>
auto with_context(const std::string &path, Fn &&fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const std::invalid_argument &e) {
        fail(path, e.what());
    } catch (const std::domain_error &e) {
        fail(path, e.what());
    }
}

const toml::table &as_table_element(const toml::node &n, const std::string &path) {
    if (auto t = n.as_table()) {
        return *t;
    }
    fail(path, "expected a table");
}

Signal parse_signal(const toml::table &table, const std::string &path) {
    TableReader r(table, path);
    const std::string kind = r.require_string("kind");
    Signal out;
    if (kind == "zero") {
        out = signal::Zero{};
    } else if (kind == "constant") {
        out = signal::Constant{r.require_number("value")};
    } else if (kind == "sine") {
        signal::Sine s;
        s.amplitude = r.number("amplitude").value_or(1.0);
        s.omega = r.require_number("omega");
        s.phase = r.number("phase").value_or(0.0);
        out = s;
    } else if (kind == "inverse_sqrt") {
        const double offset = r.number("offset").value_or(1.0);
        out = with_context(r.field("offset"), [&] { return Signal(signal::InverseSqrt{offset}); });
    } else if (kind == "linear") {
        out = signal::Linear{r.number("intercept").value_or(0.0), r.require_number("slope")};
    } else if (kind == "sum") {
        const toml::array *terms = r.array("terms");
        if (!terms || terms->empty()) {
            fail(r.field("terms"), "sum needs a non-empty array of signal tables");
        }
        std::vector<Signal> parts;
        for (std::size_t i = 0; i < terms->size(); ++i) {
            const std::string p = r.field("terms") + "[" + std::to_string(i) + "]";
            parts.push_back(parse_signal(as_table_element(*terms->get(i), p), p));
        }
        out = Signal::sum(std::move(parts));
    } else {
        fail(r.field("kind"), "unknown signal kind '" + kind + "'");
    }
    r.finish();
    return out;
}

PiecewiseProfile parse_component(const toml::table &table, const std::string &path) {
    TableReader r(table, path);
    const toml::array *segs = r.array("segments");
    if (!segs || segs->empty()) {
        fail(r.field("segments"), "need a non-empty array of segments");
    }
    std::vector<Segment> segments;
    for (std::size_t i = 0; i < segs->size(); ++i) {
        const std::string p = r.field("segments") + "[" + std::to_string(i) + "]";
        TableReader s(as_table_element(*segs->get(i), p), p);
        Segment seg;
        seg.start = s.require_number("start");
        const std::string kind = s.require_string("kind");
        seg.value = s.require_number("value");
        if (kind == "ramp") {
            seg.slope = s.require_number("slope");
        } else if (kind != "constant") {
            fail(s.field("kind"), "segment kind must be 'constant' or 'ramp'");
        }
        if (auto end = s.number("end")) {
            seg.end = *end;
        }
        s.finish();
        segments.push_back(seg);
    }
    r.finish();
    // implicit ends: each segment runs until the next one starts
    for (std::size_t i = 0; i + 1 < segments.size(); ++i) {
        if (std::isinf(segments[i].end)) {
            segments[i].end = segments[i + 1].start;
        }
    }
    return with_context(r.field("segments"), [&] { return PiecewiseProfile(std::move(segments)); });
}

/// `needs_bound` is set for Alg3 entries whose delta_max must come from the excitation.
RosterEntry parse_estimator(const toml::table &table, const std::string &path, bool &needs_bound) {
    TableReader r(table, path);
    RosterEntry e;
    const std::string kind = r.require_string("kind");
    auto parsed = parse_estimator_kind(kind);
    if (!parsed) {
        fail(r.field("kind"), "unknown estimator kind '" + kind + "'");
    }
    e.kind = *parsed;
    e.label = r.string("label").value_or(std::string(to_string(e.kind)));

    switch (e.kind) {
    case EstimatorKind::gradient:
    case EstimatorKind::fct:
    case EstimatorKind::fct_ap: {
        CtGains g;
        g.gamma = r.require_number("gamma");
        if (e.kind != EstimatorKind::gradient) {
            g.mu = r.require_number("mu");
        }
        if (e.kind == EstimatorKind::fct_ap) {
            g.t_window = r.require_number("t_window");
        }
        e.theta0 = r.number("theta0").value_or(0.0);
        e.gains = g;
        break;
    }
    case EstimatorKind::alg1: {
        Alg1Gains g;
        g.gamma = r.require_number("gamma");
        g.alpha = r.require_number("alpha");
        e.theta0 = r.number("theta0").value_or(0.0);
        e.gains = g;
        break;
    }
    case EstimatorKind::alg3: {
        Alg3Gains g;
        g.gamma = r.require_number("gamma");
        g.varsigma = r.require_number("varsigma");
        if (r.has("delta_max")) {
            const toml::node *n = r.node("delta_max");
            if (auto s = n->as_string()) {
                if (s->get() != "running") {
                    fail(r.field("delta_max"), "expected a number or \"running\"");
                }
            } else {
                g.delta_max = r.number("delta_max");
            }
        } else {
            needs_bound = true;
        }
        e.gains = g;
        break;
    }
    case EstimatorKind::dt_gradient:
    case EstimatorKind::dt_fct:
    case EstimatorKind::dt_fct_ap: {
        DtGains g;
        g.c = r.require_number("c");
        if (e.kind != EstimatorKind::dt_gradient) {
            g.rho = r.require_number("rho");
        }
        if (e.kind == EstimatorKind::dt_fct_ap) {
            auto d = r.integer("d");
            if (!d) {
                fail(r.field("d"), "missing required integer");
            }
            if (*d < 1) {
                fail(r.field("d"), "must be a positive integer");
            }
            g.d = static_cast<std::size_t>(*d);
        }
        e.theta0 = r.number("theta0").value_or(0.0);
        for (std::string_view key : {"gamma", "t_window"}) {
            if (auto v = r.number(key)) {
                e.recorded.emplace_back(std::string(key), *v);
            }
        }
        e.gains = g;
        break;
    }
    }
    r.finish();
    return e;
}

void sync_sampling_time(Scenario &scn) {
    for (auto &e : scn.roster) {
        if (auto *g = std::get_if<DtGains>(&e.gains)) {
            g->ts = scn.step;
        }
    }
}

} // namespace

// -----------------------------------------------------------------------------

std::string_view to_string(EstimatorKind kind) {
    for (auto [k, name] : kKindNames) {
        if (k == kind) {
            return name;
        }
    }
    return "unknown";
}

std::string_view to_string(Mode mode) { return mode == Mode::ct ? "ct" : "dt"; }

std::optional<EstimatorKind> parse_estimator_kind(std::string_view name) {
    for (auto [k, n] : kKindNames) {
        if (n == name) {
            return k;
        }
    }
    return std::nullopt;
}

bool is_discrete(EstimatorKind kind) {
    return kind == EstimatorKind::dt_gradient || kind == EstimatorKind::dt_fct ||
           kind == EstimatorKind::dt_fct_ap;
}

std::size_t Scenario::rows() const {
    const double r = horizon / (step * static_cast<double>(decimation));
    return static_cast<std::size_t>(std::floor(r + 1e-9 * std::max(1.0, r))) + 1;
}

void Scenario::validate() const {
    if (name.empty()) {
        fail("name", "must not be empty");
    }
    if (name.find_first_of("/\\ ") != std::string::npos) {
        fail("name", "must not contain path separators or spaces");
    }
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        fail("horizon", "must be positive");
    }
    if (!(step > 0.0) || !std::isfinite(step)) {
        fail("step", "must be positive");
    }
    if (step > horizon) {
        fail("step", "must not exceed the horizon");
    }
    if (decimation < 1) {
        fail("decimation", "must be at least 1");
    }
    if (roster.empty()) {
        fail("estimator", "roster must contain at least one estimator");
    }
    if (drem) {
        if (mode != Mode::dt) {
            fail("drem", "regressor extension and mixing is only available for dt scenarios");
        }
        if (drem->regressors.size() != theta.dimension()) {
            fail("drem.regressors", "need one regressor per parameter component (" +
                                        std::to_string(theta.dimension()) + ")");
        }
        with_context("drem.lags", [&] { validate_lags(drem->lags, theta.dimension()); });
        if (theta.dimension() > kMaxDremDimension) {
            fail("parameter", "at most " + std::to_string(kMaxDremDimension) + " components");
        }
    } else if (theta.dimension() != 1) {
        fail("parameter", "vector parameters need a [drem] section");
    }

    std::set<std::string> labels;
    for (std::size_t i = 0; i < roster.size(); ++i) {
        const auto &e = roster[i];
        const std::string path = "estimator[" + std::to_string(i) + "]";
        if (!labels.insert(e.label).second) {
            fail(path + ".label", "duplicate label '" + e.label + "'");
        }
        if (e.label.empty() || e.label.find_first_of(", \"") != std::string::npos) {
            fail(path + ".label", "must be non-empty without commas, quotes or spaces");
        }
        if (is_discrete(e.kind) != (mode == Mode::dt)) {
            fail(path + ".kind", "estimator '" + std::string(to_string(e.kind)) +
                                     "' is not available in " + std::string(to_string(mode)) +
                                     " scenarios");
        }
        if (!std::isfinite(e.theta0)) {
            fail(path + ".theta0", "must be finite");
        }
        std::visit(overloaded{
                       [&](const CtGains &g) {
                           with_context(path, [&] { g.validate(step); });
                       },
                       [&](const DtGains &g) { with_context(path, [&] { g.validate(); }); },
                       [&](const Alg1Gains &g) { with_context(path, [&] { g.validate(); }); },
                       [&](const Alg3Gains &g) { with_context(path, [&] { g.validate(); }); },
                   },
                   e.gains);
    }
}

Scenario parse_scenario_text(std::string_view text, std::string_view source_name) {
    toml::table doc;
    try {
        doc = toml::parse(text, source_name);
    } catch (const toml::parse_error &e) {
        std::ostringstream os;
        os << source_name << ":" << e.source().begin.line << ":" << e.source().begin.column
           << ": parse error: " << e.description();
        throw ConfigError(os.str());
    }

    TableReader r(doc, "");
    Scenario scn;
    scn.name = r.require_string("name");
    scn.description = r.string("description").value_or("");
    const std::string mode = r.require_string("mode");
    if (mode == "ct") {
        scn.mode = Mode::ct;
    } else if (mode == "dt") {
        scn.mode = Mode::dt;
        scn.decimation = 1;
    } else {
        fail("mode", "must be \"ct\" or \"dt\"");
    }
    scn.horizon = r.require_number("horizon");
    if (scn.mode == Mode::dt) {
        scn.step = r.require_number("step");
    } else {
        scn.step = r.number("step").value_or(1e-3);
    }
    if (auto dec = r.integer("decimation")) {
        if (*dec < 1) {
            fail("decimation", "must be at least 1");
        }
        scn.decimation = static_cast<std::size_t>(*dec);
    }

    // parameter components
    const toml::array *params = r.array("parameter");
    if (!params || params->empty()) {
        fail("parameter", "need at least one [[parameter]] table");
    }
    std::vector<PiecewiseProfile> comps;
    for (std::size_t i = 0; i < params->size(); ++i) {
        const std::string p = "parameter[" + std::to_string(i) + "]";
        comps.push_back(parse_component(as_table_element(*params->get(i), p), p));
    }
    scn.theta = ParameterProfile(std::move(comps));

    if (const toml::table *ex = r.table("excitation")) {
        scn.delta = parse_signal(*ex, "excitation");
    }
    if (const toml::table *drem = r.table("drem")) {
        if (r.has("excitation")) {
            fail("drem", "a scenario has either [excitation] or [drem], not both");
        }
        TableReader d(*drem, "drem");
        DremConfig cfg;
        const toml::array *regs = d.array("regressors");
        if (!regs) {
            fail("drem.regressors", "missing");
        }
        for (std::size_t i = 0; i < regs->size(); ++i) {
            const std::string p = "drem.regressors[" + std::to_string(i) + "]";
            cfg.regressors.push_back(parse_signal(as_table_element(*regs->get(i), p), p));
        }
        const toml::array *lags = d.array("lags");
        if (!lags) {
            fail("drem.lags", "missing");
        }
        for (std::size_t i = 0; i < lags->size(); ++i) {
            auto v = lags->get(i)->value<std::int64_t>();
            if (!v || *v < 0) {
                fail("drem.lags[" + std::to_string(i) + "]", "expected a non-negative integer");
            }
            cfg.lags.push_back(static_cast<std::size_t>(*v));
        }
        d.finish();
        scn.drem = std::move(cfg);
    } else if (!r.has("excitation")) {
        fail("excitation", "missing [excitation] table");
    }
    if (const toml::table *noise = r.table("noise")) {
        scn.noise = parse_signal(*noise, "noise");
    }

    const toml::array *ests = r.array("estimator");
    if (!ests || ests->empty()) {
        fail("estimator", "need at least one [[estimator]] table");
    }
    std::vector<std::size_t> unbounded;
    for (std::size_t i = 0; i < ests->size(); ++i) {
        const std::string p = "estimator[" + std::to_string(i) + "]";
        bool needs_bound = false;
        scn.roster.push_back(parse_estimator(as_table_element(*ests->get(i), p), p, needs_bound));
        if (needs_bound) {
            unbounded.push_back(i);
        }
    }
    r.finish();

    // Alg3 without an explicit delta_max uses the analytic excitation bound.
    for (std::size_t i : unbounded) {
        auto *g = std::get_if<Alg3Gains>(&scn.roster[i].gains);
        auto bound = scn.drem ? std::nullopt : scn.delta.abs_bound();
        if (!bound || !(*bound > 0.0)) {
            fail("estimator[" + std::to_string(i) + "].delta_max",
                 "no positive analytic bound on the excitation; set a number or \"running\"");
        }
        g->delta_max = *bound;
    }

    sync_sampling_time(scn);
    scn.validate();
    return scn;
}

Scenario parse_scenario(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open scenario file '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw IoError("failed reading scenario file '" + path.string() + "'");
    }
    return parse_scenario_text(buf.str(), path.string());
}

void apply_overrides(Scenario &scn, std::optional<double> step, std::optional<double> horizon) {
    if (step) {
        scn.step = *step;
    }
    if (horizon) {
        scn.horizon = *horizon;
    }
    sync_sampling_time(scn);
    scn.validate();
}

} // namespace fctdrem
