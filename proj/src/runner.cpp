#include "fctdrem/runner.hpp"

#include <fstream>
#include <sstream>
#include <variant>

#include "fctdrem/drem.hpp"
#include "fctdrem/errors.hpp"
#include "fctdrem/lre.hpp"
#include "fctdrem/plots.hpp"

namespace fctdrem {

namespace {

template <class... Ts> struct overloaded : Ts... {
    using Ts::operator()...;
};

using Channel = std::variant<CtEstimator, Alg1Estimator, Alg3Estimator, DtEstimator>;

struct Member {
    const RosterEntry *entry;
    std::vector<Channel> channels;   // one per parameter component
};

Channel make_channel(const RosterEntry &e, double step) {
    return std::visit(overloaded{
                          [&](const CtGains &g) -> Channel { return CtEstimator(g, step, e.theta0); },
                          [&](const DtGains &g) -> Channel { return DtEstimator(g, e.theta0); },
                          [&](const Alg1Gains &g) -> Channel {
                              return Alg1Estimator(g, step, e.theta0);
                          },
                          [&](const Alg3Gains &g) -> Channel { return Alg3Estimator(g, step); },
                      },
                      e.gains);
}

std::vector<std::string_view> diagnostic_names(EstimatorKind kind) {
    switch (kind) {
    case EstimatorKind::fct:
    case EstimatorKind::dt_fct:
        return {"w", "w_c", "ie"};
    case EstimatorKind::fct_ap:
        return {"w_d", "w_d_c", "ie_window"};
    case EstimatorKind::dt_fct_ap:
        return {"w_d", "w_d_c"};
    default:
        return {};
    }
}

double estimate(EstimatorKind kind, const Channel &ch) {
    switch (kind) {
    case EstimatorKind::gradient:
        return std::get<CtEstimator>(ch).theta_hat();
    case EstimatorKind::fct:
        return std::get<CtEstimator>(ch).outputs().theta_fct;
    case EstimatorKind::fct_ap:
        return *std::get<CtEstimator>(ch).outputs().theta_fct_d;
    case EstimatorKind::alg1:
        return std::get<Alg1Estimator>(ch).theta_hat();
    case EstimatorKind::alg3:
        return std::get<Alg3Estimator>(ch).theta_hat();
    case EstimatorKind::dt_gradient:
        return std::get<DtEstimator>(ch).theta_hat();
    case EstimatorKind::dt_fct:
        return std::get<DtEstimator>(ch).fct();
    case EstimatorKind::dt_fct_ap:
        return std::get<DtEstimator>(ch).fct_ap();
    }
    return 0.0;
}

void append_diagnostics(EstimatorKind kind, const Channel &ch, std::vector<double> &row) {
    switch (kind) {
    case EstimatorKind::fct: {
        const auto o = std::get<CtEstimator>(ch).outputs();
        row.insert(row.end(), {o.w, o.w_c, o.ie_classic_met ? 1.0 : 0.0});
        break;
    }
    case EstimatorKind::fct_ap: {
        const auto o = std::get<CtEstimator>(ch).outputs();
        row.insert(row.end(), {*o.w_d, *o.w_d_c, *o.ie_window_met ? 1.0 : 0.0});
        break;
    }
    case EstimatorKind::dt_fct: {
        const auto o = std::get<DtEstimator>(ch).outputs();
        row.insert(row.end(), {o.w, o.w_c, o.ie_met ? 1.0 : 0.0});
        break;
    }
    case EstimatorKind::dt_fct_ap: {
        const auto o = std::get<DtEstimator>(ch).outputs();
        row.insert(row.end(), {o.w_d, o.w_d_c});
        break;
    }
    default:
        break;
    }
}

std::string suffix(std::size_t i, std::size_t q) {
    return q > 1 ? "_" + std::to_string(i + 1) : std::string();
}

std::vector<std::string> make_headers(const Scenario &scn) {
    const std::size_t q = scn.dimension();
    std::vector<std::string> h{scn.mode == Mode::ct ? "t" : "k", "delta"};
    for (std::size_t i = 0; i < q; ++i) {
        h.push_back("y_meas" + suffix(i, q));
    }
    for (std::size_t i = 0; i < q; ++i) {
        h.push_back("theta_true" + suffix(i, q));
    }
    for (const auto &e : scn.roster) {
        for (std::size_t i = 0; i < q; ++i) {
            h.push_back("theta_" + e.label + suffix(i, q));
        }
    }
    for (const auto &e : scn.roster) {
        for (std::size_t i = 0; i < q; ++i) {
            for (auto d : diagnostic_names(e.kind)) {
                h.push_back(e.label + "_" + std::string(d) + suffix(i, q));
            }
        }
    }
    return h;
}

std::vector<Member> make_members(const Scenario &scn) {
    std::vector<Member> members;
    for (const auto &e : scn.roster) {
        Member m{&e, {}};
        for (std::size_t i = 0; i < scn.dimension(); ++i) {
            m.channels.push_back(make_channel(e, scn.step));
        }
        members.push_back(std::move(m));
    }
    return members;
}

void emit_row(TrajectoryTable &table, const std::vector<Member> &members, double abscissa,
                double delta, const std::vector<double> &y, const std::vector<double> &theta) {
    std::vector<double> row{abscissa, delta};
    row.insert(row.end(), y.begin(), y.end());
    row.insert(row.end(), theta.begin(), theta.end());
    for (const auto &m : members) {
        for (const auto &ch : m.channels) {
            row.push_back(estimate(m.entry->kind, ch));
        }
    }
    for (const auto &m : members) {
        for (const auto &ch : m.channels) {
            append_diagnostics(m.entry->kind, ch, row);
        }
    }
    table.append_row(row);
}

TrajectoryTable simulate_ct(const Scenario &scn, std::vector<Member> &members) {
    TrajectoryTable table(make_headers(scn), 1.0);
    const ScalarLre lre(scn.delta, scn.theta, scn.noise);
    const double h = scn.step;
    const std::size_t total = scn.total_steps();

    ScalarLreSample current = lre.sample(0.0);
    for (std::size_t n = 0;; ++n) {
        const double t = static_cast<double>(n) * h;
        if (n % scn.decimation == 0) {
            emit_row(table, members, t, current.delta, {current.y_meas},
                       {scn.theta.component(0)(t)});
        }
        if (n == total) {
            break;
        }
        const StageSamples stages{current, lre.sample((static_cast<double>(n) + 0.5) * h),
                                  lre.sample(static_cast<double>(n + 1) * h)};
        for (auto &m : members) {
            std::visit(overloaded{
                           [&](CtEstimator &e) { e.step(stages); },
                           [&](Alg1Estimator &e) { e.step(stages); },
                           [&](Alg3Estimator &e) { e.step(stages); },
                           [](DtEstimator &) {},
                       },
                       m.channels.front());
        }
        current = stages.end;
    }
    return table;
}

TrajectoryTable simulate_dt(const Scenario &scn, std::vector<Member> &members) {
    TrajectoryTable table(make_headers(scn), scn.step);
    const std::size_t q = scn.dimension();
    const std::size_t total = scn.total_steps();
    std::optional<DremMixer> mixer;
    std::optional<ScalarLre> lre;
    if (scn.drem) {
        mixer.emplace(q, scn.drem->lags);
    } else {
        lre.emplace(scn.delta, scn.theta, scn.noise);
    }

    std::vector<ScalarLreSample> samples(q);
    for (std::size_t n = 0; n <= total; ++n) {
        const auto k = static_cast<std::int64_t>(n);
        const double t = static_cast<double>(n) * scn.step;
        if (mixer) {
            auto mixed = mixer->push(
                make_vector_sample(scn.drem->regressors, scn.theta, t, k, scn.noise));
            for (std::size_t i = 0; i < q; ++i) {
                samples[i] = {t, k, mixed.delta, mixed.y_mixed(static_cast<Eigen::Index>(i))};
            }
        } else {
            samples[0] = lre->sample(t, k);
        }

        if (n % scn.decimation == 0) {
            std::vector<double> y;
            for (const auto &s : samples) {
                y.push_back(s.y_meas);
            }
            emit_row(table, members, static_cast<double>(n), samples[0].delta, y, scn.theta(t));
        }
        if (n == total) {
            break;
        }
        for (auto &m : members) {
            for (std::size_t i = 0; i < q; ++i) {
                std::get<DtEstimator>(m.channels[i]).step(samples[i]);
            }
        }
    }
    return table;
}

std::string describe_gains(const RosterEntry &e) {
    const auto num = [](double v) { return format_shortest(v); };
    std::string out;
    std::visit(overloaded{
                   [&](const CtGains &g) {
                       out = "gamma=" + num(g.gamma);
                       if (e.kind != EstimatorKind::gradient) {
                           out += " mu=" + num(g.mu);
                       }
                       if (g.t_window > 0.0) {
                           out += " t_window=" + num(g.t_window);
                       }
                   },
                   [&](const DtGains &g) {
                       out = "c=" + num(g.c);
                       if (e.kind != EstimatorKind::dt_gradient) {
                           out += " rho=" + num(g.rho);
                       }
                       if (e.kind == EstimatorKind::dt_fct_ap) {
                           out += " d=" + std::to_string(g.d);
                       }
                       out += " ts=" + num(g.ts);
                   },
                   [&](const Alg1Gains &g) {
                       out = "gamma=" + num(g.gamma) + " alpha=" + num(g.alpha);
                   },
                   [&](const Alg3Gains &g) {
                       out = "gamma=" + num(g.gamma) + " varsigma=" + num(g.varsigma) +
                             " delta_max=" + (g.delta_max ? num(*g.delta_max) : "running");
                   },
               },
               e.gains);
    out += " theta0=" + num(e.theta0);
    for (const auto &[key, value] : e.recorded) {
        out += " " + key + "=" + num(value) + "(unused)";
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> make_metadata(const Scenario &scn,
                                                               const TrajectoryTable &table) {
    std::vector<std::pair<std::string, std::string>> md{
        {"name", scn.name},
        {"mode", std::string(to_string(scn.mode))},
        {"step", format_shortest(scn.step)},
        {"horizon", format_shortest(scn.horizon)},
        {"decimation", std::to_string(scn.decimation)},
        {"rows", std::to_string(table.rows())},
    };
    if (scn.mode == Mode::ct) {
        md.emplace_back("integrator", "fixed-step rk4; excitation integral by simpson");
    } else {
        md.emplace_back("integrator", "exact discrete recursion");
    }
    if (scn.drem) {
        std::string lags;
        for (auto l : scn.drem->lags) {
            lags += (lags.empty() ? "" : " ") + std::to_string(l);
        }
        md.emplace_back("drem_lags", lags);
    } else {
        md.emplace_back("excitation", scn.delta.describe());
    }
    if (scn.noise) {
        md.emplace_back("noise", scn.noise->describe());
    }
    for (const auto &e : scn.roster) {
        md.emplace_back("estimator." + e.label,
                        std::string(to_string(e.kind)) + " " + describe_gains(e));
    }
    return md;
}

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        out += c;
        if (c == '"') {
            out += '"';
        }
    }
    return out + "\"";
}

std::string optional_number(const std::optional<double> &v) {
    return v ? format_shortest(*v) : std::string();
}

template <typename Fn>
void write_file(const std::filesystem::path &path, Fn &&fn) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    fn(out);
    out.flush();
    if (!out) {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

} // namespace

double default_hold(Mode mode) { return mode == Mode::ct ? 0.5 : 2.0; }

RunResult simulate(const Scenario &scn) {
    scn.validate();
    auto members = make_members(scn);
    TrajectoryTable table =
        scn.mode == Mode::ct ? simulate_ct(scn, members) : simulate_dt(scn, members);

    // interval edges in abscissa units: run start, profile breakpoints, run end
    const double to_abscissa = 1.0 / table.time_scale();
    const double end = table.abscissa().back();
    std::vector<double> edges{0.0};
    for (double b : scn.theta.breakpoints()) {
        const double x = b * to_abscissa;
        if (x > 0.0 && x < end) {
            edges.push_back(x);
        }
    }
    edges.push_back(end);

    const std::size_t q = scn.dimension();
    const double hold = std::max(default_hold(scn.mode), table.spacing());
    std::vector<ConvergenceReport> reports;
    if (table.rows() >= 2) {
        for (const auto &e : scn.roster) {
            for (std::size_t i = 0; i < q; ++i) {
                reports.push_back(summarize(table, "theta_" + e.label + suffix(i, q),
                                            scn.theta.component(i), kDefaultEpsilon, hold, edges));
            }
        }
    }
    auto metadata = make_metadata(scn, table);
    return {std::move(table), std::move(reports), std::move(metadata)};
}

void write_summary_csv(std::ostream &os, const std::vector<ConvergenceReport> &reports) {
    os << "estimator,epsilon,hold,interval_start,interval_end,hit_time,rms\n";
    for (const auto &r : reports) {
        os << r.estimator << ',' << format_shortest(r.epsilon) << ',' << format_shortest(r.hold)
           << ",0," << format_shortest(r.end) << ',' << optional_number(r.hit_time) << ','
           << format_shortest(r.rms) << '\n';
        for (const auto &iv : r.intervals) {
            os << r.estimator << ',' << format_shortest(r.epsilon) << ','
               << format_shortest(r.hold) << ',' << format_shortest(iv.t0) << ','
               << format_shortest(iv.t1) << ',' << optional_number(iv.hit_time) << ','
               << format_shortest(iv.rms) << '\n';
        }
    }
}

RunResult run_scenario(const Scenario &scn, const std::filesystem::path &out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec || !std::filesystem::is_directory(out_dir)) {
        throw IoError("cannot create output directory '" + out_dir.string() + "'" +
                      (ec ? ": " + ec.message() : std::string()));
    }

    RunResult result = simulate(scn);
    write_file(out_dir / (scn.name + "_trajectory.csv"),
               [&](std::ostream &os) { result.table.write_csv(os); });
    write_file(out_dir / (scn.name + "_summary.csv"),
               [&](std::ostream &os) { write_summary_csv(os, result.reports); });
    write_file(out_dir / (scn.name + "_meta.csv"), [&](std::ostream &os) {
        os << "key,value\n";
        for (const auto &[k, v] : result.metadata) {
            os << csv_field(k) << ',' << csv_field(v) << '\n';
        }
    });
    emit_plots(result.table, scn.name, out_dir);
    return result;
}

} // namespace fctdrem
