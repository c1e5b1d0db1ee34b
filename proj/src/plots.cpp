#include "fctdrem/plots.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fctdrem/errors.hpp"

namespace fctdrem {

namespace {

bool starts_with(const std::string &s, std::string_view prefix) {
    return s.rfind(prefix, 0) == 0;
}

} // namespace

std::string plot_script(const TrajectoryTable &table, const std::string &name) {
    if (table.empty()) {
        throw std::invalid_argument("cannot plot an empty trajectory");
    }
    std::vector<std::size_t> truth, estimates;
    for (std::size_t c = 0; c < table.cols(); ++c) {
        const auto &h = table.headers()[c];
        if (starts_with(h, "theta_true")) {
            truth.push_back(c);
        } else if (starts_with(h, "theta_")) {
            estimates.push_back(c);
        }
    }
    if (estimates.empty()) {
        throw std::invalid_argument("trajectory has no estimate columns to plot");
    }

    const bool discrete = table.headers().front() == "k";
    const std::string style = discrete ? "with points pt 7 ps 0.6" : "with lines lw 1.5";

    std::ostringstream os;
    os << "# gnuplot script for " << name << "_trajectory.csv\n"
       << "set datafile separator ','\n"
       << "set terminal pngcairo noenhanced size 900,500\n"
       << "set output '" << name << ".png'\n"
       << "set title '" << name << "'\n"
       << "set xlabel '" << (discrete ? "k" : "t [s]") << "'\n"
       << "set ylabel 'parameter'\n"
       << "set key outside right\n"
       << "set grid\n"
       << "plot \\\n";
    bool first = true;
    auto add = [&](std::size_t c, const std::string &with) {
        os << (first ? "  " : ", \\\n  ") << "'" << name << "_trajectory.csv' using 1:"
           << c + 1 << " skip 1 " << with << " title '" << table.headers()[c]
           << "'";
        first = false;
    };
    for (auto c : truth) {
        add(c, "with lines lw 2 dt 2 lc rgb 'black'");
    }
    for (auto c : estimates) {
        add(c, style);
    }
    os << "\n";
    return os.str();
}

std::filesystem::path emit_plots(const TrajectoryTable &table, const std::string &name,
                                 const std::filesystem::path &out_dir) {
    const std::string script = plot_script(table, name);
    const auto path = out_dir / (name + ".gp");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out << script;
    if (!out.flush()) {
        throw IoError("failed writing '" + path.string() + "'");
    }
    return path;
}

} // namespace fctdrem
