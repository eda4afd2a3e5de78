#include "fockng/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "fockng/damping.hpp"
#include "fockng/nongauss.hpp"

namespace fockng {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

std::string_view measure_name(Measure m) {
    switch (m) {
        case Measure::hs: return "delta_hs";
        case Measure::re: return "delta_re";
        case Measure::fid: return "delta_f";
    }
    throw std::logic_error("unknown Measure");
}

double picked(const NonGaussMeasures& ng, Measure m) {
    switch (m) {
        case Measure::hs: return ng.hs;
        case Measure::re: return ng.re;
        case Measure::fid: return ng.fid;
    }
    throw std::logic_error("unknown Measure");
}

void append_measures(std::string& row, const NonGaussMeasures& ng,
                     const std::vector<Measure>& sel) {
    for (Measure m : sel) {
        row += ',';
        row += fmt(picked(ng, m));
    }
}

void write_header(std::ostream& os, std::string_view sweep_columns,
                  const std::vector<Measure>& sel) {
    os << sweep_columns;
    for (Measure m : sel) os << ',' << measure_name(m);
    os << '\n';
}

void require(bool ok, const char* field) {
    if (!ok) {
        throw std::invalid_argument(std::string("invalid sweep config: ") +
                                    field);
    }
}

std::vector<TimePoint> time_grid(const SweepConfig& config) {
    const auto steps =
        static_cast<long>(std::llround(config.gamma_t_max / config.gamma_t_step));
    std::vector<TimePoint> times;
    times.reserve(steps + 1);
    for (long i = 0; i <= steps; ++i) {
        times.push_back(TimePoint::from_gamma_t(i * config.gamma_t_step));
    }
    return times;
}

void run_fig1(const SweepConfig& config, std::ostream& os) {
    require(!config.nbar_grid.empty(), "nbar_grid is empty");
    require(!config.m_grid.empty(), "m_grid is empty");
    const std::size_t rows = config.nbar_grid.size() * config.m_grid.size();
    std::vector<NonGaussMeasures> results(rows);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long idx = 0; idx < static_cast<long>(rows); ++idx) {
        const double nbar = config.nbar_grid[idx / config.m_grid.size()];
        const int m = config.m_grid[idx % config.m_grid.size()];
        results[idx] =
            measures(make_psts(ThermalParams(nbar), m, config.trunc_tol));
    }
    write_header(os, "nbar,M", config.measures_sel);
    for (std::size_t idx = 0; idx < rows; ++idx) {
        std::string row = fmt(config.nbar_grid[idx / config.m_grid.size()]);
        row += ',';
        row += std::to_string(config.m_grid[idx % config.m_grid.size()]);
        append_measures(row, results[idx], config.measures_sel);
        os << row << '\n';
    }
}

void run_fig2(const SweepConfig& config, std::ostream& os) {
    require(!config.m_grid.empty(), "m_grid is empty");
    require(!config.x_grid.empty(), "x_grid is empty");
    const std::size_t rows = config.m_grid.size() * config.x_grid.size();
    std::vector<NonGaussMeasures> results(rows);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long idx = 0; idx < static_cast<long>(rows); ++idx) {
        const int m = config.m_grid[idx / config.x_grid.size()];
        const double x = config.x_grid[idx % config.x_grid.size()];
        // x = 0 is the vacuum limit of the subtracted family; the state is
        // Gaussian there and every measure vanishes.
        const FockDiagonalState state =
            x == 0.0 ? make_thermal(ThermalParams(0.0), config.trunc_tol)
                     : make_psts(ThermalParams(x / (1.0 - x)), m,
                                 config.trunc_tol);
        results[idx] = measures(state);
    }
    write_header(os, "M,x", config.measures_sel);
    for (std::size_t idx = 0; idx < rows; ++idx) {
        std::string row =
            std::to_string(config.m_grid[idx / config.x_grid.size()]);
        row += ',';
        row += fmt(config.x_grid[idx % config.x_grid.size()]);
        append_measures(row, results[idx], config.measures_sel);
        os << row << '\n';
    }
}

void run_fig3(const SweepConfig& config, std::ostream& os) {
    require(!config.m_grid.empty(), "m_grid is empty");
    require(config.gamma_t_step > 0.0, "gamma_t_step must be positive");
    require(config.gamma_t_max >= 0.0, "gamma_t_max must be non-negative");
    const std::vector<TimePoint> times = time_grid(config);
    const DampingChannel channel(config.nbar_r);
    write_header(os, "M,gamma_t", config.measures_sel);
    for (int m : config.m_grid) {
        const auto traj =
            trajectory(ThermalParams(config.nbar),
                       ExcitationSpec{ExcitationKind::subtracted, m}, channel,
                       times, config.trunc_tol);
        for (const TrajectoryPoint& pt : traj) {
            std::string row = std::to_string(m);
            row += ',';
            row += fmt(pt.gamma_t);
            append_measures(row, pt.ng, config.measures_sel);
            os << row << '\n';
        }
    }
}

void run_fig4(const SweepConfig& config, std::ostream& os) {
    require(!config.m_grid.empty(), "m_grid is empty");
    require(config.gamma_t_step > 0.0, "gamma_t_step must be positive");
    require(config.gamma_t_max >= 0.0, "gamma_t_max must be non-negative");
    const std::vector<TimePoint> times = time_grid(config);
    const DampingChannel channel(config.nbar_r);
    write_header(os, "kind,M,gamma_t", config.measures_sel);
    for (ExcitationKind kind :
         {ExcitationKind::subtracted, ExcitationKind::added}) {
        for (int m : config.m_grid) {
            const auto traj =
                trajectory(ThermalParams(config.nbar), ExcitationSpec{kind, m},
                           channel, times, config.trunc_tol);
            const std::string_view label =
                kind == ExcitationKind::subtracted ? "psts" : "pats";
            for (const TrajectoryPoint& pt : traj) {
                std::string row{label};
                row += ',';
                row += std::to_string(m);
                row += ',';
                row += fmt(pt.gamma_t);
                append_measures(row, pt.ng, config.measures_sel);
                os << row << '\n';
            }
        }
    }
}

}  // namespace

FigureId figure_id_from_string(std::string_view name) {
    if (name == "fig1") return FigureId::fig1;
    if (name == "fig2") return FigureId::fig2;
    if (name == "fig3") return FigureId::fig3;
    if (name == "fig4") return FigureId::fig4;
    throw std::invalid_argument("unknown figure id: " + std::string(name));
}

std::vector<Measure> parse_measure_list(std::string_view csv) {
    std::vector<Measure> out;
    std::stringstream ss{std::string(csv)};
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "hs") {
            out.push_back(Measure::hs);
        } else if (item == "re") {
            out.push_back(Measure::re);
        } else if (item == "fid") {
            out.push_back(Measure::fid);
        } else {
            throw std::invalid_argument("unknown measure: " + item);
        }
    }
    if (out.empty()) throw std::invalid_argument("empty measure selection");
    return out;
}

SweepConfig figure_preset(FigureId id) {
    SweepConfig config;
    config.figure_id = id;
    switch (id) {
        case FigureId::fig1:
            config.nbar_grid = {0.1, 1.0, 2.0, 5.0};
            for (int m = 0; m <= 10; ++m) config.m_grid.push_back(m);
            break;
        case FigureId::fig2:
            config.m_grid = {1, 4, 5, 8, 9};
            for (int i = 0; i <= 19; ++i) config.x_grid.push_back(i * 0.05);
            break;
        case FigureId::fig3:
            config.m_grid = {1, 4, 5, 8, 9};
            break;
        case FigureId::fig4:
            config.m_grid = {1, 10};
            break;
    }
    return config;
}

void run_figure(const SweepConfig& config, std::ostream& os) {
    require(config.trunc_tol > 0.0, "trunc_tol must be positive");
    require(!config.measures_sel.empty(), "measure selection is empty");
    switch (config.figure_id) {
        case FigureId::fig1: run_fig1(config, os); return;
        case FigureId::fig2: run_fig2(config, os); return;
        case FigureId::fig3: run_fig3(config, os); return;
        case FigureId::fig4: run_fig4(config, os); return;
    }
    throw std::invalid_argument("invalid sweep config: figure_id");
}

void run_figure(const SweepConfig& config) {
    require(!config.output_path.empty(), "output_path is empty");
    std::ofstream os(config.output_path);
    if (!os) {
        throw std::ios_base::failure("cannot open output file: " +
                                     config.output_path);
    }
    run_figure(config, os);
    os.flush();
    if (!os) {
        throw std::ios_base::failure("write failed: " + config.output_path);
    }
}

void query_measures(StateKind kind, double nbar, int m, std::ostream& os,
                    double trunc_tol) {
    FockDiagonalState state = [&] {
        switch (kind) {
            case StateKind::thermal:
                return make_thermal(ThermalParams(nbar), trunc_tol);
            case StateKind::psts:
                return make_psts(ThermalParams(nbar), m, trunc_tol);
            case StateKind::pats:
                return make_pats(ThermalParams(nbar), m, trunc_tol);
        }
        throw std::logic_error("unknown StateKind");
    }();
    const NonGaussMeasures ng = measures(state);
    char buf[32];
    const auto line = [&](const char* name, double v) {
        std::snprintf(buf, sizeof(buf), "%.11e", v);
        os << name << buf << '\n';
    };
    line("delta_hs    = ", ng.hs);
    line("delta_re    = ", ng.re);
    line("delta_f     = ", ng.fid);
    line("mean_photon = ", mean_photon(state));
    line("purity      = ", purity(state));
}

}  // namespace fockng
