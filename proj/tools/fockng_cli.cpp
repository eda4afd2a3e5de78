// Command-line front end: figure sweeps to CSV, single-shot measure queries,
// and damping trajectories.

#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fockng/damping.hpp"
#include "fockng/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitIo = 2;

struct FigureOptions {
    std::string figure;
    std::string out_path;
    std::string measures = "hs,re,fid";
    double tol = fockng::kDefaultTruncTol;
    double gamma_t_max = -1.0;  // negative: keep preset
};

int run_figure_cmd(const FigureOptions& opt) {
    fockng::SweepConfig config =
        fockng::figure_preset(fockng::figure_id_from_string(opt.figure));
    config.measures_sel = fockng::parse_measure_list(opt.measures);
    config.trunc_tol = opt.tol;
    config.output_path =
        opt.out_path.empty() ? opt.figure + ".csv" : opt.out_path;
    if (opt.gamma_t_max >= 0.0) {
        if (config.figure_id != fockng::FigureId::fig3 &&
            config.figure_id != fockng::FigureId::fig4) {
            throw std::invalid_argument(
                "--gamma-t-max applies to fig3 and fig4 only");
        }
        config.gamma_t_max = opt.gamma_t_max;
    }
    fockng::run_figure(config);
    return kExitOk;
}

struct MeasureOptions {
    std::string kind;
    double nbar = 0.0;
    int m = 0;
};

int run_measure_cmd(const MeasureOptions& opt) {
    fockng::query_measures(fockng::state_kind_from_string(opt.kind), opt.nbar,
                           opt.m, std::cout);
    return kExitOk;
}

struct EvolveOptions {
    std::string kind;
    double nbar = 0.0;
    int m = 0;
    double nbar_r = 0.0;
    double gamma_t_max = 0.0;
    int steps = 0;
    std::string out_path;
};

int run_evolve_cmd(const EvolveOptions& opt) {
    if (opt.steps < 1) {
        throw std::invalid_argument("--steps must be at least 1");
    }
    if (opt.gamma_t_max <= 0.0) {
        throw std::invalid_argument("--gamma-t-max must be positive");
    }
    const fockng::StateKind state_kind =
        fockng::state_kind_from_string(opt.kind);
    if (state_kind == fockng::StateKind::thermal) {
        throw std::invalid_argument("evolve expects kind psts or pats");
    }
    const fockng::ExcitationKind kind = state_kind == fockng::StateKind::pats
                                            ? fockng::ExcitationKind::added
                                            : fockng::ExcitationKind::subtracted;

    std::vector<fockng::TimePoint> times;
    for (int i = 0; i <= opt.steps; ++i) {
        times.push_back(fockng::TimePoint::from_gamma_t(
            i * (opt.gamma_t_max / opt.steps)));
    }
    const auto traj = fockng::trajectory(
        fockng::ThermalParams(opt.nbar), fockng::ExcitationSpec{kind, opt.m},
        fockng::DampingChannel(opt.nbar_r), times);

    std::ofstream file;
    if (!opt.out_path.empty()) {
        file.open(opt.out_path);
        if (!file) {
            throw std::ios_base::failure("cannot open output file: " +
                                         opt.out_path);
        }
    }
    std::ostream& os = opt.out_path.empty() ? std::cout : file;
    os << "gamma_t,mean_photon,delta_hs,delta_re,delta_f\n";
    char buf[32];
    const auto cell = [&](double v) {
        std::snprintf(buf, sizeof(buf), "%.16e", v);
        return std::string(buf);
    };
    for (const fockng::TrajectoryPoint& pt : traj) {
        os << cell(pt.gamma_t) << ',' << cell(pt.mean_photon) << ','
           << cell(pt.ng.hs) << ',' << cell(pt.ng.re) << ',' << cell(pt.ng.fid)
           << '\n';
    }
    os.flush();
    if (!os) {
        throw std::ios_base::failure("write failed: " + opt.out_path);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Fock-diagonal photon states, their distance-type non-Gaussianity "
        "measures, and closed-form thermal damping"};
    app.require_subcommand(1);

    FigureOptions fig;
    CLI::App* figure = app.add_subcommand(
        "figure", "Evaluate a preset parameter sweep and write it as CSV");
    figure->add_option("id", fig.figure, "Sweep preset: fig1|fig2|fig3|fig4")
        ->required();
    figure->add_option("--out", fig.out_path, "Output path (default <id>.csv)");
    figure->add_option("--measures", fig.measures,
                       "Comma-separated subset of hs,re,fid");
    figure->add_option("--tol", fig.tol, "Truncation tolerance");
    figure->add_option("--gamma-t-max", fig.gamma_t_max,
                       "Override the time-axis end (fig3/fig4 only)");

    MeasureOptions meas;
    CLI::App* measure = app.add_subcommand(
        "measure", "Print the non-Gaussianity measures of one state");
    measure->add_option("kind", meas.kind, "State kind: thermal|psts|pats")
        ->required();
    measure->add_option("--nbar", meas.nbar, "Seed thermal mean occupancy")
        ->required();
    measure->add_option("--m", meas.m, "Number of subtracted/added photons");

    EvolveOptions evo;
    CLI::App* evolve = app.add_subcommand(
        "evolve", "Follow the measures of a damped state over gamma*t");
    evolve->add_option("kind", evo.kind, "State kind: psts|pats")->required();
    evolve->add_option("--nbar", evo.nbar, "Seed thermal mean occupancy")
        ->required();
    evolve->add_option("--m", evo.m, "Number of subtracted/added photons")
        ->required();
    evolve->add_option("--nbar-r", evo.nbar_r, "Reservoir mean occupancy")
        ->required();
    evolve->add_option("--gamma-t-max", evo.gamma_t_max, "End of the time axis")
        ->required();
    evolve->add_option("--steps", evo.steps, "Number of time intervals")
        ->required();
    evolve->add_option("--out", evo.out_path, "Output path (default stdout)");

    try {
        app.parse(argc, argv);
        if (figure->parsed()) return run_figure_cmd(fig);
        if (measure->parsed()) return run_measure_cmd(meas);
        if (evolve->parsed()) return run_evolve_cmd(evo);
        return kExitConfig;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
}
