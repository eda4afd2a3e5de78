#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fockng/fock_state.hpp"

namespace fockng {

enum class FigureId { fig1, fig2, fig3, fig4 };

FigureId figure_id_from_string(std::string_view name);

enum class Measure { hs, re, fid };

std::vector<Measure> parse_measure_list(std::string_view csv);

/// One parameter sweep producing a CSV dataset.
///
/// fig1 sweeps the subtracted-photon number at fixed seed occupancies,
/// fig2 sweeps the thermal parameter x at fixed excitation numbers,
/// fig3 follows damped subtracted states over time,
/// fig4 follows matched subtracted and added states over time.
struct SweepConfig {
    FigureId figure_id = FigureId::fig1;

    std::vector<double> nbar_grid;  // fig1
    std::vector<int> m_grid;        // all figures
    std::vector<double> x_grid;     // fig2

    double nbar = 1.5;       // fig3, fig4: seed occupancy
    double nbar_r = 0.1;     // fig3, fig4: reservoir occupancy
    double gamma_t_max = 6.0;
    double gamma_t_step = 0.1;

    std::vector<Measure> measures_sel{Measure::hs, Measure::re, Measure::fid};
    std::string output_path;
    double trunc_tol = kDefaultTruncTol;
};

/// Grids filled with the preset parameter values of the chosen figure.
SweepConfig figure_preset(FigureId id);

/// Evaluates the sweep and writes the CSV dataset (header row, one row per
/// grid point, 17 significant digits, ',' separated, '\n' terminated).
/// Deterministic: identical config gives byte-identical output regardless of
/// thread count. Throws std::invalid_argument naming the offending field on
/// a bad configuration.
void run_figure(const SweepConfig& config, std::ostream& os);

/// Same, writing to config.output_path. Throws std::ios_base::failure when
/// the path cannot be opened.
void run_figure(const SweepConfig& config);

/// Builds the requested state and prints its three distance measures, mean
/// occupancy and purity with 12 significant digits.
void query_measures(StateKind kind, double nbar, int m, std::ostream& os,
                    double trunc_tol = kDefaultTruncTol);

}  // namespace fockng
