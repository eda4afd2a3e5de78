#pragma once

#include <span>
#include <vector>

#include "fockng/fock_state.hpp"
#include "fockng/nongauss.hpp"

namespace fockng {

class TimePoint;

/// Thermal reservoir driving the dissipative evolution: mean occupancy
/// nbar_r >= 0 and decay rate gamma > 0. All formulas depend on time only
/// through the dimensionless product gamma*t, carried by TimePoint.
struct DampingChannel {
    double nbar_r;
    double gamma;

    explicit DampingChannel(double nbar_r_, double gamma_ = 1.0);

    /// Reservoir occupancy transferred by the given time,
    /// nbar_T(t) = nbar_r (1 - e^{-gamma t}).
    double nbar_t(const TimePoint& at) const;
};

/// Dimensionless elapsed time gamma*t >= 0 with its decay factor
/// e^{-gamma t} in (0, 1].
class TimePoint {
public:
    static TimePoint from_gamma_t(double gamma_t);
    /// Builds the time point from the decay factor itself, exact when a test
    /// grid is specified through e^{-gamma t}.
    static TimePoint from_decay(double decay);

    double gamma_t() const { return gamma_t_; }
    double decay() const { return decay_; }
    /// 1 - e^{-gamma t}, kept separately so short times do not lose digits
    /// to cancellation.
    double one_minus_decay() const { return one_minus_decay_; }

private:
    TimePoint(double gamma_t, double decay, double one_minus_decay)
        : gamma_t_(gamma_t), decay_(decay), one_minus_decay_(one_minus_decay) {}

    double gamma_t_;
    double decay_;
    double one_minus_decay_;
};

/// Propagates a Fock-diagonal state through the damping channel using the
/// closed-form kernel of the quantum optical master equation. The kernel is
/// evaluated as a regularized double sum with non-negative terms only, so
/// reservoir occupancy 0 and short times need no special casing beyond
/// gamma*t = 0, which returns a copy. Runs the output rows in parallel when
/// OpenMP is enabled; results are identical to the serial variant.
FockDiagonalState evolve_fock_diagonal(const FockDiagonalState& initial,
                                       const DampingChannel& channel,
                                       const TimePoint& at);

/// Reference implementation: same element math, plain serial loop. Kept for
/// correctness tests and the benchmark.
FockDiagonalState evolve_fock_diagonal_serial(const FockDiagonalState& initial,
                                              const DampingChannel& channel,
                                              const TimePoint& at);

/// Mean occupancy of a damped m-photon-subtracted thermal state,
///   nbar (m+1) e^{-gamma t} + nbar_T(t).
double damped_mean_psts(const ThermalParams& params, int m,
                        const DampingChannel& channel, const TimePoint& at);

/// Closed-form photon-number distribution of a damped m-photon-subtracted
/// thermal state. Equals the kernel propagation of the initial distribution;
/// at gamma*t = 0 it reduces continuously to the undamped distribution.
FockDiagonalState damped_psts_distribution(const ThermalParams& params, int m,
                                           const DampingChannel& channel,
                                           const TimePoint& at,
                                           double trunc_tol = kDefaultTruncTol);

struct TrajectoryPoint {
    double gamma_t;
    NonGaussMeasures ng;
    double mean_photon;
};

/// Evolves the initial state to every requested time and evaluates the three
/// distance measures on the damped distribution. Times must be strictly
/// ascending and start at >= 0. Time points run in parallel; the output is
/// ordered like the input regardless of scheduling.
std::vector<TrajectoryPoint> trajectory(const ThermalParams& params,
                                        const ExcitationSpec& spec,
                                        const DampingChannel& channel,
                                        std::span<const TimePoint> times,
                                        double trunc_tol = kDefaultTruncTol);

}  // namespace fockng
