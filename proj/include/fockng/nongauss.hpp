#pragma once

#include "fockng/fock_state.hpp"

namespace fockng {

/// The reference Gaussian state of a Fock-diagonal state: the thermal state
/// with the same mean occupancy. Its photon-number probabilities are
/// s_n = sigma^n / (mean_occupancy + 1) with sigma = <n> / (<n> + 1).
struct AssociateGaussian {
    double mean_occupancy;
    double sigma;

    double prob(std::size_t n) const;
};

AssociateGaussian associate_gaussian(const FockDiagonalState& state);

/// Hilbert-Schmidt distance to the associate Gaussian,
///   1/2 + (1 / (2 Tr rho^2)) [ 1/(2<n>+1) - (2/(<n>+1)) G(sigma) ].
/// Zero exactly when the state is thermal.
double delta_hs(const FockDiagonalState& state);

/// Relative-entropy distance, natural-log units:
///   sum_n p_n ln p_n + (<n>+1) ln(<n>+1) - <n> ln <n>,
/// with 0 ln 0 = 0 and the last term dropped at <n> = 0.
double delta_re(const FockDiagonalState& state);

/// Fidelity-based (Bures) distance for commuting rho and reference,
///   1 - sum_n sqrt(p_n s_n).
/// Truncation error is below sqrt(state.tail_bound()).
double delta_bures(const FockDiagonalState& state);

/// Closed form of delta_hs for an m-photon-subtracted thermal state,
/// evaluated exactly as printed (Legendre-polynomial purity and the
/// generating function at sigma substituted into the distance).
double delta_hs_psts_closed(const ThermalParams& params, int m);

/// The triple (delta_hs, delta_re, delta_bures) of one state.
struct NonGaussMeasures {
    double hs;
    double re;
    double fid;
};

NonGaussMeasures measures(const FockDiagonalState& state);

}  // namespace fockng
