#include "fockng/nongauss.hpp"

#include <cmath>
#include <stdexcept>

#include "fockng/compensated.hpp"
#include "fockng/hypergeometric.hpp"

namespace fockng {

namespace {

// Probabilities below this are treated as exact zeros in entropy sums.
constexpr double kEntropyFloor = 1e-300;

}  // namespace

double AssociateGaussian::prob(std::size_t n) const {
    return std::pow(sigma, static_cast<double>(n)) / (mean_occupancy + 1.0);
}

AssociateGaussian associate_gaussian(const FockDiagonalState& state) {
    const double mean = mean_photon(state);
    return AssociateGaussian{mean, mean / (mean + 1.0)};
}

double delta_hs(const FockDiagonalState& state) {
    const double pur = purity(state);
    if (!(pur > 0.0)) {
        throw std::domain_error("delta_hs: state has vanishing purity");
    }
    const AssociateGaussian ref = associate_gaussian(state);
    const double mean = ref.mean_occupancy;
    const double g = generating_function(state, ref.sigma);
    const double bracket =
        1.0 / (2.0 * mean + 1.0) - 2.0 / (mean + 1.0) * g;
    // the exact zero of a thermal state can land a few ulp negative
    return std::max(0.0, 0.5 + bracket / (2.0 * pur));
}

double delta_re(const FockDiagonalState& state) {
    const double mean = mean_photon(state);
    CompensatedSum entropy;
    for (double p : state.probs()) {
        if (p > kEntropyFloor) entropy.add(p * std::log(p));
    }
    double result = entropy.value() + (mean + 1.0) * std::log1p(mean);
    if (mean > 0.0) result -= mean * std::log(mean);
    return std::max(0.0, result);
}

double delta_bures(const FockDiagonalState& state) {
    const AssociateGaussian ref = associate_gaussian(state);
    const double sqrt_sigma = std::sqrt(ref.sigma);
    const double s0 = 1.0 / std::sqrt(ref.mean_occupancy + 1.0);
    CompensatedSum overlap;
    double sqrt_s = s0;  // sqrt(s_n), advanced by sqrt(sigma) per index
    for (double p : state.probs()) {
        overlap.add(std::sqrt(p) * sqrt_s);
        sqrt_s *= sqrt_sigma;
    }
    return std::max(0.0, 1.0 - overlap.value());
}

double delta_hs_psts_closed(const ThermalParams& params, int m) {
    if (m < 0) {
        throw std::domain_error("delta_hs_psts_closed: m must be non-negative");
    }
    if (m >= 1 && params.nbar == 0.0) {
        throw std::domain_error(
            "delta_hs_psts_closed: nbar = 0 with m >= 1 is outside the "
            "subtracted-state domain");
    }
    const double nbar = params.nbar;
    const double two_nbar_1 = 2.0 * nbar + 1.0;
    const double prefactor =
        std::pow(two_nbar_1, m) /
        (2.0 * legendre_p(m, 1.0 + 2.0 * nbar * nbar / two_nbar_1));
    const double first = 1.0 / (1.0 + 2.0 * m * nbar / two_nbar_1);
    const double gen = std::pow(((m + 1.0) * nbar + 1.0) / ((m + 2.0) * nbar + 1.0),
                                static_cast<double>(m));
    const double second = 2.0 / (1.0 + m * nbar / two_nbar_1) * gen;
    return 0.5 + prefactor * (first - second);
}

NonGaussMeasures measures(const FockDiagonalState& state) {
    return NonGaussMeasures{delta_hs(state), delta_re(state),
                            delta_bures(state)};
}

}  // namespace fockng
