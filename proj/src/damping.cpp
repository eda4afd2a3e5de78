#include "fockng/damping.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fockng/compensated.hpp"
#include "fockng/hypergeometric.hpp"

namespace fockng {

namespace {

constexpr std::size_t kMaxCutoff = 1u << 24;

/// Precomputed quantities of the damping kernel at one time point.
struct KernelContext {
    double decay;          // e^{-gamma t}
    double n_t;            // nbar_r (1 - e^{-gamma t})
    double gain;           // (nbar_r + 1)(1 - e^{-gamma t})
    double log_decay;
    double log_n_t;
    double log_gain;
    double log_z;          // log(n_t + 1)
    std::vector<double> log_fact;

    double log_binom(int n, int k) const {
        return log_fact[n] - log_fact[k] - log_fact[n - k];
    }
};

KernelContext make_context(const DampingChannel& channel, const TimePoint& at,
                           std::size_t table_size) {
    KernelContext kc;
    kc.decay = at.decay();
    const double one_minus = at.one_minus_decay();
    kc.n_t = channel.nbar_r * one_minus;
    kc.gain = (channel.nbar_r + 1.0) * one_minus;
    kc.log_decay = std::log(kc.decay);
    kc.log_n_t = kc.n_t > 0.0 ? std::log(kc.n_t) : 0.0;
    kc.log_gain = kc.gain > 0.0 ? std::log(kc.gain) : 0.0;
    kc.log_z = std::log1p(kc.n_t);
    kc.log_fact.resize(table_size);
    for (std::size_t i = 0; i < table_size; ++i) {
        kc.log_fact[i] = std::lgamma(static_cast<double>(i) + 1.0);
    }
    return kc;
}

/// Transition probability from l initial quanta to j at the context's time.
///
/// The kernel is expanded as a sum of non-negative terms
///   s_k = C(j,k) C(l,k) decay^k n_t^{j-k} gain^{l-k} / (n_t+1)^{j+l+1},
/// which is finite for every admissible parameter choice, including a
/// zero-temperature reservoir. The element is summed outward from the peak
/// term, seeded once in log form; every s_k lies in [0, 1], so the linear
/// recurrences can neither overflow nor lose the dominant contribution.
double kernel_element(int j, int l, const KernelContext& kc) {
    if (kc.n_t == 0.0) {
        // Pure loss: binomial thinning of the initial occupancy.
        if (j > l) return 0.0;
        double lp = kc.log_binom(l, j) + j * kc.log_decay;
        if (l > j) lp += (l - j) * std::log1p(-kc.decay);
        return std::exp(lp);
    }

    const int k_max = std::min(j, l);
    const double up = kc.decay / (kc.n_t * kc.gain);

    // The term ratio s_{k+1}/s_k decreases with k; scan to the peak.
    int k_star = 0;
    while (k_star < k_max) {
        const double jk = static_cast<double>(j - k_star);
        const double lk = static_cast<double>(l - k_star);
        const double kp = k_star + 1.0;
        if (jk * lk * up <= kp * kp) break;
        ++k_star;
    }

    const double log_peak = kc.log_binom(j, k_star) + kc.log_binom(l, k_star) +
                            k_star * kc.log_decay +
                            (j - k_star) * kc.log_n_t +
                            (l - k_star) * kc.log_gain -
                            (j + l + 1.0) * kc.log_z;
    const double peak = std::exp(log_peak);
    if (peak == 0.0) return 0.0;

    CompensatedSum acc;
    acc.add(peak);
    const double down_factor = kc.n_t * kc.gain / kc.decay;
    double term = peak;
    for (int k = k_star - 1; k >= 0; --k) {
        const double kp = k + 1.0;
        term *= kp * kp * down_factor /
                (static_cast<double>(j - k) * static_cast<double>(l - k));
        if (term == 0.0) break;
        acc.add(term);
    }
    term = peak;
    for (int k = k_star + 1; k <= k_max; ++k) {
        term *= static_cast<double>(j - k + 1) * static_cast<double>(l - k + 1) *
                up / (static_cast<double>(k) * static_cast<double>(k));
        if (term == 0.0) break;
        acc.add(term);
    }
    return acc.value();
}

double output_row(int j, std::span<const double> initial,
                  const KernelContext& kc) {
    CompensatedSum acc;
    for (std::size_t l = 0; l < initial.size(); ++l) {
        if (initial[l] != 0.0) {
            acc.add(initial[l] * kernel_element(j, static_cast<int>(l), kc));
        }
    }
    return acc.value();
}

/// Cutoff needed for a thermal distribution with the given occupancy.
std::size_t thermal_support(double nbar, double tol) {
    if (nbar <= 0.0) return 0;
    const double x = nbar / (nbar + 1.0);
    return static_cast<std::size_t>(std::log(tol) / std::log(x)) + 1;
}

FockDiagonalState evolve_impl(const FockDiagonalState& initial,
                              const DampingChannel& channel,
                              const TimePoint& at, bool parallel) {
    if (at.gamma_t() == 0.0) return initial;  // identity channel

    const std::size_t input_size = initial.probs().size();
    // The evolved state can never converge below the mass already missing
    // from the truncated input.
    const double target_tail = initial.tail_bound() + initial.trunc_tol();

    std::size_t hi = input_size +
                     thermal_support(channel.nbar_r, initial.trunc_tol()) + 32;
    std::vector<double> out;
    std::size_t lo = 0;
    double tail = 1.0;
    while (true) {
        if (hi > kMaxCutoff) {
            throw std::length_error("evolve_fock_diagonal: cutoff exceeds cap");
        }
        KernelContext kc =
            make_context(channel, at, std::max(hi, input_size) + 1);
        out.resize(hi);
        const auto probs = initial.probs();
        if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8)
#endif
            for (long j = static_cast<long>(lo); j < static_cast<long>(hi);
                 ++j) {
                out[j] = output_row(static_cast<int>(j), probs, kc);
            }
        } else {
            for (std::size_t j = lo; j < hi; ++j) {
                out[j] = output_row(static_cast<int>(j), probs, kc);
            }
        }
        CompensatedSum total;
        for (double p : out) total.add(p);
        tail = std::max(0.0, 1.0 - total.value());
        if (tail <= target_tail) break;
        lo = hi;
        hi = 2 * hi + 16;
    }
    while (out.size() > 1 && out.back() == 0.0) out.pop_back();
    return FockDiagonalState(std::move(out), tail, initial.kind(),
                             initial.seed_nbar(), initial.excitation(),
                             target_tail);
}

}  // namespace

DampingChannel::DampingChannel(double nbar_r_, double gamma_)
    : nbar_r(nbar_r_), gamma(gamma_) {
    if (!(nbar_r_ >= 0.0) || !std::isfinite(nbar_r_)) {
        throw std::domain_error("DampingChannel: nbar_r must be finite and >= 0");
    }
    if (!(gamma_ > 0.0) || !std::isfinite(gamma_)) {
        throw std::domain_error("DampingChannel: gamma must be finite and > 0");
    }
}

double DampingChannel::nbar_t(const TimePoint& at) const {
    return nbar_r * at.one_minus_decay();
}

TimePoint TimePoint::from_gamma_t(double gamma_t) {
    if (!(gamma_t >= 0.0) || !std::isfinite(gamma_t)) {
        throw std::domain_error("TimePoint: gamma_t must be finite and >= 0");
    }
    return TimePoint(gamma_t, std::exp(-gamma_t), -std::expm1(-gamma_t));
}

TimePoint TimePoint::from_decay(double decay) {
    if (!(decay > 0.0 && decay <= 1.0)) {
        throw std::domain_error("TimePoint: decay factor must lie in (0, 1]");
    }
    return TimePoint(-std::log(decay), decay, 1.0 - decay);
}

FockDiagonalState evolve_fock_diagonal(const FockDiagonalState& initial,
                                       const DampingChannel& channel,
                                       const TimePoint& at) {
    return evolve_impl(initial, channel, at, true);
}

FockDiagonalState evolve_fock_diagonal_serial(const FockDiagonalState& initial,
                                              const DampingChannel& channel,
                                              const TimePoint& at) {
    return evolve_impl(initial, channel, at, false);
}

double damped_mean_psts(const ThermalParams& params, int m,
                        const DampingChannel& channel, const TimePoint& at) {
    if (m < 0) {
        throw std::domain_error("damped_mean_psts: m must be non-negative");
    }
    if (m >= 1 && params.nbar == 0.0) {
        throw std::domain_error("damped_mean_psts: nbar = 0 with m >= 1");
    }
    return params.nbar * (m + 1.0) * at.decay() + channel.nbar_t(at);
}

FockDiagonalState damped_psts_distribution(const ThermalParams& params, int m,
                                           const DampingChannel& channel,
                                           const TimePoint& at,
                                           double trunc_tol) {
    if (!(trunc_tol > 0.0)) {
        throw std::domain_error(
            "damped_psts_distribution: truncation tolerance must be positive");
    }
    if (m < 0) {
        throw std::domain_error(
            "damped_psts_distribution: m must be non-negative");
    }
    if (m >= 1 && params.nbar == 0.0) {
        throw std::domain_error("damped_psts_distribution: nbar = 0 with m >= 1");
    }
    const double n_t = channel.nbar_t(at);
    const double shifted = params.nbar * at.decay();  // nbar e^{-gamma t}
    const double occupancy = shifted + n_t;
    if (occupancy == 0.0) {
        // Vacuum start in a zero-temperature reservoir stays the vacuum.
        return FockDiagonalState({1.0}, 0.0, StateKind::psts, params.nbar, m,
                                 trunc_tol);
    }
    // Argument of the terminating hypergeometric factor, in [0, 1].
    const double w = shifted / ((n_t + 1.0) * occupancy);
    const double base = occupancy / (occupancy + 1.0);
    const double prefactor =
        std::pow(n_t + 1.0, m) / std::pow(occupancy + 1.0, m + 1.0);

    std::vector<double> probs;
    double bound = 0.0;
    double base_pow = 1.0;
    for (std::size_t n = 0;; ++n) {
        const double p =
            prefactor * base_pow *
            hyp2f1_terminating(m, -static_cast<double>(n), 1.0, w);
        probs.push_back(p);
        if (n >= static_cast<std::size_t>(m)) {
            // Beyond n the term ratio is at most q, giving a geometric bound
            // on the remaining mass.
            const double q = base * (n + 1.0) / (n + 1.0 - m);
            if (q < 1.0 && p * q / (1.0 - q) <= trunc_tol) {
                bound = p * q / (1.0 - q);
                break;
            }
        }
        if (n >= kMaxCutoff) {
            throw std::length_error(
                "damped_psts_distribution: cutoff exceeds cap");
        }
        base_pow *= base;
    }
    CompensatedSum total;
    for (double p : probs) total.add(p);
    const double tail = std::min(std::max(0.0, 1.0 - total.value()), bound);
    return FockDiagonalState(std::move(probs), tail, StateKind::psts,
                             params.nbar, m, trunc_tol);
}

std::vector<TrajectoryPoint> trajectory(const ThermalParams& params,
                                        const ExcitationSpec& spec,
                                        const DampingChannel& channel,
                                        std::span<const TimePoint> times,
                                        double trunc_tol) {
    if (times.empty()) {
        throw std::invalid_argument("trajectory: empty time grid");
    }
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i].gamma_t() >= 0.0)) {
            throw std::invalid_argument("trajectory: times must start at >= 0");
        }
        if (i > 0 && !(times[i].gamma_t() > times[i - 1].gamma_t())) {
            throw std::invalid_argument(
                "trajectory: times must be strictly ascending");
        }
    }
    const FockDiagonalState initial = make_state(params, spec, trunc_tol);
    std::vector<TrajectoryPoint> result(times.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long i = 0; i < static_cast<long>(times.size()); ++i) {
        const FockDiagonalState evolved =
            evolve_fock_diagonal(initial, channel, times[i]);
        result[i] = TrajectoryPoint{times[i].gamma_t(), measures(evolved),
                                    mean_photon(evolved)};
    }
    return result;
}

}  // namespace fockng
