#include "fockng/fock_state.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "fockng/compensated.hpp"
#include "fockng/hypergeometric.hpp"

namespace fockng {

namespace {

constexpr std::size_t kMaxCutoff = 1u << 24;

void require_positive_tol(double trunc_tol) {
    if (!(trunc_tol > 0.0)) {
        throw std::domain_error("truncation tolerance must be positive");
    }
}

/// Leftover mass above the cutoff, computed as the complement of the
/// retained sum. Exact for a normalized distribution, and never larger than
/// the geometric majorant used by the stopping rules.
double complement_tail(const std::vector<double>& probs) {
    CompensatedSum acc;
    for (double p : probs) acc.add(p);
    return std::max(0.0, 1.0 - acc.value());
}

/// p_n = (1-x) x^n truncated where the geometric tail x^{N+1} drops below
/// trunc_tol. Shared by the thermal constructor and the m = 0 excitation
/// cases so those produce bit-identical distributions. Returns the retained
/// probabilities and the certified tail: the complement of the retained sum,
/// capped by the analytic geometric bound so rounding in the sum cannot push
/// the stored tail above trunc_tol.
std::pair<std::vector<double>, double> geometric_probs(double x,
                                                       double trunc_tol) {
    std::vector<double> probs;
    double p = 1.0 - x;
    double geometric_tail = x;
    for (std::size_t n = 0;; ++n) {
        probs.push_back(p);
        if (geometric_tail <= trunc_tol || x == 0.0) break;
        if (n >= kMaxCutoff) {
            throw std::length_error("geometric_probs: cutoff exceeds hard cap");
        }
        p *= x;
        geometric_tail *= x;
    }
    const double bound = x == 0.0 ? 0.0 : geometric_tail;
    const double tail = std::min(complement_tail(probs), bound);
    return {std::move(probs), tail};
}

}  // namespace

ThermalParams::ThermalParams(double nbar_) : nbar(nbar_) {
    if (!(nbar_ >= 0.0) || !std::isfinite(nbar_)) {
        throw std::domain_error("ThermalParams: nbar must be finite and >= 0");
    }
    x = nbar_ / (nbar_ + 1.0);
}

std::string_view to_string(StateKind kind) {
    switch (kind) {
        case StateKind::thermal: return "thermal";
        case StateKind::psts: return "psts";
        case StateKind::pats: return "pats";
    }
    throw std::logic_error("unknown StateKind");
}

StateKind state_kind_from_string(std::string_view name) {
    if (name == "thermal") return StateKind::thermal;
    if (name == "psts") return StateKind::psts;
    if (name == "pats") return StateKind::pats;
    throw std::invalid_argument("unknown state kind: " + std::string(name));
}

FockDiagonalState::FockDiagonalState(std::vector<double> probs,
                                     double tail_bound, StateKind kind,
                                     double seed_nbar, int excitation,
                                     double trunc_tol)
    : probs_(std::move(probs)),
      tail_bound_(tail_bound),
      trunc_tol_(trunc_tol),
      kind_(kind),
      seed_nbar_(seed_nbar),
      excitation_(excitation) {
    if (probs_.empty()) {
        throw std::invalid_argument("FockDiagonalState: empty distribution");
    }
    CompensatedSum acc;
    for (double p : probs_) {
        if (!(p >= 0.0)) {
            throw std::invalid_argument(
                "FockDiagonalState: negative probability");
        }
        acc.add(p);
    }
    const double total = acc.value() + tail_bound_;
    if (std::abs(total - 1.0) > 1e-12) {
        throw std::invalid_argument(
            "FockDiagonalState: probabilities plus tail deviate from 1 by " +
            std::to_string(total - 1.0));
    }
}

FockDiagonalState make_thermal(const ThermalParams& params, double trunc_tol) {
    require_positive_tol(trunc_tol);
    auto [probs, tail] = geometric_probs(params.x, trunc_tol);
    return FockDiagonalState(std::move(probs), tail, StateKind::thermal,
                             params.nbar, 0, trunc_tol);
}

FockDiagonalState make_psts(const ThermalParams& params, int m,
                            double trunc_tol) {
    require_positive_tol(trunc_tol);
    if (m < 0) throw std::domain_error("make_psts: m must be non-negative");
    if (m >= 1 && params.nbar == 0.0) {
        throw std::domain_error(
            "make_psts: nbar = 0 with m >= 1 leaves the subtracted state "
            "unnormalizable");
    }
    const double x = params.x;
    if (m == 0) {
        auto [probs, tail] = geometric_probs(x, trunc_tol);
        return FockDiagonalState(std::move(probs), tail, StateKind::psts,
                                 params.nbar, 0, trunc_tol);
    }
    std::vector<double> probs;
    double bound = 0.0;
    double p = std::pow(1.0 - x, m + 1);
    for (std::size_t n = 0;; ++n) {
        probs.push_back(p);
        const double next = p * x * (n + 1.0 + m) / (n + 1.0);
        // For indices past n the term ratio is at most q, so the remaining
        // mass is below next / (1 - q).
        const double q = x * (n + 2.0 + m) / (n + 2.0);
        if (x == 0.0 || (q < 1.0 && next / (1.0 - q) <= trunc_tol)) {
            bound = x == 0.0 ? 0.0 : next / (1.0 - q);
            break;
        }
        if (n >= kMaxCutoff) {
            throw std::length_error("make_psts: cutoff exceeds hard cap");
        }
        p = next;
    }
    const double tail = std::min(complement_tail(probs), bound);
    return FockDiagonalState(std::move(probs), tail, StateKind::psts,
                             params.nbar, m, trunc_tol);
}

FockDiagonalState make_pats(const ThermalParams& params, int m,
                            double trunc_tol) {
    require_positive_tol(trunc_tol);
    if (m < 0) throw std::domain_error("make_pats: m must be non-negative");
    const double x = params.x;
    if (m == 0) {
        auto [probs, tail] = geometric_probs(x, trunc_tol);
        return FockDiagonalState(std::move(probs), tail, StateKind::pats,
                                 params.nbar, 0, trunc_tol);
    }
    std::vector<double> probs(m, 0.0);
    double bound = 0.0;
    double p = std::pow(1.0 - x, m + 1);
    for (std::size_t n = m;; ++n) {
        probs.push_back(p);
        const double next = p * x * (n + 1.0) / (n + 1.0 - m);
        const double q = x * (n + 2.0) / (n + 2.0 - m);
        if (x == 0.0 || (q < 1.0 && next / (1.0 - q) <= trunc_tol)) {
            bound = x == 0.0 ? 0.0 : next / (1.0 - q);
            break;
        }
        if (n >= kMaxCutoff) {
            throw std::length_error("make_pats: cutoff exceeds hard cap");
        }
        p = next;
    }
    const double tail = std::min(complement_tail(probs), bound);
    return FockDiagonalState(std::move(probs), tail, StateKind::pats,
                             params.nbar, m, trunc_tol);
}

FockDiagonalState make_state(const ThermalParams& params,
                             const ExcitationSpec& spec, double trunc_tol) {
    if (spec.kind == ExcitationKind::subtracted) {
        return make_psts(params, spec.m, trunc_tol);
    }
    return make_pats(params, spec.m, trunc_tol);
}

double generating_function(const FockDiagonalState& state, double v) {
    if (!(std::abs(v) <= 1.0)) {
        throw std::domain_error("generating_function: |v| must be <= 1");
    }
    CompensatedSum acc;
    double power = 1.0;
    for (double p : state.probs()) {
        acc.add(p * power);
        power *= v;
    }
    return acc.value();
}

double mean_photon(const FockDiagonalState& state) {
    CompensatedSum acc;
    std::size_t n = 0;
    for (double p : state.probs()) acc.add(static_cast<double>(n++) * p);
    return acc.value();
}

double purity(const FockDiagonalState& state) {
    CompensatedSum acc;
    for (double p : state.probs()) acc.add(p * p);
    return acc.value();
}

double purity_psts_closed(const ThermalParams& params, int m) {
    if (m < 0) {
        throw std::domain_error("purity_psts_closed: m must be non-negative");
    }
    const double x = params.x;
    if (x == 0.0) return 1.0;
    const double ratio = (1.0 - x) / (1.0 + x);
    const double arg = 1.0 + 2.0 * x * x / ((1.0 - x) * (1.0 + x));
    return std::pow(ratio, m + 1) * legendre_p(m, arg);
}

void write_state(std::ostream& os, const FockDiagonalState& state) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.16e", state.seed_nbar());
    os << "# nbar=" << buf << " kind=" << to_string(state.kind())
       << " M=" << state.excitation();
    std::snprintf(buf, sizeof(buf), "%.16e", state.tail_bound());
    os << " tail=" << buf << '\n';
    const auto probs = state.probs();
    for (std::size_t n = 0; n < probs.size(); ++n) {
        std::snprintf(buf, sizeof(buf), "%.16e", probs[n]);
        os << n << ' ' << buf << '\n';
    }
}

FockDiagonalState read_state(std::istream& is) {
    std::string header;
    if (!std::getline(is, header) || header.rfind("# ", 0) != 0) {
        throw std::invalid_argument("read_state: missing header line");
    }
    double nbar = 0.0;
    double tail = 0.0;
    int m = 0;
    char kind_buf[16] = {};
    if (std::sscanf(header.c_str(), "# nbar=%lf kind=%15s M=%d tail=%lf",
                    &nbar, kind_buf, &m, &tail) != 4) {
        throw std::invalid_argument("read_state: malformed header: " + header);
    }
    std::vector<double> probs;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) break;
        std::istringstream row(line);
        std::size_t n = 0;
        double p = 0.0;
        if (!(row >> n >> p) || n != probs.size()) {
            throw std::invalid_argument("read_state: malformed row: " + line);
        }
        probs.push_back(p);
    }
    return FockDiagonalState(std::move(probs), tail,
                             state_kind_from_string(kind_buf), nbar, m,
                             std::max(tail, kDefaultTruncTol));
}

}  // namespace fockng
