#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

namespace fockng {

inline constexpr double kDefaultTruncTol = 1e-14;

/// Seed parameters of a thermal state: mean occupancy nbar >= 0 and the
/// derived thermal ratio x = nbar / (nbar + 1) in [0, 1).
struct ThermalParams {
    double nbar;
    double x;

    explicit ThermalParams(double nbar_);
};

enum class ExcitationKind { subtracted, added };

/// Number of photons subtracted from or added to the seed thermal state.
/// m = 0 with either kind denotes the unmodified thermal state.
struct ExcitationSpec {
    ExcitationKind kind = ExcitationKind::subtracted;
    int m = 0;
};

enum class StateKind { thermal, psts, pats };

std::string_view to_string(StateKind kind);
StateKind state_kind_from_string(std::string_view name);

/// Truncated photon-number distribution of a Fock-diagonal single-mode state.
///
/// Holds the retained probabilities p_0 .. p_cutoff, the leftover mass above
/// the cutoff (tail_bound), and the seed parameters it was built from. The
/// constructors guarantee tail_bound <= trunc_tol; the sum of retained
/// probabilities plus tail_bound is 1 up to rounding. Immutable once built.
class FockDiagonalState {
public:
    FockDiagonalState(std::vector<double> probs, double tail_bound,
                      StateKind kind, double seed_nbar, int excitation,
                      double trunc_tol);

    std::span<const double> probs() const { return probs_; }
    /// p_n, zero above the cutoff.
    double prob(std::size_t n) const {
        return n < probs_.size() ? probs_[n] : 0.0;
    }
    /// Highest retained Fock index.
    std::size_t cutoff() const { return probs_.size() - 1; }
    double tail_bound() const { return tail_bound_; }
    double trunc_tol() const { return trunc_tol_; }

    StateKind kind() const { return kind_; }
    double seed_nbar() const { return seed_nbar_; }
    int excitation() const { return excitation_; }

private:
    std::vector<double> probs_;
    double tail_bound_;
    double trunc_tol_;
    StateKind kind_;
    double seed_nbar_;
    int excitation_;
};

/// Thermal state, p_n = (1 - x) x^n, truncated where the geometric tail
/// drops below trunc_tol.
FockDiagonalState make_thermal(const ThermalParams& params,
                               double trunc_tol = kDefaultTruncTol);

/// m-photon-subtracted thermal state. Its photon statistics form a negative
/// binomial distribution, p_n = C(n+m, m) (1-x)^{m+1} x^n.
/// Throws std::domain_error for nbar = 0 with m >= 1 (the normalization of
/// the subtracted state is singular there).
FockDiagonalState make_psts(const ThermalParams& params, int m,
                            double trunc_tol = kDefaultTruncTol);

/// m-photon-added thermal state: the subtracted distribution shifted up by
/// m Fock levels, p_n = C(n, m) (1-x)^{m+1} x^{n-m} for n >= m. nbar = 0 is
/// allowed and yields the m-photon Fock state.
FockDiagonalState make_pats(const ThermalParams& params, int m,
                            double trunc_tol = kDefaultTruncTol);

/// Dispatch on the excitation kind.
FockDiagonalState make_state(const ThermalParams& params,
                             const ExcitationSpec& spec,
                             double trunc_tol = kDefaultTruncTol);

/// G(v) = sum_n p_n v^n over the retained range, |v| <= 1. Truncation error
/// is bounded by the state's tail_bound.
double generating_function(const FockDiagonalState& state, double v);

/// <n> = sum_n n p_n over the retained range.
double mean_photon(const FockDiagonalState& state);

/// Tr rho^2 = sum_n p_n^2 over the retained range.
double purity(const FockDiagonalState& state);

/// Closed form of the subtracted-state purity,
/// ((1-x)/(1+x))^{m+1} P_m(1 + 2x^2/(1-x^2)), equal to 1 at x = 0.
double purity_psts_closed(const ThermalParams& params, int m);

/// Plain-text column format: a header line
///   # nbar=<v> kind=<thermal|psts|pats> M=<m> tail=<tail_bound>
/// followed by one "n p_n" line per retained index, 17 significant digits.
void write_state(std::ostream& os, const FockDiagonalState& state);
FockDiagonalState read_state(std::istream& is);

}  // namespace fockng
