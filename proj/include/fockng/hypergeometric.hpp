#pragma once

#include <limits>

namespace fockng {

inline constexpr double kHypDefaultTol = 1e-14;
inline constexpr long kHypIterationCap = 1'000'000;

/// Parameter set of the Gauss hypergeometric function 2F1(a, b; c; z).
/// When a is a non-positive integer the series terminates after |a|+1 terms
/// and converges for every z; otherwise |z| < 1 is required.
struct Hyp2F1Args {
    double a;
    double b;
    double c;
    double z;
};

/// Finite sum for 2F1(-m, b; c; z), m a non-negative integer. Exact up to
/// rounding: the m+1 terms are generated by the ratio recurrence
/// term' = term * (a+n)(b+n) z / ((c+n)(n+1)).
/// Throws std::domain_error if a Pochhammer factor (c)_n vanishes before the
/// series terminates.
double hyp2f1_terminating(int m, double b, double c, double z);

/// Convergent series for 2F1(a, b; c; z), |z| < 1. Stops once the estimated
/// geometric remainder falls below tol relative to the partial sum.
/// Throws std::domain_error for |z| >= 1 or a pole in (c)_n, and
/// accuracy_error (carrying the partial sum) if the cap is reached first.
double hyp2f1_series(double a, double b, double c, double z,
                     double tol = kHypDefaultTol);

/// Dispatches on a: terminating branch when a is a non-positive integer,
/// convergent series otherwise.
double hyp2f1(const Hyp2F1Args& args, double tol = kHypDefaultTol);

/// Legendre polynomial P_l(z) through its terminating hypergeometric form
/// 2F1(-l, l+1; 1; (1-z)/2).
double legendre_p(int l, double z);

}  // namespace fockng
