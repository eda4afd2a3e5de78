#include "fockng/hypergeometric.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fockng/compensated.hpp"
#include "fockng/errors.hpp"

namespace fockng {

namespace {

bool is_nonpositive_integer(double v) {
    return v <= 0.0 && v == std::floor(v);
}

}  // namespace

double hyp2f1_terminating(int m, double b, double c, double z) {
    if (m < 0) {
        throw std::domain_error("hyp2f1_terminating: m must be non-negative");
    }
    CompensatedSum acc;
    double term = 1.0;
    acc.add(term);
    const double a = -static_cast<double>(m);
    for (int n = 0; n < m; ++n) {
        const double an = a + n;
        const double bn = b + n;
        if (bn == 0.0) break;  // (b)_{n+1} vanishes, all later terms are zero
        const double cn = c + n;
        if (cn == 0.0) {
            throw std::domain_error(
                "hyp2f1_terminating: Pochhammer factor (c)_" +
                std::to_string(n + 1) + " vanishes for c = " +
                std::to_string(c));
        }
        term *= an * bn * z / (cn * (n + 1));
        acc.add(term);
    }
    return acc.value();
}

double hyp2f1_series(double a, double b, double c, double z, double tol) {
    if (!(tol > 0.0)) {
        throw std::domain_error("hyp2f1_series: tol must be positive");
    }
    if (!(std::abs(z) < 1.0)) {
        throw std::domain_error("hyp2f1_series: series requires |z| < 1, got z = " +
                                std::to_string(z));
    }
    const bool a_terminates = is_nonpositive_integer(a);
    const bool b_terminates = is_nonpositive_integer(b);
    if (is_nonpositive_integer(c)) {
        // A pole (c)_n = 0 is reached at n = -c + 1 unless a or b cuts the
        // series off strictly before it.
        const double pole_n = -c + 1.0;
        const bool cut_early = (a_terminates && -a + 1.0 <= pole_n - 1.0) ||
                               (b_terminates && -b + 1.0 <= pole_n - 1.0);
        if (!cut_early) {
            throw std::domain_error(
                "hyp2f1_series: c is a non-positive integer, (c)_n vanishes");
        }
    }

    CompensatedSum acc;
    double term = 1.0;
    acc.add(term);
    // Past this index the term ratio approaches |z| monotonically, so
    // max(|ratio|, |z|) bounds every later ratio and the remainder is
    // geometrically dominated.
    const double settled =
        std::max({std::abs(a), std::abs(b), std::abs(c)}) + 2.0;
    for (long n = 0; n < kHypIterationCap; ++n) {
        const double num = (a + n) * (b + n);
        if (num == 0.0) return acc.value();  // terminated exactly
        const double ratio = num * z / ((c + n) * (n + 1));
        term *= ratio;
        acc.add(term);

        const double partial = std::abs(acc.value());
        if (n > settled && partial > 0.0 && std::abs(term) / partial < tol) {
            const double rho = std::max(std::abs(ratio), std::abs(z));
            if (rho < 1.0 && std::abs(term) * rho / (1.0 - rho) < tol * partial) {
                return acc.value();
            }
        }
    }
    throw accuracy_error("hyp2f1_series: no convergence within iteration cap",
                         acc.value());
}

double hyp2f1(const Hyp2F1Args& args, double tol) {
    if (is_nonpositive_integer(args.a)) {
        return hyp2f1_terminating(static_cast<int>(-args.a), args.b, args.c,
                                  args.z);
    }
    return hyp2f1_series(args.a, args.b, args.c, args.z, tol);
}

double legendre_p(int l, double z) {
    if (l < 0) {
        throw std::domain_error("legendre_p: degree must be non-negative");
    }
    // Terminating 2F1(-l, l+1; 1; (1-z)/2). Parity keeps the argument at or
    // below 1/2; the terms still alternate for |z| < 1 and cancel down from
    // ~1e16 around l = 30, which costs all double digits, so the sum is
    // accumulated in quad precision.
    const double za = std::abs(z);
    const __float128 w = (1 - static_cast<__float128>(za)) / 2;
    __float128 total = 0;
    __float128 term = 1;
    for (int n = 0;; ++n) {
        total += term;
        if (n >= l) break;
        term *= static_cast<__float128>(n - l) * (l + 1 + n) * w /
                (static_cast<__float128>(1 + n) * (n + 1));
    }
    double out = static_cast<double>(total);
    if (z < 0.0 && l % 2 == 1) out = -out;
    return out;
}

}  // namespace fockng
