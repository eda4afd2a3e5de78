#pragma once

#include <cmath>

namespace fockng {

/// Kahan-Babuska (Neumaier) compensated accumulator. Tracks the rounding
/// error of every addition and folds it back into the reported value, so long
/// slowly-decaying series can be summed to near full double precision.
struct CompensatedSum {
    double sum = 0.0;
    double compensation = 0.0;

    void add(double value) {
        const double t = sum + value;
        if (std::abs(sum) >= std::abs(value)) {
            compensation += (sum - t) + value;
        } else {
            compensation += (value - t) + sum;
        }
        sum = t;
    }

    double value() const { return sum + compensation; }
};

}  // namespace fockng
