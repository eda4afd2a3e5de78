#pragma once

#include <stdexcept>
#include <string>

namespace fockng {

/// Thrown when an iterative evaluation hits its iteration cap before the
/// requested tolerance. Carries the last partial sum so callers can decide
/// whether the degraded value is still usable.
class accuracy_error : public std::runtime_error {
public:
    accuracy_error(const std::string& what, double partial)
        : std::runtime_error(what), partial_sum(partial) {}

    double partial_sum;
};

}  // namespace fockng
