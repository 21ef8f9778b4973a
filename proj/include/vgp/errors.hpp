#pragma once

#include <stdexcept>
#include <string>

namespace vgp {

// Raised for inputs outside an operation's mathematical domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Raised when a numerical integration cannot meet its tolerance. Carries the
// best estimate obtained and the error estimate achieved.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double best_estimate, double achieved_error)
        : std::runtime_error(what), best_estimate_(best_estimate), achieved_error_(achieved_error) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double achieved_error() const noexcept { return achieved_error_; }

private:
    double best_estimate_;
    double achieved_error_;
};

} // namespace vgp
