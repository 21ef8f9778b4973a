#pragma once

#include <functional>
#include <span>
#include <vector>

namespace vgp {

struct QuadratureConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    int max_subdivisions = 200;

    /// Throws DomainError on nonpositive tolerances or subdivision budget.
    void validate() const;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    int subdivisions = 0;
    bool converged = false;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive 15-point Gauss-Kronrod quadrature on [a, b]: the interval
/// with the largest error estimate is bisected until the total error meets
/// max(abs_tol, rel_tol*|I|) or the subdivision budget is spent. Endpoints are
/// never evaluated, so integrable endpoint singularities are allowed.
///
/// `breakpoints` (strictly inside (a, b)) seed the initial partition.
QuadResult integrate(const Integrand& f, double a, double b, const QuadratureConfig& cfg,
                     std::span<const double> breakpoints = {});

/// Integral over [a, inf) via the map x = a + (1 - v) / v, v in (0, 1].
QuadResult integrate_to_infinity(const Integrand& f, double a, const QuadratureConfig& cfg);

/// Wynn epsilon-algorithm extrapolation of a sequence of partial sums.
/// Returns the limit estimate and an error estimate from successive diagonals.
struct Extrapolation {
    double value = 0.0;
    double error = 0.0;
};
Extrapolation wynn_epsilon(std::span<const double> partial_sums);

} // namespace vgp
