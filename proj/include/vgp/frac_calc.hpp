#pragma once

#include "vgp/quadrature.hpp"

#include <functional>

namespace vgp {

/// Order of the fractional derivative
///     D^a f(x) = 1/Gamma(1-a) d/dx int_x^inf (t-x)^{-a} f(t) dt,   a < 1.
/// Under this operator D^0 = -identity and D^a e^{-lam x} = -lam^a e^{-lam x}.
class FracOrder {
public:
    explicit FracOrder(double alpha);
    double value() const noexcept { return alpha_; }

private:
    double alpha_;
};

/// -lam^alpha e^{-lam x}.
double frac_deriv_exp(FracOrder alpha, double lam, double x);

/// D^alpha of lam^{-beta}: -Gamma(alpha+beta)/Gamma(beta) lam^{-alpha-beta}.
/// Requires beta > 0 and alpha + beta > 0.
double frac_deriv_power(FracOrder alpha, double beta, double lam);

/// Gamma(a)/Gamma(b), switching to log space for large arguments.
double gamma_ratio(double a, double b);

struct FracResult {
    double value = 0.0;
    double error = 0.0;
};

/// D^alpha f(x) from the second derivative of f:
///     -x^{2-a} / (Gamma(1-a)(1-a)) int_0^1 y^{a-3} (1-y)^{1-a} f''(x/y) dy.
/// Valid when f and f' decay fast enough at infinity; callers must route
/// slowly decaying power laws to frac_deriv_power instead.
///
/// Integrates in u = -log y, which puts the y -> 0 tail on a semi-infinite
/// range where the decay of f'' is resolved by the adaptive rule.
/// Throws AccuracyError if the tolerance is not met.
FracResult frac_deriv_quadrature(const std::function<double(double)>& f_second, FracOrder alpha, double x,
                                 const QuadratureConfig& cfg = {});

} // namespace vgp
