#include "vgp/pricers.hpp"

#include "vgp/carr_laplace.hpp"
#include "vgp/errors.hpp"
#include "vgp/frac_calc.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fmt/format.h>
#include <numbers>
#include <stdexcept>

namespace vgp {

std::string_view to_string(Method method) {
    switch (method) {
    case Method::cgz: return "cgz";
    case Method::mixture: return "mixture";
    case Method::fourier: return "fourier";
    case Method::mc: return "mc";
    }
    return "unknown";
}

Method parse_method(std::string_view text) {
    for (Method m : {Method::cgz, Method::mixture, Method::fourier, Method::mc})
        if (to_string(m) == text) return m;
    throw DomainError(fmt::format("unknown pricing method '{}'", text));
}

void McConfig::validate() const {
    if (paths < 1) throw DomainError("Monte Carlo needs at least one path");
}

double black_scholes_put(double x, double strike, double s, const VgParams& params) {
    const double spot = std::exp(x);
    if (!(s > 0.0)) return std::max(strike - spot, 0.0);
    const double vol = params.sigma() * std::sqrt(s);
    const double d1 = (x - std::log(strike) + 0.5 * vol * vol) / vol;
    const double d2 = d1 - vol;
    // Phi(-d) = erfc(d / sqrt 2) / 2
    return 0.5 * (strike * std::erfc(d2 / std::numbers::sqrt2) - spot * std::erfc(d1 / std::numbers::sqrt2));
}

double call_from_put(double put, double spot, double strike) { return put + spot - strike; }

namespace {

using Clock = std::chrono::steady_clock;

void require_put(const OptionSpec& spec) {
    spec.validate();
    if (spec.side != OptionSide::put) throw DomainError("put pricer called with a call specification");
}

// Bounds every put price must respect: intrinsic value below, strike above.
// Values within the slack are clamped onto the interval.
double enforce_put_bounds(double value, const OptionSpec& spec, double slack) {
    const double lower = std::max(spec.strike - spec.spot, 0.0);
    if (!(value >= lower - slack) || !(value <= spec.strike + slack))
        throw std::logic_error(fmt::format("put price {} outside [{}, {}]", value, lower, spec.strike));
    return std::clamp(value, lower, spec.strike);
}

bool is_integer_shape(double shape, double& rounded) {
    rounded = std::round(shape);
    return rounded >= 1.0 && std::abs(shape - rounded) <= 1e-12 * std::max(1.0, shape);
}

} // namespace

PriceQuote price_put_cgz(const OptionSpec& spec, const VgParams& params, const QuadratureConfig& cfg) {
    const auto start = Clock::now();
    require_put(spec);
    cfg.validate();

    const double nu = params.nu();
    const double shape = spec.maturity / nu;
    const double lambda = 1.0 / nu;
    const double x = spec.log_spot();
    // (1/nu)^{t/nu} / Gamma(t/nu)
    const double prefactor = std::exp(-shape * std::log(nu) - std::lgamma(shape));

    PriceQuote quote;
    quote.method = Method::cgz;
    double rounded = 0.0;
    if (is_integer_shape(shape, rounded)) {
        // Erlang maturity: D^0 = -identity turns the (-1)^{n+1} into (-1)^n
        const int n = static_cast<int>(rounded) - 1;
        if (n > kMaxLaplaceLevel)
            throw DomainError(fmt::format("t/nu = {} needs level {} > {}", shape, n, kMaxLaplaceLevel));
        const CoeffTable table = build_coeff_table(lambda, spec.strike, params, n);
        const double m = eval_m(table, n, x);
        quote.value = prefactor * (n % 2 == 0 ? m : -m);
        quote.error_estimate = 0.0;
    } else {
        // level n with n <= t/nu - 1 < n + 1; below one the order goes negative
        // and the derivative acts on m itself
        const int level = shape < 1.0 ? 0 : static_cast<int>(std::floor(shape - 1.0));
        if (level + 2 > kMaxLaplaceLevel)
            throw DomainError(fmt::format("t/nu = {} needs level {} > {}", shape, level + 2, kMaxLaplaceLevel));
        const FracOrder alpha(shape - 1.0 - level);

        auto exp_part_second = [&](double lam) {
            const CoeffTable t = build_coeff_table(lam, spec.strike, params, level + 2);
            return eval_m_exponential_part(t, level + 2, x);
        };
        const FracResult exp_part = frac_deriv_quadrature(exp_part_second, alpha, lambda, cfg);

        double power_part = 0.0;
        if (x <= std::log(spec.strike)) {
            // (-1)^n n! (K - S) lambda^{-(n+1)}
            double weight = spec.strike - spec.spot;
            for (int k = 1; k <= level; ++k) weight *= -static_cast<double>(k);
            power_part = weight * frac_deriv_power(alpha, level + 1.0, lambda);
        }
        const double sign = (level + 1) % 2 == 0 ? 1.0 : -1.0;
        quote.value = prefactor * sign * (exp_part.value + power_part);
        quote.error_estimate = prefactor * exp_part.error;
    }

    const double slack = std::max(1e-9, 10.0 * quote.error_estimate.value_or(0.0));
    if (quote.value < -slack) throw std::logic_error(fmt::format("negative put price {}", quote.value));
    quote.value = enforce_put_bounds(quote.value, spec, slack);
    quote.elapsed = Clock::now() - start;
    return quote;
}

PriceQuote price_put_mixture(const OptionSpec& spec, const VgParams& params, const QuadratureConfig& cfg) {
    const auto start = Clock::now();
    require_put(spec);
    cfg.validate();

    const GammaTimeLaw law(spec.maturity, params.nu());
    const double shape = law.shape();
    const double x = spec.log_spot();
    const double upper = law.upper_quantile(1e-12);
    const double log_norm = shape * std::log(law.rate()) - std::lgamma(shape);

    QuadResult r;
    if (shape < 1.0) {
        // s = r^{1/shape} absorbs the integrable s^{shape-1} singularity at 0
        auto integrand = [&](double rr) {
            const double s = std::pow(rr, 1.0 / shape);
            return black_scholes_put(x, spec.strike, s, params) * std::exp(log_norm - law.rate() * s) / shape;
        };
        r = integrate(integrand, 0.0, std::pow(upper, shape), cfg);
    } else {
        auto integrand = [&](double s) { return black_scholes_put(x, spec.strike, s, params) * law.pdf(s); };
        const std::array<double, 1> cut{law.mode()};
        r = integrate(integrand, 0.0, upper, cfg, cut);
    }
    if (!r.converged)
        throw AccuracyError(fmt::format("mixture quadrature did not converge (error {:.3g})", r.error), r.value,
                            r.error);

    PriceQuote quote{.value = r.value, .method = Method::mixture, .error_estimate = r.error};
    quote.value = enforce_put_bounds(quote.value, spec, std::max(1e-9, 10.0 * r.error));
    quote.elapsed = Clock::now() - start;
    return quote;
}

PriceQuote price_option(const OptionSpec& spec, const VgParams& params, Method method, const PricingConfig& cfg) {
    OptionSpec put_spec = spec;
    put_spec.side = OptionSide::put;
    PriceQuote quote;
    switch (method) {
    case Method::cgz: quote = price_put_cgz(put_spec, params, cfg.quadrature); break;
    case Method::mixture: quote = price_put_mixture(put_spec, params, cfg.quadrature); break;
    case Method::fourier: quote = price_put_fourier(put_spec, params, cfg.quadrature, cfg.fourier); break;
    case Method::mc: quote = price_put_mc(put_spec, params, cfg.mc); break;
    }
    if (spec.side == OptionSide::call) quote.value = call_from_put(quote.value, spec.spot, spec.strike);
    return quote;
}

} // namespace vgp
