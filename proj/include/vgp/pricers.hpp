#pragma once

#include "vgp/model.hpp"
#include "vgp/quadrature.hpp"

#include <chrono>
#include <complex>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace vgp {

enum class Method { cgz, mixture, fourier, mc };

std::string_view to_string(Method method);
Method parse_method(std::string_view text);

struct PriceQuote {
    double value = 0.0;
    Method method = Method::cgz;
    /// Quadrature error estimate, or the Monte Carlo standard error.
    std::optional<double> error_estimate;
    std::chrono::nanoseconds elapsed{0};

    bool operator==(const PriceQuote&) const = default;
};

struct McConfig {
    std::uint64_t paths = 1'000'000;
    std::uint64_t seed = 20240611;
    bool antithetic = true;
    /// Worker threads; 0 picks hardware concurrency. Results do not depend on it.
    unsigned threads = 0;

    void validate() const;
};

struct FourierConfig {
    double damping = 1.5;
    /// Tried in order when the primary damping yields a price outside the
    /// no-arbitrage bounds or violates the moment condition.
    std::vector<double> fallback_dampings{0.75, 2.5};
};

/// Zero-rate Black-Scholes put at log-spot x after time s, drift -sigma^2/2.
double black_scholes_put(double x, double strike, double s, const VgParams& params);

/// C = P + S - K.
double call_from_put(double put, double spot, double strike);

/// E[exp(i u X(gamma(t)))] = (1 - nu (i u mu - sigma^2 u^2 / 2))^{-t/nu},
/// valid for complex u inside the strip of analyticity.
std::complex<double> vg_characteristic_function(std::complex<double> u, double t, const VgParams& params);

/// Closed-form put: coefficient recursion in the Laplace domain followed by a
/// fractional derivative in lambda at lambda = 1/nu. Integer t/nu needs no
/// quadrature.
PriceQuote price_put_cgz(const OptionSpec& spec, const VgParams& params, const QuadratureConfig& cfg = {});

/// Gamma-density mixture of Black-Scholes puts over the random maturity.
PriceQuote price_put_mixture(const OptionSpec& spec, const VgParams& params, const QuadratureConfig& cfg = {});

/// Damped-call Fourier inversion (single strike, adaptive quadrature with
/// extrapolation of the oscillatory tail), then put-call parity.
PriceQuote price_put_fourier(const OptionSpec& spec, const VgParams& params, const QuadratureConfig& cfg = {},
                             const FourierConfig& fourier = {});

/// Direct simulation of log S + mu*gamma + sigma*sqrt(gamma)*Z.
PriceQuote price_put_mc(const OptionSpec& spec, const VgParams& params, const McConfig& cfg = {});

struct FftGridConfig {
    int points = 4096;
    double frequency_step = 0.25;
    double damping = 1.5;
};

struct StrikeQuote {
    double strike;
    double put;
};

/// Strike ladder via FFT of the damped call transform; log-strikes centred at
/// log spot with spacing 2 pi / (points * frequency_step).
std::vector<StrikeQuote> fourier_put_ladder(double spot, double maturity, const VgParams& params,
                                            const FftGridConfig& cfg = {});

struct PricingConfig {
    QuadratureConfig quadrature{};
    FourierConfig fourier{};
    McConfig mc{};
};

/// Prices spec.side with the chosen method; calls go through parity.
PriceQuote price_option(const OptionSpec& spec, const VgParams& params, Method method,
                        const PricingConfig& cfg = {});

} // namespace vgp
