#pragma once

#include <string_view>

namespace vgp {

/// Variance Gamma parameters under the zero-rate risk-neutral measure.
///
/// The drift of the subordinated Brownian motion is not a free parameter:
/// it is fixed to -sigma^2/2 so that the spot is a martingale.
class VgParams {
public:
    /// Throws DomainError unless sigma > 0 and nu > 0 (both finite).
    VgParams(double sigma, double nu);

    double sigma() const noexcept { return sigma_; }
    double nu() const noexcept { return nu_; }
    double mu() const noexcept { return mu_; }
    double variance() const noexcept { return sigma_ * sigma_; }

private:
    double sigma_;
    double nu_;
    double mu_;
};

VgParams make_vg_params(double sigma, double nu);

enum class OptionSide { put, call };

std::string_view to_string(OptionSide side);
OptionSide parse_option_side(std::string_view text);

struct OptionSpec {
    double spot;
    double strike;
    double maturity;
    OptionSide side = OptionSide::put;

    /// Throws DomainError unless spot, strike and maturity are positive.
    void validate() const;
    double log_spot() const;

    bool operator==(const OptionSpec&) const = default;
};

/// Law of the business-time clock gamma(t): Gamma(shape = t/nu, rate = 1/nu).
class GammaTimeLaw {
public:
    GammaTimeLaw(double maturity, double nu);

    double shape() const noexcept { return shape_; }
    double rate() const noexcept { return rate_; }
    double scale() const noexcept { return 1.0 / rate_; }
    double mean() const noexcept { return shape_ / rate_; }
    double variance() const noexcept { return shape_ / (rate_ * rate_); }
    double mode() const noexcept { return shape_ > 1.0 ? (shape_ - 1.0) / rate_ : 0.0; }

    double pdf(double s) const;
    /// Point q with P(gamma(t) > q) = upper_tail.
    double upper_quantile(double upper_tail) const;

private:
    double shape_;
    double rate_;
};

/// Density of gamma(t) at s: (1/nu)^{t/nu} s^{t/nu-1} e^{-s/nu} / Gamma(t/nu).
double gamma_maturity_density(double s, double t, double nu);

} // namespace vgp
