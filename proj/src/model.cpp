#include "vgp/model.hpp"

#include "vgp/errors.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <fmt/format.h>
#include <string>

namespace vgp {

namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

} // namespace

VgParams::VgParams(double sigma, double nu) : sigma_(sigma), nu_(nu), mu_(-0.5 * sigma * sigma) {
    if (!positive_finite(sigma)) throw DomainError(fmt::format("sigma must be positive, got {}", sigma));
    if (!positive_finite(nu)) throw DomainError(fmt::format("nu must be positive, got {}", nu));
}

VgParams make_vg_params(double sigma, double nu) { return VgParams(sigma, nu); }

std::string_view to_string(OptionSide side) { return side == OptionSide::put ? "put" : "call"; }

OptionSide parse_option_side(std::string_view text) {
    if (text == "put") return OptionSide::put;
    if (text == "call") return OptionSide::call;
    throw DomainError(fmt::format("unknown option side '{}'", text));
}

void OptionSpec::validate() const {
    if (!positive_finite(spot)) throw DomainError(fmt::format("spot must be positive, got {}", spot));
    if (!positive_finite(strike)) throw DomainError(fmt::format("strike must be positive, got {}", strike));
    if (!positive_finite(maturity)) throw DomainError(fmt::format("maturity must be positive, got {}", maturity));
}

double OptionSpec::log_spot() const { return std::log(spot); }

GammaTimeLaw::GammaTimeLaw(double maturity, double nu) {
    if (!positive_finite(maturity) || !positive_finite(nu))
        throw DomainError("gamma time law needs positive maturity and nu");
    shape_ = maturity / nu;
    rate_ = 1.0 / nu;
}

double GammaTimeLaw::pdf(double s) const {
    if (!positive_finite(s)) throw DomainError(fmt::format("density argument must be positive, got {}", s));
    // log space keeps large shapes and tiny s finite
    const double log_pdf = shape_ * std::log(rate_) + (shape_ - 1.0) * std::log(s) - rate_ * s - std::lgamma(shape_);
    return std::exp(log_pdf);
}

double GammaTimeLaw::upper_quantile(double upper_tail) const {
    if (!(upper_tail > 0.0 && upper_tail < 1.0)) throw DomainError("upper tail probability must lie in (0,1)");
    return boost::math::gamma_q_inv(shape_, upper_tail) / rate_;
}

double gamma_maturity_density(double s, double t, double nu) {
    if (!positive_finite(s) || !positive_finite(t) || !positive_finite(nu))
        throw DomainError("gamma_maturity_density requires s, t, nu > 0");
    return GammaTimeLaw(t, nu).pdf(s);
}

} // namespace vgp
