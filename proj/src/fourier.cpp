#include "vgp/errors.hpp"
#include "vgp/pricers.hpp"

#include <cmath>
#include <fftw3.h>
#include <fmt/format.h>
#include <memory>
#include <mutex>
#include <numbers>

namespace vgp {

using namespace std::complex_literals;

std::complex<double> vg_characteristic_function(std::complex<double> u, double t, const VgParams& params) {
    const double nu = params.nu();
    const std::complex<double> base = 1.0 - nu * (1i * u * params.mu() - 0.5 * params.variance() * u * u);
    return std::exp(-(t / nu) * std::log(base));
}

namespace {

using Clock = std::chrono::steady_clock;

// E[S_T^{1 + alpha}] < inf, i.e. the base of the characteristic function
// stays in the right half-plane along the shifted contour. alpha > 0 gives the
// call, alpha < -1 the put; the strip in between holds no price.
bool alpha_admissible(double alpha, const VgParams& params) {
    const double p = alpha + 1.0;
    const bool side = alpha > 0.0 || alpha < -1.0;
    return side && 1.0 - params.nu() * p * (params.mu() + 0.5 * params.variance() * p) > 0.0;
}

// Integrand of the damped transform in log-moneyness d = log S - log K:
//   C (a > 0) or P (a < -1) = S e^{a d} / pi
//     * int_0^inf Re[ e^{i v d} phi(v - (a+1) i) / (a^2 + a - v^2 + i (2a+1) v) ] dv
std::complex<double> damped_transform(double v, double alpha, double t, const VgParams& params) {
    const std::complex<double> w(v, -(alpha + 1.0));
    const std::complex<double> denom(alpha * alpha + alpha - v * v, (2.0 * alpha + 1.0) * v);
    return vg_characteristic_function(w, t, params) / denom;
}

struct CallIntegral {
    double value;
    double error;
};

CallIntegral damped_call_integral(double d, double alpha, double t, const VgParams& params,
                                  const QuadratureConfig& cfg) {
    auto integrand = [&](double v) {
        return (std::exp(1i * v * d) * damped_transform(v, alpha, t, params)).real();
    };
    // beyond a few multiples of this scale the transform is in its power-law tail
    const double crossover = std::sqrt(2.0 / (params.variance() * params.nu()));
    const double freq = std::abs(d);
    QuadratureConfig piece = cfg;
    piece.max_subdivisions = std::max(cfg.max_subdivisions, 400);

    if (freq < 1e-2) {
        const double head_end = 4.0 * crossover;
        const QuadResult head = integrate(integrand, 0.0, head_end, piece);
        const QuadResult tail = integrate_to_infinity(integrand, head_end, piece);
        return {head.value + tail.value, head.error + tail.error};
    }

    // oscillatory tail: integrate half-periods and extrapolate the partial sums
    const double half_period = std::numbers::pi / freq;
    const double head_end = std::ceil(4.0 * crossover / half_period) * half_period;
    const QuadResult head = integrate(integrand, 0.0, head_end, piece);

    std::vector<double> partial;
    double sum = head.value;
    double quad_err = head.error;
    double lo = head_end;
    Extrapolation best{sum, std::numeric_limits<double>::infinity()};
    constexpr int kMaxPieces = 120;
    for (int k = 0; k < kMaxPieces; ++k) {
        const QuadResult r = integrate(integrand, lo, lo + half_period, piece);
        sum += r.value;
        quad_err += r.error;
        lo += half_period;
        partial.push_back(sum);
        if (partial.size() < 8) continue;
        // epsilon table on a sliding window keeps round-off growth in check
        const std::size_t window = std::min<std::size_t>(partial.size(), 40);
        const Extrapolation e = wynn_epsilon(std::span<const double>(partial).last(window));
        if (e.error < best.error) best = e;
        const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(best.value));
        if (best.error + quad_err <= tol) break;
        // terms already below tolerance: the plain sum has converged
        if (std::abs(r.value) <= 0.1 * tol) {
            best = {sum, std::abs(r.value)};
            break;
        }
    }
    return {best.value, best.error + quad_err};
}

} // namespace

PriceQuote price_put_fourier(const OptionSpec& spec, const VgParams& params, const QuadratureConfig& cfg,
                             const FourierConfig& fourier) {
    const auto start = Clock::now();
    spec.validate();
    if (spec.side != OptionSide::put) throw DomainError("put pricer called with a call specification");
    cfg.validate();

    const double d = std::log(spec.spot / spec.strike);
    const double lower = std::max(spec.strike - spec.spot, 0.0);

    std::vector<double> dampings{fourier.damping};
    dampings.insert(dampings.end(), fourier.fallback_dampings.begin(), fourier.fallback_dampings.end());

    // damp towards the out-of-the-money side so e^{alpha d} shrinks rather
    // than amplifies the integration error
    const bool direct_put = d > 0.0;
    std::string last_problem = "no admissible damping parameter";
    for (double damping : dampings) {
        const double alpha = direct_put ? -1.0 - damping : damping;
        if (!(damping > 0.0) || !alpha_admissible(alpha, params)) {
            last_problem = fmt::format("damping {} violates the moment condition", damping);
            continue;
        }
        const CallIntegral integral = damped_call_integral(d, alpha, spec.maturity, params, cfg);
        const double scale = spec.spot * std::exp(alpha * d) / std::numbers::pi;
        const double raw = scale * integral.value;
        const double put = direct_put ? raw : raw - spec.spot + spec.strike;
        const double err = scale * integral.error;
        if (!std::isfinite(put) || put < lower - 1e-8 || put > spec.strike + 1e-8) {
            last_problem = fmt::format("damping {} gave out-of-bounds put {}", damping, put);
            continue;
        }
        const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(raw));
        // the epsilon estimate of the tail is conservative by a couple of digits
        if (!(err <= 100.0 * tol))
            throw AccuracyError(fmt::format("Fourier inversion did not converge (error {:.3g})", err), put, err);
        PriceQuote quote{.value = std::max(put, lower), .method = Method::fourier, .error_estimate = err};
        quote.elapsed = Clock::now() - start;
        return quote;
    }
    throw AccuracyError("Fourier inversion failed: " + last_problem, std::nan(""), std::nan(""));
}

std::vector<StrikeQuote> fourier_put_ladder(double spot, double maturity, const VgParams& params,
                                            const FftGridConfig& cfg) {
    if (!(spot > 0.0) || !(maturity > 0.0)) throw DomainError("ladder needs positive spot and maturity");
    if (cfg.points < 2 || (cfg.points & (cfg.points - 1)) != 0) throw DomainError("FFT size must be a power of two");
    if (!(cfg.frequency_step > 0.0)) throw DomainError("frequency step must be positive");
    if (!(cfg.damping > 0.0) || !alpha_admissible(cfg.damping, params))
        throw DomainError("damping violates the moment condition");

    const int n = cfg.points;
    const double eta = cfg.frequency_step;
    const double dk = 2.0 * std::numbers::pi / (n * eta);
    const double log_spot = std::log(spot);
    const double k0 = log_spot - 0.5 * n * dk;

    struct FftwFree {
        void operator()(fftw_complex* p) const { fftw_free(p); }
    };
    std::unique_ptr<fftw_complex[], FftwFree> buf(
        static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * static_cast<std::size_t>(n))));

    for (int j = 0; j < n; ++j) {
        const double v = j * eta;
        // Simpson weights 1,4,2,4,...; the transform uses log-moneyness, so the
        // phase relative to k0 is e^{i v (log S - k0)}
        const double w = eta / 3.0 * (j == 0 ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0));
        const std::complex<double> x = std::exp(1i * v * (log_spot - k0)) *
                                       damped_transform(v, cfg.damping, maturity, params) * w;
        buf[j][0] = x.real();
        buf[j][1] = x.imag();
    }
    // the FFTW planner is not thread-safe; execution is
    static std::mutex planner;
    fftw_plan plan = nullptr;
    {
        std::lock_guard lock(planner);
        plan = fftw_plan_dft_1d(n, buf.get(), buf.get(), FFTW_FORWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard lock(planner);
        fftw_destroy_plan(plan);
    }

    std::vector<StrikeQuote> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int u = 0; u < n; ++u) {
        const double k = k0 + u * dk;
        const double strike = std::exp(k);
        const double d = log_spot - k;
        const double call = spot * std::exp(cfg.damping * d) / std::numbers::pi * buf[u][0];
        out.push_back({strike, call - spot + strike});
    }
    return out;
}

} // namespace vgp
