#include "vgp/errors.hpp"
#include "vgp/pricers.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

namespace vgp {

namespace {

using Clock = std::chrono::steady_clock;

// Samples per task. Fixed so the stream layout, and hence the estimate,
// depends only on (seed, paths), never on the thread count.
constexpr std::uint64_t kTaskSize = 1u << 16;

struct Moments {
    double sum = 0.0;
    double sum_sq = 0.0;
};

} // namespace

PriceQuote price_put_mc(const OptionSpec& spec, const VgParams& params, const McConfig& cfg) {
    const auto start = Clock::now();
    spec.validate();
    if (spec.side != OptionSide::put) throw DomainError("put pricer called with a call specification");
    cfg.validate();

    const double shape = spec.maturity / params.nu();
    const double scale = params.nu();
    const double log_spot = spec.log_spot();
    const double mu = params.mu();
    const double sigma = params.sigma();
    const double strike = spec.strike;

    // one sample = one path, or one antithetic (Z, -Z) pair averaged
    const std::uint64_t samples = cfg.antithetic ? (cfg.paths + 1) / 2 : cfg.paths;
    const std::uint64_t tasks = (samples + kTaskSize - 1) / kTaskSize;
    std::vector<Moments> partial(tasks);

    auto run_task = [&](std::uint64_t task) {
        std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                          static_cast<std::uint32_t>(task), static_cast<std::uint32_t>(task >> 32)};
        std::mt19937_64 rng(seq);
        std::gamma_distribution<double> clock(shape, scale);
        std::normal_distribution<double> normal;
        const std::uint64_t begin = task * kTaskSize;
        const std::uint64_t end = std::min(samples, begin + kTaskSize);
        Moments m;
        for (std::uint64_t i = begin; i < end; ++i) {
            const double g = clock(rng);
            const double z = normal(rng);
            const double drift = log_spot + mu * g;
            const double diffusion = sigma * std::sqrt(g) * z;
            double payoff = std::max(strike - std::exp(drift + diffusion), 0.0);
            if (cfg.antithetic) payoff = 0.5 * (payoff + std::max(strike - std::exp(drift - diffusion), 0.0));
            m.sum += payoff;
            m.sum_sq += payoff * payoff;
        }
        partial[task] = m;
    };

    unsigned workers = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, tasks));
    if (workers <= 1) {
        for (std::uint64_t t = 0; t < tasks; ++t) run_task(t);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::uint64_t t = next++; t < tasks; t = next++) run_task(t);
            });
    }

    // fixed-order reduction keeps the result bit-reproducible
    Moments total;
    for (const Moments& m : partial) {
        total.sum += m.sum;
        total.sum_sq += m.sum_sq;
    }
    const double n = static_cast<double>(samples);
    const double mean = total.sum / n;
    const double var = samples > 1 ? std::max(0.0, (total.sum_sq - n * mean * mean) / (n - 1.0)) : 0.0;

    PriceQuote quote{.value = mean, .method = Method::mc, .error_estimate = std::sqrt(var / n)};
    quote.elapsed = Clock::now() - start;
    return quote;
}

} // namespace vgp
