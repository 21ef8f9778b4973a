#include "vgp/carr_laplace.hpp"

#include "vgp/errors.hpp"

#include <cmath>
#include <fmt/format.h>

namespace vgp {

ThetaRoots theta_roots(double lambda, const VgParams& params) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw DomainError(fmt::format("Laplace variable must be positive, got {}", lambda));
    const double mu = params.mu();
    const double s2 = params.variance();
    const double disc = std::sqrt(mu * mu + 2.0 * lambda * s2);
    // take the root without cancellation directly, the other from the product
    // theta1 * theta2 = -2 lambda / sigma^2
    if (mu <= 0.0) {
        const double theta1 = (disc - mu) / s2;
        return {theta1, -2.0 * lambda / (s2 * theta1)};
    }
    const double theta2 = -(disc + mu) / s2;
    return {-2.0 * lambda / (s2 * theta2), theta2};
}

CoeffTable::CoeffTable(double lambda, double strike, const VgParams& params, ThetaRoots roots)
    : lambda_(lambda), strike_(strike), log_strike_(std::log(strike)), params_(params), roots_(roots) {}

std::span<const long double> CoeffTable::coefficients(int level, Branch branch) const {
    if (level < 0 || level > max_level())
        throw DomainError(fmt::format("level {} not present (table holds 0..{})", level, max_level()));
    const auto& levels = branch == Branch::below_strike ? below_ : above_;
    return levels[static_cast<std::size_t>(level)];
}

long double CoeffTable::power_law_factor(int level) const {
    long double v = 1.0L / lambda_;
    for (int k = 1; k <= level; ++k) v *= -static_cast<long double>(k) / lambda_;
    return v;
}

CoeffTable base_level(double lambda, double strike, const VgParams& params) {
    if (!(strike > 0.0) || !std::isfinite(strike))
        throw DomainError(fmt::format("strike must be positive, got {}", strike));
    const ThetaRoots roots = theta_roots(lambda, params);
    CoeffTable table(lambda, strike, params, roots);
    const long double lead = static_cast<long double>(strike) /
                             (static_cast<long double>(lambda) * (static_cast<long double>(roots.theta1) - roots.theta2));
    table.below_.push_back({lead});
    table.above_.push_back({lead});
    return table;
}

namespace {

// Polynomial coefficients a_2..a_{n+1} of level n from level n-1, written into
// next[1..n]; next[0] is left for the matching step.
void back_substitute(std::span<const long double> prev, std::vector<long double>& next, int n, long double mu,
                     long double s2, long double theta) {
    const long double drift = mu + s2 * theta;
    if (drift == 0.0L) throw DomainError("degenerate characteristic root: mu + sigma^2 theta = 0");
    next.assign(static_cast<std::size_t>(n) + 1, 0.0L);
    // the z^{j-1} balance of the ODE; the c_{j} term drops out since theta is a root
    for (int j = n; j >= 1; --j) {
        const long double a_j2 = (j + 1 <= n) ? next[static_cast<std::size_t>(j + 1)] : 0.0L;
        const long double rhs = n * prev[static_cast<std::size_t>(j - 1)] - 0.5L * s2 * (j + 1) * j * a_j2;
        next[static_cast<std::size_t>(j)] = rhs / (j * drift);
    }
}

} // namespace

CoeffTable extend_to_level(CoeffTable table, int n) {
    if (n < 0) throw DomainError(fmt::format("level must be nonnegative, got {}", n));
    if (n > kMaxLaplaceLevel)
        throw DomainError(fmt::format("level {} exceeds the supported maximum {}", n, kMaxLaplaceLevel));
    const long double mu = table.params_.mu();
    const long double s2 = table.params_.variance();
    const long double th1 = table.roots_.theta1;
    const long double th2 = table.roots_.theta2;
    const long double K = table.strike_;

    for (int level = table.max_level() + 1; level <= n; ++level) {
        std::vector<long double> below;
        std::vector<long double> above;
        back_substitute(table.below_.back(), below, level, mu, s2, th1);
        back_substitute(table.above_.back(), above, level, mu, s2, th2);
        // C^1 at z = 0: values give a_11 = a_21 (the power-law terms vanish at
        // x = log K); slopes give a_11 theta1 + a_12 - c K = a_21 theta2 + a_22.
        const long double c = table.power_law_factor(level);
        const long double lead = (above[1] - below[1] + c * K) / (th1 - th2);
        below[0] = lead;
        above[0] = lead;
        table.below_.push_back(std::move(below));
        table.above_.push_back(std::move(above));
    }
    return table;
}

CoeffTable build_coeff_table(double lambda, double strike, const VgParams& params, int levels) {
    return extend_to_level(base_level(lambda, strike, params), levels);
}

Branch branch_of(const CoeffTable& table, double x) {
    return x <= table.log_strike() ? Branch::below_strike : Branch::above_strike;
}

namespace {

// e^{theta z} times the order-th z-derivative combination of the polynomial.
long double exponential_part_dx(const CoeffTable& table, int n, Branch branch, long double z, int order) {
    const auto coeffs = table.coefficients(n, branch);
    const long double theta = branch == Branch::below_strike ? table.roots().theta1 : table.roots().theta2;
    // Horner for q, q', q''
    long double q = 0.0L, dq = 0.0L, ddq = 0.0L;
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        ddq = ddq * z + 2.0L * dq;
        dq = dq * z + q;
        q = q * z + coeffs[k];
    }
    const long double e = std::exp(theta * z);
    switch (order) {
    case 0: return e * q;
    case 1: return e * (theta * q + dq);
    case 2: return e * (theta * theta * q + 2.0L * theta * dq + ddq);
    default: throw DomainError(fmt::format("unsupported derivative order {}", order));
    }
}

void check_level(const CoeffTable& table, int n) {
    if (n < 0 || n > table.max_level())
        throw DomainError(fmt::format("level {} not present (table holds 0..{})", n, table.max_level()));
}

} // namespace

double eval_m_branch_dx(const CoeffTable& table, int n, Branch branch, double x, int order) {
    check_level(table, n);
    const long double z = static_cast<long double>(x) - table.log_strike();
    long double v = exponential_part_dx(table, n, branch, z, order);
    if (branch == Branch::below_strike) {
        const long double c = table.power_law_factor(n);
        const long double K = table.strike();
        // c (K - e^x) = -c K expm1(z)
        v += order == 0 ? -c * K * std::expm1(z) : -c * K * std::exp(z);
    }
    return static_cast<double>(v);
}

double eval_m_dx(const CoeffTable& table, int n, double x, int order) {
    return eval_m_branch_dx(table, n, branch_of(table, x), x, order);
}

double eval_m(const CoeffTable& table, int n, double x) { return eval_m_dx(table, n, x, 0); }

double eval_m_exponential_part(const CoeffTable& table, int n, double x) {
    check_level(table, n);
    const long double z = static_cast<long double>(x) - table.log_strike();
    return static_cast<double>(exponential_part_dx(table, n, branch_of(table, x), z, 0));
}

} // namespace vgp
