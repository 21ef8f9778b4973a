#pragma once

#include "vgp/model.hpp"

#include <span>
#include <vector>

namespace vgp {

/// Roots theta1 > 0 > theta2 of mu*theta + sigma^2*theta^2/2 - lambda = 0.
struct ThetaRoots {
    double theta1;
    double theta2;
};

ThetaRoots theta_roots(double lambda, const VgParams& params);

/// Side of the strike a log-price falls on. x == log K belongs to below_strike.
enum class Branch { below_strike = 1, above_strike = 2 };

inline constexpr int kMaxLaplaceLevel = 64;

/// Closed-form representation of m(lambda, x), the time-Laplace transform of
/// the zero-rate Black-Scholes put, and of its lambda-derivatives m^(n).
///
/// With z = x - log K, level n on branch i is
///     e^{theta_i z} * sum_{j=1}^{n+1} a_{ij} z^{j-1}
/// plus, on the below-strike branch only, the power-law terms
///     (-1)^n n! / lambda^{n+1} * (K - e^x).
/// Working in z instead of x keeps the coefficients O(1); the raw-x form
/// carries factors K^{-theta_i} that overflow for realistic roots.
///
/// Coefficients are held in extended precision. Instances are immutable once
/// built; extend_to_level returns a new table.
class CoeffTable {
public:
    double lambda() const noexcept { return lambda_; }
    double strike() const noexcept { return strike_; }
    double log_strike() const noexcept { return log_strike_; }
    const VgParams& params() const noexcept { return params_; }
    const ThetaRoots& roots() const noexcept { return roots_; }
    int max_level() const noexcept { return static_cast<int>(below_.size()) - 1; }

    /// a_{i1..i(n+1)} for the given level and branch.
    std::span<const long double> coefficients(int level, Branch branch) const;

    /// (-1)^n n! / lambda^{n+1}, the weight of (K - e^x) on the below-strike branch.
    long double power_law_factor(int level) const;

private:
    CoeffTable(double lambda, double strike, const VgParams& params, ThetaRoots roots);

    friend CoeffTable base_level(double lambda, double strike, const VgParams& params);
    friend CoeffTable extend_to_level(CoeffTable table, int n);

    double lambda_;
    double strike_;
    double log_strike_;
    VgParams params_;
    ThetaRoots roots_;
    std::vector<std::vector<long double>> below_;
    std::vector<std::vector<long double>> above_;
};

/// Level-0 table: a_11 = a_21 = K / (lambda (theta1 - theta2)).
CoeffTable base_level(double lambda, double strike, const VgParams& params);

/// Adds levels up to n (no-op for levels already present). Each new level is
/// obtained by downward back-substitution of
///     n a^{(n-1)}_j = j (mu + sigma^2 theta) a_{j+1} + sigma^2/2 (j+1) j a_{j+2}
/// for j = n..1, followed by C^1 matching of the two branches at z = 0.
CoeffTable extend_to_level(CoeffTable table, int n);

/// Convenience: base_level followed by extend_to_level.
CoeffTable build_coeff_table(double lambda, double strike, const VgParams& params, int levels);

double eval_m(const CoeffTable& table, int n, double x);

/// m^(n) minus the below-strike power-law terms; equals eval_m above the strike.
double eval_m_exponential_part(const CoeffTable& table, int n, double x);

/// d^order/dx^order (order 0, 1 or 2) of one branch's representation at x,
/// regardless of which side of the strike x lies on.
double eval_m_branch_dx(const CoeffTable& table, int n, Branch branch, double x, int order);

/// d^order/dx^order of m^(n) at x, using the branch x belongs to.
double eval_m_dx(const CoeffTable& table, int n, double x, int order);

Branch branch_of(const CoeffTable& table, double x);

} // namespace vgp
