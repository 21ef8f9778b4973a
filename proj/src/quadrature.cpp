#include "vgp/quadrature.hpp"

#include "vgp/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>

namespace vgp {

void QuadratureConfig::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw DomainError("quadrature tolerances must be positive");
    if (max_subdivisions < 1) throw DomainError("quadrature needs at least one subdivision");
}

namespace {

// Kronrod abscissae and weights for the 7/15-point pair; Gauss weights apply
// to the odd-indexed Kronrod nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gauss_kronrod_15(const Integrand& f, double a, double b) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr double uflow = std::numeric_limits<double>::min();

    const double centr = 0.5 * (a + b);
    const double hlgth = 0.5 * (b - a);
    const double fc = f(centr);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::abs(resk);

    std::array<double, 7> fv1{};
    std::array<double, 7> fv2{};
    for (int j = 0; j < 7; ++j) {
        const double dx = hlgth * kXgk[j];
        const double f1 = f(centr - dx);
        const double f2 = f(centr + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += kWgk[j] * (f1 + f2);
        resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    const double reskh = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

    const double scale = std::abs(hlgth);
    resabs *= scale;
    resasc *= scale;
    double err = std::abs((resk - resg) * hlgth);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > uflow / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
    return {a, b, resk * hlgth, err};
}

} // namespace

QuadResult integrate(const Integrand& f, double a, double b, const QuadratureConfig& cfg,
                     std::span<const double> breakpoints) {
    cfg.validate();
    if (!(a < b)) {
        if (a == b) return {0.0, 0.0, 0, true};
        QuadResult r = integrate(f, b, a, cfg, breakpoints);
        r.value = -r.value;
        return r;
    }

    std::vector<double> cuts{a};
    for (double p : breakpoints)
        if (p > a && p < b) cuts.push_back(p);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());

    std::priority_queue<Segment> heap;
    double total = 0.0;
    double total_err = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        Segment s = gauss_kronrod_15(f, cuts[i], cuts[i + 1]);
        total += s.value;
        total_err += s.error;
        heap.push(s);
    }

    int segments = static_cast<int>(heap.size());
    auto tolerance = [&] { return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total)); };
    while (total_err > tolerance() && segments < cfg.max_subdivisions) {
        const Segment worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        // no room left to bisect in floating point
        if (!(mid > worst.a && mid < worst.b)) break;
        heap.pop();
        const Segment left = gauss_kronrod_15(f, worst.a, mid);
        const Segment right = gauss_kronrod_15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++segments;
    }

    // re-sum to shed the drift of the running updates
    total = 0.0;
    total_err = 0.0;
    while (!heap.empty()) {
        total += heap.top().value;
        total_err += heap.top().error;
        heap.pop();
    }
    return {total, total_err, segments, total_err <= tolerance()};
}

QuadResult integrate_to_infinity(const Integrand& f, double a, const QuadratureConfig& cfg) {
    auto mapped = [&f, a](double v) {
        const double x = a + (1.0 - v) / v;
        const double fx = f(x);
        return fx == 0.0 ? 0.0 : fx / (v * v);
    };
    return integrate(mapped, 0.0, 1.0, cfg);
}

Extrapolation wynn_epsilon(std::span<const double> partial_sums) {
    const std::size_t n = partial_sums.size();
    if (n == 0) return {};
    if (n < 3) return {partial_sums.back(), n == 2 ? std::abs(partial_sums[1] - partial_sums[0]) : 0.0};

    // eps[k] holds column k of the epsilon table along the latest antidiagonal
    std::vector<std::vector<double>> table(n + 1);
    table[0].assign(n + 1, 0.0);
    table[1].assign(partial_sums.begin(), partial_sums.end());
    for (std::size_t k = 2; k <= n; ++k) {
        table[k].resize(n - k + 1);
        for (std::size_t i = 0; i + k <= n; ++i) {
            const double diff = table[k - 1][i + 1] - table[k - 1][i];
            const double prev = (k == 2) ? 0.0 : table[k - 2][i + 1];
            table[k][i] = std::abs(diff) < 1e-300 ? std::numeric_limits<double>::infinity() : prev + 1.0 / diff;
        }
    }
    // odd columns (1, 3, 5, ...) carry the accelerated estimates; take the
    // deepest finite one and compare with the previous estimate in the column
    double best = partial_sums.back();
    double best_err = std::abs(partial_sums[n - 1] - partial_sums[n - 2]);
    for (std::size_t k = 3; k <= n; k += 2) {
        const auto& col = table[k];
        if (col.size() < 2) break;
        const double last = col.back();
        const double before = col[col.size() - 2];
        if (!std::isfinite(last) || !std::isfinite(before)) break;
        const double err = std::abs(last - before);
        if (err <= best_err) {
            best = last;
            best_err = err;
        }
    }
    return {best, best_err};
}

} // namespace vgp
