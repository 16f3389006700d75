#include "dicke/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dicke/errors.hpp"
#include "dicke/greens.hpp"
#include "dicke/parallel.hpp"
#include "dicke/poles.hpp"

namespace dicke {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// x > 0 solving -x - 1 - K_R(-x) = 0; only super-Ohmic baths (negative prefactor) have one
double ghost_root(const BathParams& bath) {
    const double c = bath.shift_prefactor();
    if (c >= 0.0)
        return kNaN;
    auto g = [&](double x) { return -c * std::pow(x, bath.s) - x - 1.0; };
    double lo = 1.0, hi = 2.0;
    while (g(hi) < 0.0 && hi < 1e12)
        hi *= 2.0;
    if (g(hi) < 0.0)
        return kNaN;
    // g(x) < 0 for small x, > 0 beyond the root
    lo = hi / 2.0;
    while (g(lo) > 0.0 && lo > 1e-12)
        lo /= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) > 0.0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

double tail_power(Mode mode, const BathParams& bath) {
    if (mode == Mode::Photon)
        return 2.0;
    return bath.s < 1.0 ? 2.0 - bath.s : bath.s;
}

void add_decades(std::vector<double>& bp, double lower, double upper, bool both_sides) {
    lower = std::max(lower, 1e-200);
    for (int k = static_cast<int>(std::floor(std::log10(lower)));; ++k) {
        const double w = std::pow(10.0, k);
        if (w >= upper)
            break;
        bp.push_back(w);
        if (both_sides)
            bp.push_back(-w);
    }
}

} // namespace

std::vector<double> spectrum_breakpoints(Mode mode, const ModelParams& p) {
    p.validate();
    const double yc = critical_coupling(p);
    const double eps = std::max(1.0 - p.y / yc, 1e-300);
    double lower = 1e-3 * std::pow(eps, std::max(1.0, 1.0 / p.bath.s));
    if (p.bath.temperature > 0.0)
        lower = std::min(lower, 1e-3 * std::abs(p.bath.mu));

    std::vector<double> bp{0.0};
    add_decades(bp, lower, 1.0, true);
    double edge = std::max(20.0, 5.0 * p.delta_a);
    for (double w : {0.5, 1.0, 2.0, p.delta_a, 2.0 * p.delta_a}) {
        bp.push_back(w);
        bp.push_back(-w);
    }
    const double xg = ghost_root(p.bath);
    if (std::isfinite(xg)) {
        bp.push_back(xg);
        bp.push_back(-xg);
        edge = std::max(edge, 2.0 * xg);
    }
    bp.push_back(edge);
    bp.push_back(-edge);
    (void)mode;
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
    return bp;
}

OccupationResult excitation_number(Mode mode, const ModelParams& p, const QuadratureOptions& opts) {
    p.validate();
    if (!(p.y < critical_coupling(p)))
        throw InvalidParameter("excitation number requires y < y_c strictly");
    std::vector<double> bp = spectrum_breakpoints(mode, p);
    bp.insert(bp.begin(), -inf);
    bp.push_back(inf);
    const auto f = [&](double w) { return correlation_spectrum(mode, w, p) / (2.0 * std::numbers::pi); };
    const QuadratureResult q = integrate(f, bp, tail_power(mode, p.bath), opts);

    OccupationResult out;
    out.quadrature_error = q.error;
    if (mode == Mode::Photon) {
        out.c_a0 = q.value;
        out.n_a = 0.5 * (q.value - 1.0);
    } else {
        out.c_b0 = q.value;
        out.n_b = 0.5 * (q.value - 1.0);
    }
    return out;
}

double thermal_occupation_b(const BathParams& bath, const QuadratureOptions& opts) {
    bath.validate();
    double lower = 1e-12;
    if (bath.temperature > 0.0)
        lower = std::min(lower, 1e-3 * std::abs(bath.mu));
    std::vector<double> bp{0.0};
    add_decades(bp, lower, 0.5, false);
    for (double w : {0.5, 1.0, 1.5, 2.0, 5.0, 20.0})
        bp.push_back(w);
    bp.push_back(inf);
    const auto f = [&](double w) {
        if (w <= 0.0)
            return 0.0;
        return renormalized_density(w, bath) * distribution(w, bath) /
               std::norm(w - 1.0 - level_shift_retarded(w, bath));
    };
    return integrate(f, bp, tail_power(Mode::Atom, bath), opts).value;
}

PowerLaw fit_power_law(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw InvalidParameter("power-law fit needs matching inputs with at least two points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0 && y[i] > 0.0))
            throw InvalidParameter("power-law fit needs positive data");
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / n;
    double resid = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        resid = std::max(resid, std::abs(std::log(y[i]) - intercept - slope * std::log(x[i])));
    return {slope, std::exp(intercept), resid};
}

std::vector<double> geometric_grid(double lo, double hi, std::size_t n) {
    if (!(lo > 0.0 && hi > lo) || n < 2)
        throw InvalidParameter("geometric grid needs 0 < lo < hi and n >= 2");
    std::vector<double> g(n);
    const double a = std::log(lo), b = std::log(hi);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    g.front() = lo;
    g.back() = hi;
    return g;
}

ExponentFit fit_critical_exponent(const ModelParams& base, FitWindow window, std::size_t n_points,
                                  const ExponentOptions& opts) {
    base.validate();
    if (!(window.eps_min > 0.0 && window.eps_min < window.eps_max && window.eps_max <= 0.1))
        throw InvalidParameter("fit window must satisfy 0 < eps_min < eps_max <= 0.1");
    if (n_points < 8)
        throw InvalidParameter("exponent fit needs at least 8 points");
    if (!(window.eps_max / 2.0 > window.eps_min))
        throw InvalidParameter("fit window too narrow to halve");

    const double yc = critical_coupling(base);
    const std::vector<double> eps = geometric_grid(window.eps_min, window.eps_max, n_points);
    const std::vector<double> eps_half = geometric_grid(window.eps_min, window.eps_max / 2.0, n_points);
    std::vector<double> all = eps;
    all.insert(all.end(), eps_half.begin(), eps_half.end());

    const auto occ = parallel_map(
        all.size(),
        [&](std::size_t i) {
            const OccupationResult r =
                excitation_number(opts.mode, base.with_y(yc * (1.0 - all[i])), opts.quadrature);
            return opts.mode == Mode::Photon ? r.n_a : r.n_b;
        },
        opts.workers);
    const std::vector<double> n(occ.begin(), occ.begin() + static_cast<std::ptrdiff_t>(n_points));
    const std::vector<double> n_half(occ.begin() + static_cast<std::ptrdiff_t>(n_points), occ.end());

    const double ratio = n.front() / n.back();
    if (!(ratio >= 2.0))
        throw NotDiverging("excitation number grows by only a factor " + std::to_string(ratio) +
                               " across the fit window; fluctuations stay finite at criticality",
                           ratio);

    const PowerLaw full = fit_power_law(eps, n);
    const PowerLaw half = fit_power_law(eps_half, n_half);

    ExponentFit fit;
    fit.exponent = std::abs(full.slope);
    fit.amplitude = full.amplitude;
    fit.window = window;
    fit.residual = full.residual;
    fit.n_points = n_points;
    fit.halved_exponent = std::abs(half.slope);
    fit.converged = fit.residual < 0.05 && std::abs(fit.halved_exponent - fit.exponent) < 0.03;
    fit.eps = eps;
    fit.n_a = n;
    return fit;
}

FitWindow critical_window(const ModelParams& p) {
    return {1e-9, 1e-4 / critical_coupling(p)};
}

} // namespace dicke
