#include "dicke/poles.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "dicke/errors.hpp"

namespace dicke {

namespace {

constexpr cplx I{0.0, 1.0};

std::string describe(cplx z) {
    std::ostringstream os;
    os.precision(10);
    os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
    return os.str();
}

void check_sheet(cplx z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw NoConvergence("pole iterate became non-finite");
    if (z.imag() > 0.0)
        throw BranchCrossing("pole iterate " + describe(z) + " left the lower half plane");
    if (z.imag() == 0.0 && z.real() < 0.0)
        throw BranchCrossing("pole iterate " + describe(z) + " hit the negative real axis (z^s cut)");
}

// Size of the individual terms of the determinant; sets the convergence scale
double det_scale(cplx z, const ModelParams& p) {
    const auto [G, D] = bath_response(z, p.bath);
    const cplx zk = z + I * p.kappa;
    const cplx zg = z - I * G;
    // magnitudes before cancellation, so the scale stays finite at a root
    const double a = std::norm(zk) + p.delta_a * p.delta_a;
    const double b = std::norm(zg) + std::norm(1.0 + D);
    const double s = a * b + p.y * p.y * p.delta_a * std::abs(1.0 + D);
    return s > 0.0 ? s : 1.0;
}

// Moves z by step but never past the real axis into the upper half plane
cplx constrained_step(cplx z, cplx step) {
    cplx zn = z + step;
    if (zn.imag() > 0.0) {
        if (z.imag() < 0.0)
            zn = z + (0.9 * (-z.imag()) / step.imag()) * step;
        else
            zn = {zn.real(), 0.0};
    }
    return zn;
}

// Smallest v > 0 with det(-i v) = 0 below v_top; det is real on the imaginary axis
cplx imaginary_axis_root(const ModelParams& p, double v_top) {
    auto h = [&](double v) { return characteristic_det({0.0, -v}, p).real(); };
    double v_hi = v_top;
    double f_hi = h(v_hi);
    double v_lo = v_hi;
    for (;;) {
        v_lo = 0.8 * v_hi;
        const double f_lo = h(v_lo);
        if (f_lo > 0.0 && f_hi <= 0.0)
            break;
        v_hi = v_lo;
        f_hi = f_lo;
        if (v_hi < 1e-300)
            throw NoConvergence("no imaginary-axis root found below v = " + std::to_string(v_top));
    }
    for (int it = 0; it < 200 && (v_hi - v_lo) > 1e-15 * v_hi; ++it) {
        const double mid = 0.5 * (v_lo + v_hi);
        if (h(mid) > 0.0)
            v_lo = mid;
        else
            v_hi = mid;
    }
    return {0.0, -0.5 * (v_lo + v_hi)};
}

} // namespace

BathResponse bath_response(cplx z, const BathParams& bath) {
    const cplx kr = level_shift_sheet2(z, bath);
    const cplx ka = level_shift_sheet2_mirror(z, bath);
    return {(kr - ka) / (2.0 * I), 0.5 * (kr + ka)};
}

cplx characteristic_det(cplx z, const ModelParams& p) {
    p.validate();
    const auto [G, D] = bath_response(z, p.bath);
    const cplx zk = z + I * p.kappa;
    const cplx zg = z - I * G;
    const cplx one_d = 1.0 + D;
    return (zk * zk - p.delta_a * p.delta_a) * (zg * zg - one_d * one_d) -
           p.y * p.y * p.delta_a * one_d;
}

double critical_coupling(const ModelParams& p) {
    if (!(p.delta_a > 0.0))
        throw InvalidParameter("critical coupling requires delta_a > 0");
    return std::sqrt((p.delta_a * p.delta_a + p.kappa * p.kappa) / p.delta_a);
}

cplx find_pole(cplx guess, const ModelParams& p, const PoleSolverOptions& opts) {
    p.validate();
    check_sheet(guess);
    auto f = [&](cplx z) { return characteristic_det(z, p); };
    const double tol = opts.tolerance * det_scale(guess, p);

    cplx z = guess;
    cplx fz = f(z);
    bool muller = false;
    cplx m0, m1, f0, f1;

    for (int it = 0; it < opts.max_iterations; ++it) {
        if (std::abs(fz) <= tol) {
            // a few polishing steps while the residual keeps shrinking
            for (int k = 0; k < 3 && fz != cplx{}; ++k) {
                const double h = 1e-7 * std::max(std::abs(z), 1e-3);
                const cplx d = (f(z + h) - f(z - h)) / (2.0 * h);
                if (d == cplx{})
                    break;
                const cplx zn = constrained_step(z, -fz / d);
                const cplx fn = f(zn);
                if (!(std::abs(fn) < 0.5 * std::abs(fz)))
                    break;
                z = zn;
                fz = fn;
            }
            check_sheet(z);
            return z;
        }

        if (!muller) {
            const double h = 1e-7 * std::max(std::abs(z), 1e-3);
            const cplx d = (f(z + h) - f(z - h)) / (2.0 * h);
            bool improved = false;
            if (d != cplx{} && std::isfinite(std::abs(d))) {
                cplx step = -fz / d;
                for (int k = 0; k < 40; ++k) {
                    const cplx zn = constrained_step(z, step);
                    check_sheet(zn);
                    const cplx fn = f(zn);
                    if (std::abs(fn) < std::abs(fz)) {
                        z = zn;
                        fz = fn;
                        improved = true;
                        break;
                    }
                    step *= 0.5;
                }
            }
            if (!improved) {
                muller = true;
                const double dz = 1e-3 * std::max(std::abs(z), 1e-3);
                m0 = z + dz;
                m1 = z - I * dz;
                f0 = f(m0);
                f1 = f(m1);
            }
            continue;
        }

        const cplx h1 = m1 - m0;
        const cplx h2 = z - m1;
        const cplx d1 = (f1 - f0) / h1;
        const cplx d2 = (fz - f1) / h2;
        const cplx a = (d2 - d1) / (h2 + h1);
        const cplx b = a * h2 + d2;
        const cplx disc = std::sqrt(b * b - 4.0 * fz * a);
        const cplx den = std::abs(b + disc) > std::abs(b - disc) ? b + disc : b - disc;
        if (den == cplx{})
            throw NoConvergence("Muller iteration degenerated at z = " + describe(z));
        const cplx zn = constrained_step(z, -2.0 * fz / den);
        check_sheet(zn);
        m0 = m1;
        f0 = f1;
        m1 = z;
        f1 = fz;
        z = zn;
        fz = f(z);
    }
    throw NoConvergence("pole search from " + describe(guess) + " did not converge in " +
                        std::to_string(opts.max_iterations) + " iterations");
}

SoftModeBranch trace_soft_mode(const ModelParams& base, std::span<const double> y_grid) {
    base.validate();
    const double yc = critical_coupling(base);
    for (std::size_t i = 0; i < y_grid.size(); ++i) {
        if (!(y_grid[i] >= 0.0 && y_grid[i] < yc))
            throw InvalidParameter("soft-mode grid must lie in [0, y_c)");
        if (i > 0 && !(y_grid[i] > y_grid[i - 1]))
            throw InvalidParameter("soft-mode grid must be strictly increasing");
    }

    SoftModeBranch branch;
    const cplx seed = 1.0 + level_shift_sheet2(1.0, base.bath);
    cplx z = find_pole(seed, base.with_y(0.0));
    double y = 0.0;
    bool on_axis = false;
    const double max_step = 0.01 * yc;
    const double min_step = 1e-6 * yc;

    struct Step {
        cplx z;
        bool lands_on_axis;
    };
    auto solve_at = [&](double y_new, cplx z_prev) -> Step {
        const ModelParams p = base.with_y(y_new);
        if (on_axis)
            return {imaginary_axis_root(p, 1.5 * std::abs(z_prev)), true};
        cplx zn = find_pole(z_prev, p);
        if (zn.real() < 0.0)
            zn = -std::conj(zn); // pair partner
        if (std::abs(zn - z_prev) > std::max(std::abs(z_prev), 0.05))
            throw NoConvergence("continuation jumped from " + describe(z_prev) + " to " + describe(zn));
        if (std::abs(zn.real()) <= 1e-9 * std::abs(zn))
            return {imaginary_axis_root(p, 1.5 * std::abs(z_prev)), true};
        return {zn, false};
    };

    for (double target : y_grid) {
        double dy = std::min(target - y, max_step);
        while (y < target) {
            const double y_try = std::min(y + dy, target);
            try {
                const Step st = solve_at(y_try, z);
                if (st.lands_on_axis && !on_axis) {
                    on_axis = true;
                    branch.bifurcation_y = y_try;
                }
                z = st.z;
                y = y_try;
                dy = std::min(target - y, max_step);
            } catch (const NumericalError& e) {
                dy *= 0.5;
                if (dy < min_step) {
                    std::ostringstream os;
                    os.precision(17);
                    os << "soft-mode continuation failed at y = " << y_try << ": " << e.what();
                    throw NoConvergence(os.str());
                }
            }
        }
        branch.points.push_back({target, z});
    }
    return branch;
}

std::vector<double> soft_mode_grid(const ModelParams& p, std::size_t n_linear, double eps_last) {
    const double yc = critical_coupling(p);
    if (n_linear < 2 || !(eps_last > 0.0 && eps_last < 0.1))
        throw InvalidParameter("soft-mode grid needs n_linear >= 2 and eps_last in (0, 0.1)");
    std::vector<double> grid;
    for (std::size_t i = 0; i < n_linear; ++i)
        grid.push_back(yc * 0.9 * static_cast<double>(i) / static_cast<double>(n_linear - 1));
    const int per_decade = 8;
    for (int k = 1;; ++k) {
        const double eps = 0.1 * std::pow(10.0, -static_cast<double>(k) / per_decade);
        if (eps < eps_last * (1.0 - 1e-9))
            break;
        grid.push_back(yc * (1.0 - eps));
    }
    return grid;
}

double estimate_crossing_coupling(const SoftModeBranch& branch) {
    const auto& pts = branch.points;
    if (pts.size() < 3)
        throw InvalidParameter("crossing estimate needs at least three branch points");
    const double y1 = pts[pts.size() - 3].y, y2 = pts[pts.size() - 2].y, y3 = pts.back().y;
    const double v1 = std::abs(pts[pts.size() - 3].z), v2 = std::abs(pts[pts.size() - 2].z),
                 v3 = std::abs(pts.back().z);
    const double l12 = std::log(v1 / v2), l23 = std::log(v2 / v3);
    // power law v = A (y* - y)^q through all three points
    auto g = [&](double d) {
        const double ys = y3 + d;
        return l12 * std::log((ys - y2) / (ys - y3)) - l23 * std::log((ys - y1) / (ys - y2));
    };
    double lo = 1e-14 * std::max(y3, 1.0);
    double hi = lo;
    const double g_lo = g(lo);
    while (hi < 1e3 * (y3 - y1) && (g(hi) > 0.0) == (g_lo > 0.0))
        hi *= 2.0;
    if ((g(hi) > 0.0) == (g_lo > 0.0))
        throw NoConvergence("crossing coupling could not be bracketed from the branch tail");
    for (int it = 0; it < 200; ++it) {
        const double mid = std::sqrt(lo * hi);
        if ((g(mid) > 0.0) == (g_lo > 0.0))
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-15 * hi)
            break;
    }
    return y3 + std::sqrt(lo * hi);
}

} // namespace dicke
