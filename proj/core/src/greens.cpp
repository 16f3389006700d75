#include "dicke/greens.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dicke/errors.hpp"
#include "dicke/parallel.hpp"
#include "dicke/poles.hpp"

namespace dicke {

namespace {

constexpr cplx I{0.0, 1.0};

// G^K_b(x) = -D(x)/|x - 1 - K_R(x)|^2 for the uncoupled atom
cplx bare_keldysh_atom(double x, const BathParams& bath) {
    const cplx d = keldysh_noise(x, bath);
    if (d == cplx{})
        return {};
    return -d / std::norm(x - 1.0 - level_shift_retarded(x, bath));
}

// G^K_a(x) = -2 i kappa/((x - delta_a)^2 + kappa^2) for the uncoupled photon
cplx bare_keldysh_photon(double x, const ModelParams& p) {
    const double dx = x - p.delta_a;
    return -2.0 * I * p.kappa / (dx * dx + p.kappa * p.kappa);
}

} // namespace

cplx bare_inverse_propagator(Mode mode, double omega, const ModelParams& p) {
    p.validate();
    if (mode == Mode::Photon)
        return {omega - p.delta_a, p.kappa};
    return omega - 1.0 - level_shift_retarded(omega, p.bath);
}

cplx self_energy(Mode mode, double omega, const ModelParams& p) {
    p.validate();
    const double y2 = p.y * p.y;
    if (y2 == 0.0)
        return {};
    if (mode == Mode::Photon) {
        const cplx bp = omega - 1.0 - level_shift_retarded(omega, p.bath);
        const cplx bm = -omega - 1.0 - std::conj(level_shift_retarded(-omega, p.bath));
        return -0.25 * y2 * (1.0 / bp + 1.0 / bm);
    }
    const cplx w = omega + I * p.kappa;
    return -0.5 * y2 * p.delta_a / (w * w - p.delta_a * p.delta_a);
}

cplx noise_kernel(Mode mode, double omega, const ModelParams& p) {
    p.validate();
    const double y2 = p.y * p.y;
    if (y2 == 0.0)
        return {};
    if (mode == Mode::Photon)
        return -0.25 * y2 * (bare_keldysh_atom(omega, p.bath) + bare_keldysh_atom(-omega, p.bath));
    return -0.25 * y2 * (bare_keldysh_photon(omega, p) + bare_keldysh_photon(-omega, p));
}

ReducedBlocks reduced_blocks(Mode mode, double omega, const ModelParams& p) {
    p.validate();
    ReducedBlocks out;
    Eigen::Matrix2cd rinv;
    Eigen::Matrix2cd dk;
    const cplx sigma = self_energy(mode, omega, p);
    const cplx noise = noise_kernel(mode, omega, p);
    if (mode == Mode::Photon) {
        const cplx a = {omega - p.delta_a, p.kappa};
        const cplx abar = {-omega - p.delta_a, -p.kappa};
        rinv << a + sigma, sigma, sigma, abar + sigma;
        const cplx diag = 2.0 * I * p.kappa + noise;
        dk << diag, noise, noise, diag;
    } else {
        const cplx b = omega - 1.0 - level_shift_retarded(omega, p.bath);
        const cplx bbar = -omega - 1.0 - std::conj(level_shift_retarded(-omega, p.bath));
        rinv << b + sigma, sigma, sigma, bbar + sigma;
        dk << keldysh_noise(omega, p.bath) + noise, noise, noise,
            keldysh_noise(-omega, p.bath) + noise;
    }

    const cplx det = rinv(0, 0) * rinv(1, 1) - rinv(0, 1) * rinv(1, 0);
    out.det_abs = std::abs(det);
    if (!(out.det_abs >= 1e-300))
        throw NoConvergence("inverse retarded block is singular at omega = " + std::to_string(omega) +
                            " (critical point)");

    Eigen::Matrix2cd gr;
    gr << rinv(1, 1), -rinv(0, 1), -rinv(1, 0), rinv(0, 0);
    gr /= det;
    const Eigen::Matrix2cd ga = gr.adjoint();

    out.inverse_retarded = {rinv, BlockKind::Retarded, omega};
    out.keldysh_kernel = {dk, BlockKind::Keldysh, omega};
    out.retarded = {gr, BlockKind::Retarded, omega};
    out.advanced = {ga, BlockKind::Advanced, omega};
    out.keldysh = {-(gr * dk * ga), BlockKind::Keldysh, omega};
    return out;
}

double correlation_spectrum(Mode mode, double omega, const ModelParams& p) {
    p.validate();
    if (!(p.y < critical_coupling(p)))
        throw InvalidParameter("correlation spectrum requires y < y_c (normal phase)");
    const cplx c = I * reduced_blocks(mode, omega, p).keldysh.entries(0, 0);
    if (std::abs(c.imag()) > 1e-10 * std::max(1.0, std::abs(c.real())))
        throw NoConvergence("correlation spectrum has a non-negligible imaginary part at omega = " +
                            std::to_string(omega));
    return c.real();
}

std::vector<double> spectrum_grid(const ModelParams& p, std::size_t n_linear,
                                  std::size_t n_log_per_side) {
    p.validate();
    const double edge = 3.0 * p.delta_a;
    std::vector<double> grid;
    grid.reserve(n_linear + 2 * n_log_per_side);
    if (n_linear >= 2)
        for (std::size_t i = 0; i < n_linear; ++i)
            grid.push_back(-edge + 2.0 * edge * static_cast<double>(i) / static_cast<double>(n_linear - 1));
    if (n_log_per_side >= 2) {
        const double lo = std::log(1e-8);
        const double hi = std::log(edge);
        for (std::size_t i = 0; i < n_log_per_side; ++i) {
            const double w = std::exp(lo + (hi - lo) * static_cast<double>(i) /
                                               static_cast<double>(n_log_per_side - 1));
            grid.push_back(w);
            grid.push_back(-w);
        }
    }
    std::sort(grid.begin(), grid.end());
    std::vector<double> out;
    out.reserve(grid.size());
    for (double w : grid)
        if (out.empty() || w - out.back() > 1e-12 * std::max(1e-8, std::abs(w)))
            out.push_back(w);
    return out;
}

Spectrum compute_spectrum(Mode mode, std::span<const double> grid, const ModelParams& p, int workers) {
    p.validate();
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw InvalidParameter("spectrum grid must be strictly increasing");
    Spectrum out{mode, {}, p};
    const auto values = parallel_map(
        grid.size(), [&](std::size_t i) { return correlation_spectrum(mode, grid[i], p); }, workers);
    out.samples.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        out.samples.push_back({grid[i], values[i]});
    return out;
}

} // namespace dicke
