#include "dicke/oracle.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "dicke/errors.hpp"
#include "dicke/lyapunov.hpp"
#include "dicke/reservoir.hpp"

namespace dicke {

namespace {

double mode_frequency(std::size_t k, double dw) { return (static_cast<double>(k) + 0.5) * dw; }

void check_oracle_args(const ModelParams& p, std::size_t n_modes, double omega_max) {
    p.validate();
    if (p.bath.temperature != 0.0)
        throw InvalidParameter("discrete-bath oracle is restricted to T = 0");
    if (n_modes < 500)
        throw InvalidParameter("discrete-bath oracle needs at least 500 modes");
    if (!(omega_max >= 2.0 * p.bath.omega_M))
        throw InvalidParameter("discrete-bath oracle needs omega_max >= 2 omega_M");
}

} // namespace

OracleCalibration oracle_calibration(const ModelParams& p, std::size_t n_modes, double omega_max,
                                     const OracleOptions& opts) {
    check_oracle_args(p, n_modes, omega_max);
    const BathParams& b = p.bath;
    const double pi = std::numbers::pi;
    // slope of K_cut at zero frequency per unit gamma (analytically continued in s)
    const double slope = -std::pow(b.omega_M, b.s - 1.0) * (pi / 4.0) / std::sin((b.s - 1.0) * pi / 4.0);
    OracleCalibration c;
    c.field_factor = 1.0 + b.gamma * slope;
    if (!(c.field_factor > 0.0))
        throw InvalidParameter("cutoff omega_M too large for this gamma: field-strength factor is not positive");
    c.gamma_bare = b.gamma / c.field_factor;
    c.y_bare = p.y / std::sqrt(c.field_factor);
    c.d_omega = omega_max / static_cast<double>(n_modes);
    c.eta = opts.broadening * c.d_omega;

    BathParams bare = b;
    bare.gamma = c.gamma_bare;
    double k0 = 0.0; // Re K_disc(0)
    for (std::size_t k = 0; k < n_modes; ++k) {
        const double w = mode_frequency(k, c.d_omega);
        const double g2 = coupling_density(w, bare) * c.d_omega;
        k0 -= g2 * w / (w * w + c.eta * c.eta);
    }
    c.omega_bare = 1.0 / c.field_factor - k0;
    return c;
}

OccupationResult discrete_bath_oracle(const ModelParams& p, std::size_t n_modes, double omega_max,
                                      const OracleOptions& opts) {
    const OracleCalibration c = oracle_calibration(p, n_modes, omega_max, opts);
    BathParams bare = p.bath;
    bare.gamma = c.gamma_bare;

    // quadratures r = (x_a, p_a, x_b, p_b, x_1, p_1, ...); H = r^T Hm r / 2
    const Eigen::Index n = 2 * (2 + static_cast<Eigen::Index>(n_modes));
    Eigen::MatrixXd Hm = Eigen::MatrixXd::Zero(n, n);
    Hm(0, 0) = Hm(1, 1) = p.delta_a;
    Hm(2, 2) = Hm(3, 3) = c.omega_bare;
    Hm(0, 2) = Hm(2, 0) = c.y_bare;
    for (std::size_t k = 0; k < n_modes; ++k) {
        const Eigen::Index x = 4 + 2 * static_cast<Eigen::Index>(k);
        const double w = mode_frequency(k, c.d_omega);
        const double g = std::sqrt(coupling_density(w, bare) * c.d_omega);
        Hm(x, x) = Hm(x + 1, x + 1) = w;
        Hm(2, x) = Hm(x, 2) = g;
        Hm(3, x + 1) = Hm(x + 1, 3) = g;
    }

    // dr/dt = J Hm r - damping r + noise, J = [[0, 1], [-1, 0]] per mode
    Eigen::MatrixXd A(n, n);
    Eigen::VectorXd q = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i < n; i += 2) {
        A.row(i) = Hm.row(i + 1);
        A.row(i + 1) = -Hm.row(i);
    }
    Hm.resize(0, 0);
    auto damp = [&](Eigen::Index i, double rate) {
        A(i, i) -= rate;
        A(i + 1, i + 1) -= rate;
        q(i) = q(i + 1) = rate;
    };
    damp(0, p.kappa);
    for (Eigen::Index i = 4; i < n; i += 2)
        damp(i, c.eta);

    const SchurLyapunov sol = solve_lyapunov_schur_diag(A, q);

    // rows of X = Z Y Z^T belonging to the two system modes
    const Eigen::MatrixXd zy = sol.Z.topRows(4) * sol.Y;
    const Eigen::MatrixXd x_rows = zy * sol.Z.transpose();

    // residual of the Lyapunov equation on the photon rows
    const Eigen::MatrixXd ax = A.topLeftCorner(2, 4) * x_rows;
    const Eigen::MatrixXd xa = (A * x_rows.topRows(2).transpose()).transpose();
    Eigen::MatrixXd resid = ax + xa;
    resid(0, 0) += q(0);
    resid(1, 1) += q(1);

    OccupationResult out;
    out.c_a0 = x_rows(0, 0) + x_rows(1, 1);
    out.c_b0 = x_rows(2, 2) + x_rows(3, 3);
    out.n_a = 0.5 * (out.c_a0 - 1.0);
    out.n_b = 0.5 * (out.c_b0 - 1.0);
    out.quadrature_error = resid.cwiseAbs().maxCoeff();
    return out;
}

} // namespace dicke
