// poles.hpp - Characteristic frequencies on the second sheet and soft-mode tracing

#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "dicke/params.hpp"
#include "dicke/reservoir.hpp"

namespace dicke {

struct BathResponse {
    cplx Gamma;
    cplx Delta;
};

// Gamma(z) = (K_II(z) - K_A(-z*))/2i and Delta(z) = (K_II(z) + K_A(-z*))/2, where
// K_A(-z*) is continued as conj(K_II(-z*)) so that both stay analytic in z
BathResponse bath_response(cplx z, const BathParams& bath);

// [(z + i kappa)^2 - delta_a^2][(z - i Gamma)^2 - (1 + Delta)^2] - y^2 delta_a (1 + Delta)
cplx characteristic_det(cplx z, const ModelParams& p);

// sqrt((delta_a^2 + kappa^2)/delta_a), independent of the bath
double critical_coupling(const ModelParams& p);

struct PoleSolverOptions {
    int max_iterations{200};
    double tolerance{1e-11}; // relative to the size of the determinant's terms at the guess
};

// Newton with a central-difference derivative, Muller fallback on stagnation.
// Iterates are kept in the closed lower half plane.
cplx find_pole(cplx guess, const ModelParams& p, const PoleSolverOptions& opts = {});

struct SoftModePoint {
    double y;
    cplx z;
};

struct SoftModeBranch {
    std::vector<SoftModePoint> points;
    std::optional<double> bifurcation_y;
};

// Continuation in y from the dressed bare-b pole. After the pole pair collides on
// the imaginary axis the branch closest to the real axis is followed.
SoftModeBranch trace_soft_mode(const ModelParams& base, std::span<const double> y_grid);

// Grid of n couplings in [0, y_c) refined geometrically toward y_c,
// the last point at y_c (1 - eps_last)
std::vector<double> soft_mode_grid(const ModelParams& p, std::size_t n_linear, double eps_last = 1e-6);

// Coupling where |z| vanishes, from a power-law fit through the last three points
double estimate_crossing_coupling(const SoftModeBranch& branch);

} // namespace dicke
