// oracle.hpp - Discretized-bath steady state from the Lyapunov equation

#pragma once

#include <cstddef>

#include "dicke/observables.hpp"
#include "dicke/params.hpp"

namespace dicke {

struct OracleOptions {
    double broadening{0.5}; // bath-mode amplitude damping in units of the grid spacing
};

// Maps the finite-cutoff discrete model onto the renormalized continuum theory:
// K_cut(w) - K_cut(0) ~ K_ren(w) + gamma I w, so the b mode picks up a field-strength
// factor Z = 1 + gamma I and the bare parameters are rescaled accordingly
struct OracleCalibration {
    double field_factor{1.0};   // Z = 1 + gamma I
    double gamma_bare{0.0};     // gamma / Z
    double y_bare{0.0};         // y / sqrt(Z)
    double omega_bare{1.0};     // 1/Z - Re K_disc(0)
    double d_omega{0.0};
    double eta{0.0};
};

OracleCalibration oracle_calibration(const ModelParams& p, std::size_t n_modes, double omega_max,
                                     const OracleOptions& opts = {});

// n_a, n_b of the (2 + n_modes)-mode linear system; T = 0 only
OccupationResult discrete_bath_oracle(const ModelParams& p, std::size_t n_modes, double omega_max,
                                      const OracleOptions& opts = {});

} // namespace dicke
