// greens.hpp - Reduced 2x2 Green's-function blocks and correlation spectra

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dicke/params.hpp"
#include "dicke/reservoir.hpp"

namespace dicke {

enum class BlockKind { Retarded, Advanced, Keldysh };

struct GreenBlock2x2 {
    Eigen::Matrix2cd entries{Eigen::Matrix2cd::Zero()};
    BlockKind kind{BlockKind::Retarded};
    double omega{0.0};
};

// Photon: w - delta_a + i kappa.  Atom: w - 1 - K_R(w)
cplx bare_inverse_propagator(Mode mode, double omega, const ModelParams& p);

// Photon: -(y^2/4)[1/(w-1-K_R(w)) + 1/(-w-1-K_A(-w))]
// Atom:   -(y^2/2) delta_a / ((w + i kappa)^2 - delta_a^2)
cplx self_energy(Mode mode, double omega, const ModelParams& p);

// Photon: d(w) = -(y^2/4)[G^K_b(w) + G^K_b(-w)]
// Atom:   g(w) = -(y^2/4)[G^K_a(w) + G^K_a(-w)]
cplx noise_kernel(Mode mode, double omega, const ModelParams& p);

struct ReducedBlocks {
    GreenBlock2x2 inverse_retarded;
    GreenBlock2x2 keldysh_kernel; // D^K
    GreenBlock2x2 retarded;
    GreenBlock2x2 advanced;
    GreenBlock2x2 keldysh;        // G^K = -G^R D^K G^A
    double det_abs{0.0};          // |det [G^R]^-1|
};

// Throws NoConvergence if |det [G^R]^-1| < 1e-300
ReducedBlocks reduced_blocks(Mode mode, double omega, const ModelParams& p);

// C(w) = i G^K_11, real and non-negative; requires y < y_c
double correlation_spectrum(Mode mode, double omega, const ModelParams& p);

struct SpectrumSample {
    double omega;
    double value;
};

struct Spectrum {
    Mode mode{Mode::Photon};
    std::vector<SpectrumSample> samples;
    ModelParams params{};
};

// Linear coverage of [-3 delta_a, 3 delta_a] merged with log-spaced points
// on both sides of zero from 1e-8 up to 3 delta_a
std::vector<double> spectrum_grid(const ModelParams& p, std::size_t n_linear = 1201,
                                  std::size_t n_log_per_side = 160);

Spectrum compute_spectrum(Mode mode, std::span<const double> grid, const ModelParams& p,
                          int workers = 0);

} // namespace dicke
