// reservoir.hpp - Colored-bath coupling density, level shift and Keldysh noise

#pragma once

#include <complex>

#include "dicke/params.hpp"

namespace dicke {

using cplx = std::complex<double>;

// gamma * Theta(w) * w^s / (1 + (w/omega_M)^4); the finite-cutoff profile
double coupling_density(double omega, const BathParams& bath);

// Cutoff-free profile gamma * Theta(w) * w^s used by the renormalized theory
double renormalized_density(double omega, const BathParams& bath);

struct LevelShift {
    cplx retarded;
    cplx advanced;
};

LevelShift level_shift(double omega, const BathParams& bath);

// Retarded level shift alone
cplx level_shift_retarded(double omega, const BathParams& bath);

// Continuation of K_R through the positive real axis into the lower half plane,
// principal branch of z^s
cplx level_shift_sheet2(cplx z, const BathParams& bath);

// Mirror continuation conj(K_R_II(-conj z)), the advanced partner evaluated at -z*
cplx level_shift_sheet2_mirror(cplx z, const BathParams& bath);

// F(w) = coth((w - mu)/2T), or 1 at T = 0
double distribution(double omega, const BathParams& bath);

// D(w) = 2 pi i rho(w) F(w), zero for w <= 0
cplx keldysh_noise(double omega, const BathParams& bath);

} // namespace dicke
