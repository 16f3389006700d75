#include "dicke/reservoir.hpp"

#include <cmath>
#include <numbers>

namespace dicke {

namespace {

constexpr double pi = std::numbers::pi;

// |z|^s e^{i s arg z} with arg in (-pi, pi]; an exactly real negative z gets
// arg = +pi regardless of the sign of its zero imaginary part
cplx principal_pow(cplx z, double s) {
    const double r = std::abs(z);
    if (r == 0.0)
        return {0.0, 0.0};
    double arg = std::atan2(z.imag(), z.real());
    if (z.imag() == 0.0 && z.real() < 0.0)
        arg = pi;
    return std::polar(std::pow(r, s), s * arg);
}

} // namespace

double coupling_density(double omega, const BathParams& bath) {
    if (omega <= 0.0)
        return 0.0;
    const double x = omega / bath.omega_M;
    const double x2 = x * x;
    return bath.gamma * std::pow(omega, bath.s) / (1.0 + x2 * x2);
}

double renormalized_density(double omega, const BathParams& bath) {
    if (omega <= 0.0)
        return 0.0;
    return bath.gamma * std::pow(omega, bath.s);
}

cplx level_shift_retarded(double omega, const BathParams& bath) {
    bath.validate();
    if (omega == 0.0)
        return {0.0, 0.0};
    const double mag = bath.shift_prefactor() * std::pow(std::abs(omega), bath.s);
    if (omega < 0.0)
        return {mag, 0.0};
    return std::polar(mag, -bath.s * pi);
}

LevelShift level_shift(double omega, const BathParams& bath) {
    const cplx kr = level_shift_retarded(omega, bath);
    return {kr, std::conj(kr)};
}

cplx level_shift_sheet2(cplx z, const BathParams& bath) {
    bath.validate();
    return bath.shift_prefactor() * std::polar(1.0, -bath.s * pi) * principal_pow(z, bath.s);
}

cplx level_shift_sheet2_mirror(cplx z, const BathParams& bath) {
    bath.validate();
    return bath.shift_prefactor() * std::polar(1.0, bath.s * pi) * principal_pow(-z, bath.s);
}

double distribution(double omega, const BathParams& bath) {
    bath.validate();
    if (bath.temperature == 0.0)
        return 1.0;
    return 1.0 / std::tanh((omega - bath.mu) / (2.0 * bath.temperature));
}

cplx keldysh_noise(double omega, const BathParams& bath) {
    bath.validate();
    if (omega <= 0.0)
        return {0.0, 0.0};
    return {0.0, 2.0 * pi * renormalized_density(omega, bath) * distribution(omega, bath)};
}

} // namespace dicke
