// observables.hpp - Excitation numbers, thermal occupation and critical-exponent fits

#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "dicke/params.hpp"
#include "dicke/quadrature.hpp"

namespace dicke {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct OccupationResult {
    double n_a{kNaN};
    double n_b{kNaN};
    double c_a0{kNaN}; // C_a(t = 0)
    double c_b0{kNaN};
    double quadrature_error{0.0};
};

// Breakpoints used for integrating C(w): 0, +-1, +-delta_a, a finite cutoff for the
// tails, and decades toward 0 fine enough for the central peak at this distance
// from criticality
std::vector<double> spectrum_breakpoints(Mode mode, const ModelParams& p);

// C(t=0) = Int dw/2pi C(w); only the fields of the requested mode are filled
OccupationResult excitation_number(Mode mode, const ModelParams& p, const QuadratureOptions& opts = {});

// C_b(t=0) of the uncoupled atom: Int dw rho(w) F(w) / |w - 1 - K_R(w)|^2
double thermal_occupation_b(const BathParams& bath, const QuadratureOptions& opts = {});

struct FitWindow {
    double eps_min{1e-4};
    double eps_max{1e-2};
};

struct PowerLaw {
    double slope{0.0};
    double amplitude{0.0};
    double residual{0.0}; // max |log n - fit|
};

// Least-squares line through (log x, log y)
PowerLaw fit_power_law(std::span<const double> x, std::span<const double> y);

std::vector<double> geometric_grid(double lo, double hi, std::size_t n);

struct ExponentFit {
    double exponent{0.0};
    double amplitude{0.0};
    FitWindow window{};
    double residual{0.0};
    std::size_t n_points{0};
    double halved_exponent{0.0}; // refit on [eps_min, eps_max/2]
    bool converged{false};       // residual < 0.05 and |shift| < 0.03
    std::vector<double> eps;
    std::vector<double> n_a;
};

struct ExponentOptions {
    Mode mode{Mode::Photon};
    int workers{0};
    QuadratureOptions quadrature{};
};

// Throws NotDiverging when n(eps_min)/n(eps_max) < 2
ExponentFit fit_critical_exponent(const ModelParams& base, FitWindow window, std::size_t n_points,
                                  const ExponentOptions& opts = {});

// |y - y_c| < 1e-4 down to eps = 1e-9: the slow opt-in window
FitWindow critical_window(const ModelParams& p);

} // namespace dicke
