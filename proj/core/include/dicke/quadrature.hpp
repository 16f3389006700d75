// quadrature.hpp - Globally adaptive 15-point Gauss-Kronrod integration

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace dicke {

struct QuadratureOptions {
    double abs_tol{1e-8};
    double rel_tol{1e-8};
    std::size_t max_subdivisions{5000};
    double failure_tol{1e-6}; // relative to max(1, |value|)
};

struct QuadratureResult {
    double value{0.0};
    double error{0.0};
    std::size_t evaluations{0};
    std::size_t panels{0};
    bool converged{false};
};

struct PanelEstimate {
    double value;
    double error;
};

// One G7/K15 panel on [a, b] with the QUADPACK error heuristic
PanelEstimate gauss_kronrod15(const std::function<double(double)>& f, double a, double b);

// Integrates f over consecutive intervals [b_i, b_{i+1}]. The first and last
// breakpoints may be -inf/+inf, in which case the neighbouring finite breakpoint
// must be nonzero and the tail is mapped as w = L u^{-m} with m = 1/(tail_power - 1),
// tail_power being the decay power of |f| at large |w|.
QuadratureResult integrate(const std::function<double(double)>& f, std::vector<double> breakpoints,
                           double tail_power = 2.0, const QuadratureOptions& opts = {});

} // namespace dicke
