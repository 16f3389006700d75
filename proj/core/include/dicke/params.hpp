// params.hpp - Model and bath parameters in natural units (hbar = k_B = omega_b = 1)

#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "dicke/errors.hpp"

namespace dicke {

inline constexpr double kIntegerExclusion = 1e-3;

struct BathParams {
    double s{0.8};
    double gamma{0.1};
    double omega_M{10.0}; // only the discretized oracle uses the cutoff
    double temperature{0.0};
    double mu{0.0};

    void validate() const {
        if (!(s > 0.0 && s < 2.0))
            throw InvalidParameter("bath exponent s must lie in (0, 2), got " + std::to_string(s));
        if (std::abs(s - 1.0) < kIntegerExclusion)
            throw InvalidParameter("bath exponent s is within 1e-3 of 1 (pi/sin(s pi) is singular)");
        if (!(gamma > 0.0))
            throw InvalidParameter("gamma must be positive");
        if (!(omega_M > 0.0))
            throw InvalidParameter("omega_M must be positive");
        if (!(temperature >= 0.0))
            throw InvalidParameter("temperature must be non-negative");
        if (mu > 0.0)
            throw InvalidParameter("chemical potential must be <= 0");
        if (temperature > 0.0 && !(mu < 0.0))
            throw InvalidParameter("temperature > 0 requires mu < 0");
    }

    // gamma*pi/sin(s*pi), the magnitude prefactor of the level shift
    double shift_prefactor() const { return gamma * std::numbers::pi / std::sin(s * std::numbers::pi); }
};

struct ModelParams {
    BathParams bath{};
    double delta_a{2.0};
    double kappa{0.5};
    double y{0.0};

    void validate() const {
        bath.validate();
        if (!(delta_a > 0.0))
            throw InvalidParameter("delta_a must be positive");
        if (!(kappa >= 0.0))
            throw InvalidParameter("kappa must be non-negative");
        if (!(y >= 0.0))
            throw InvalidParameter("y must be non-negative");
    }

    ModelParams with_y(double y_new) const {
        ModelParams p = *this;
        p.y = y_new;
        return p;
    }
};

enum class Mode { Photon, Atom };

inline const char* to_string(Mode m) { return m == Mode::Photon ? "photon" : "atom"; }

} // namespace dicke
