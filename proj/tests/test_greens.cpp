#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "dicke/errors.hpp"
#include "dicke/greens.hpp"
#include "dicke/poles.hpp"
#include "support/oracles.hpp"

using namespace dicke;
using doctest::Approx;

namespace {

constexpr double pi = std::numbers::pi;
constexpr cplx I{0.0, 1.0};

ModelParams model(double y_frac, double s = 0.8) {
    ModelParams p;
    p.bath.s = s;
    p.y = y_frac * critical_coupling(p);
    return p;
}

std::vector<double> linear(double a, double b, int n) {
    std::vector<double> g;
    for (int i = 0; i < n; ++i)
        g.push_back(a + (b - a) * i / (n - 1.0));
    return g;
}

// C_a written out from the closed-form 2x2 inverse, with A(w) = w - delta_a + i kappa
double scalar_photon_spectrum(double w, const ModelParams& p) {
    const double y2 = p.y * p.y;
    const auto kr = [&](double x) { return level_shift_retarded(x, p.bath); };
    const cplx sigma = -0.25 * y2 * (1.0 / (w - 1.0 - kr(w)) + 1.0 / (-w - 1.0 - std::conj(kr(-w))));
    const auto gkb = [&](double x) { return -keldysh_noise(x, p.bath) / std::norm(x - 1.0 - kr(x)); };
    const cplx d = -0.25 * y2 * (gkb(w) + gkb(-w));
    const cplx a_plus = {w - p.delta_a, p.kappa};
    const cplx a_minus = {-w - p.delta_a, p.kappa};
    const cplx det = (a_plus + sigma) * (std::conj(a_minus) + sigma) - sigma * sigma;
    const cplx inner = 2.0 * I * p.kappa *
                           (std::norm(a_minus) + 2.0 * (sigma * a_minus).real() + 2.0 * std::norm(sigma)) +
                       d * std::norm(a_minus);
    const cplx c = -I * inner / std::norm(det);
    return c.real();
}

} // namespace

TEST_CASE("bare inverse propagators") {
    ModelParams p = model(0.0);
    CHECK(bare_inverse_propagator(Mode::Photon, 2.0, p) == cplx{0.0, 0.5});
    CHECK(bare_inverse_propagator(Mode::Atom, 0.0, p) == cplx{-1.0, 0.0});
    const cplx b1 = bare_inverse_propagator(Mode::Atom, 1.0, p);
    CHECK(b1.real() == Approx(0.4324031330).epsilon(1e-9));
    CHECK(b1.imag() == Approx(0.1 * pi).epsilon(1e-12));
}

TEST_CASE("self-energy examples") {
    ModelParams p = model(0.0);
    for (double w : {-2.0, 0.0, 0.7}) {
        CHECK(self_energy(Mode::Photon, w, p) == cplx{});
        CHECK(self_energy(Mode::Atom, w, p) == cplx{});
        CHECK(noise_kernel(Mode::Photon, w, p) == cplx{});
        CHECK(noise_kernel(Mode::Atom, w, p) == cplx{});
    }
    p.y = 1.0;
    const cplx sb = self_energy(Mode::Atom, 0.0, p);
    CHECK(sb.real() == Approx(1.0 / 4.25).epsilon(1e-14));
    CHECK(std::abs(sb.imag()) < 1e-15);
    CHECK(sb.real() == Approx(0.23529).epsilon(1e-5));
    const cplx sa = self_energy(Mode::Photon, 0.0, p);
    CHECK(sa.real() == Approx(0.5).epsilon(1e-15));
    CHECK(sa.imag() == 0.0);
}

TEST_CASE("noise kernel examples") {
    ModelParams p = model(0.0);
    p.y = 1.0;
    // -(y^2/4) 2 G^K_a(0) with G^K_a(0) = -2 i kappa/(delta_a^2 + kappa^2)
    const cplx g0 = noise_kernel(Mode::Atom, 0.0, p);
    CHECK(g0.real() == 0.0);
    CHECK(g0.imag() == Approx(0.5 / 4.25).epsilon(1e-14));
    CHECK(g0.imag() == Approx(0.117647).epsilon(1e-6));

    for (double w : {0.3, 1.0, 4.0}) {
        // only the positive-frequency term survives at T = 0
        const cplx gk = -keldysh_noise(w, p.bath) / std::norm(w - 1.0 - level_shift_retarded(w, p.bath));
        const cplx d = noise_kernel(Mode::Photon, w, p);
        CHECK(std::abs(d - (-0.25 * gk)) < 1e-15);
        CHECK(noise_kernel(Mode::Photon, -w, p) == d);
        CHECK(d.imag() > 0.0);
    }
}

TEST_CASE("property: self-energy symmetry conj(S(-w)) = S(w)") {
    for (double s : {0.4, 0.8, 1.3}) {
        const ModelParams p = model(0.7, s);
        for (double w = -7.0; w <= 7.0; w += 0.093) {
            for (Mode m : {Mode::Photon, Mode::Atom}) {
                const cplx a = self_energy(m, w, p);
                CHECK(std::abs(std::conj(self_energy(m, -w, p)) - a) < 1e-14 * std::max(1.0, std::abs(a)));
            }
        }
    }
}

TEST_CASE("photon spectrum is the bare Lorentzian at zero coupling") {
    const ModelParams p = model(0.0);
    CHECK(correlation_spectrum(Mode::Photon, 2.0, p) == Approx(4.0).epsilon(1e-14));
    for (double w : linear(-6.0, 6.0, 301)) {
        const double ref = 2.0 * 0.5 / ((w - 2.0) * (w - 2.0) + 0.25);
        CHECK(correlation_spectrum(Mode::Photon, w, p) == Approx(ref).epsilon(1e-13));
    }
}

TEST_CASE("atom spectrum at zero coupling is 2 pi rho / |w - 1 - K|^2") {
    for (double s : {0.4, 0.8, 1.5}) {
        const ModelParams p = model(0.0, s);
        for (double w : linear(-4.0, 4.0, 401)) {
            double ref = 0.0;
            if (w > 0.0)
                ref = 2.0 * pi * 0.1 * std::pow(w, s) / std::norm(w - 1.0 - level_shift_retarded(w, p.bath));
            CHECK(std::abs(correlation_spectrum(Mode::Atom, w, p) - ref) < 1e-10);
        }
        double prev = INFINITY;
        for (double w = 1e-2; w > 1e-10; w /= 10.0) {
            const double c = correlation_spectrum(Mode::Atom, w, p);
            CHECK(c < prev);
            prev = c;
        }
    }
}

TEST_CASE("matrix product agrees with the scalar photon spectrum") {
    for (double frac : {0.3, 0.5, 0.9, 0.99}) {
        for (double s : {0.6, 0.8, 1.2}) {
            ModelParams p = model(frac, s);
            for (double w : linear(-6.0, 6.0, 1000)) {
                const double ref = scalar_photon_spectrum(w, p);
                CAPTURE(w);
                CHECK(std::abs(correlation_spectrum(Mode::Photon, w, p) - ref) < 1e-10 * std::max(1.0, ref));
            }
        }
    }
    ModelParams hot = model(0.5, 0.8);
    hot.bath.temperature = 0.7;
    hot.bath.mu = -0.05;
    for (double w : linear(-6.0, 6.0, 200))
        CHECK(std::abs(correlation_spectrum(Mode::Photon, w, hot) - scalar_photon_spectrum(w, hot)) < 1e-10);
}

TEST_CASE("property: block Hermiticity, reality and positivity") {
    for (double s : {0.3, 0.8, 1.2, 1.7}) {
        for (double frac : {0.0, 0.5, 0.95, 0.999}) {
            for (double t : {0.0, 1.0}) {
                ModelParams p = model(frac, s);
                if (t > 0.0) {
                    p.bath.temperature = t;
                    p.bath.mu = -0.01;
                }
                for (Mode m : {Mode::Photon, Mode::Atom}) {
                    for (double w : linear(-5.0, 5.0, 157)) {
                        const ReducedBlocks b = reduced_blocks(m, w, p);
                        const auto& gr = b.retarded.entries;
                        const auto& gk = b.keldysh.entries;
                        CHECK((b.advanced.entries - gr.adjoint()).norm() == 0.0);
                        CHECK((gk + gk.adjoint()).norm() <= 1e-12 * std::max(1.0, gk.norm()));
                        CHECK((gr * b.inverse_retarded.entries - Eigen::Matrix2cd::Identity()).norm() < 1e-12);
                        const cplx c = I * gk(0, 0);
                        CHECK(std::abs(c.imag()) <= 1e-10 * std::max(1.0, std::abs(c)));
                        CHECK(correlation_spectrum(m, w, p) >= -1e-10);
                    }
                }
            }
        }
    }
}

TEST_CASE("property: C_b(0) is the same for s and s + 1") {
    for (double s : {0.2, 0.5, 0.8}) {
        for (double frac : {0.3, 0.7, 0.99}) {
            const double a = correlation_spectrum(Mode::Atom, 0.0, model(frac, s));
            const double b = correlation_spectrum(Mode::Atom, 0.0, model(frac, s + 1.0));
            CHECK(a > 0.0);
            CHECK(a == Approx(b).epsilon(1e-12));
        }
    }
}

TEST_CASE("property: soft-mode peaks of C_a sit near +-Re z_soft") {
    const ModelParams p = model(0.5);
    const std::vector<double> grid = spectrum_grid(p);
    const Spectrum sp = compute_spectrum(Mode::Photon, grid, p);

    std::vector<double> ys = linear(0.0, p.y, 60);
    const SoftModeBranch br = trace_soft_mode(p, ys);
    const cplx z = br.points.back().z;

    // The resonance is broad (|Im z| ~ 0.15), so its maximum is pulled off Re z by the
    // background; one grid step (0.01) is too tight, a quarter linewidth is not
    for (double sign : {1.0, -1.0}) {
        double best = INFINITY;
        for (std::size_t i = 1; i + 1 < sp.samples.size(); ++i) {
            const auto& c = sp.samples[i];
            if (c.value > sp.samples[i - 1].value && c.value > sp.samples[i + 1].value)
                best = std::min(best, std::abs(c.omega - sign * z.real()));
        }
        CAPTURE(sign);
        CHECK(best < 0.25 * std::abs(z.imag()));
    }
}

TEST_CASE("spectrum grid and data-parallel evaluation") {
    const ModelParams p = model(0.99);
    const std::vector<double> g = spectrum_grid(p);
    for (std::size_t i = 1; i < g.size(); ++i)
        CHECK(g[i] > g[i - 1]);
    CHECK(g.front() == Approx(-6.0));
    CHECK(g.back() == Approx(6.0));
    CHECK(std::abs(*std::lower_bound(g.begin(), g.end(), 0.0)) <= 1e-8 * 1.0001);

    const Spectrum one = compute_spectrum(Mode::Photon, g, p, 1);
    const Spectrum many = compute_spectrum(Mode::Photon, g, p, 4);
    REQUIRE(one.samples.size() == g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(one.samples[i].value == many.samples[i].value);
        CHECK(one.samples[i].value >= 0.0);
    }
    const std::vector<double> bad{0.0, 1.0, 1.0};
    CHECK_THROWS_AS(compute_spectrum(Mode::Photon, bad, p), InvalidParameter);
}

TEST_CASE("spectrum requires the normal phase") {
    ModelParams p = model(1.0);
    CHECK_THROWS_AS(correlation_spectrum(Mode::Photon, 0.3, p), InvalidParameter);
    p.y *= 1.1;
    CHECK_THROWS_AS(correlation_spectrum(Mode::Atom, 0.3, p), InvalidParameter);
    CHECK_NOTHROW(correlation_spectrum(Mode::Photon, 0.3, model(1.0 - 1e-9)));
}
