#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "dicke/errors.hpp"
#include "dicke/poles.hpp"
#include "support/oracles.hpp"

using namespace dicke;
using doctest::Approx;

namespace {

constexpr cplx I{0.0, 1.0};

ModelParams params(double s = 0.8, double gamma = 0.1, double delta_a = 2.0, double kappa = 0.5) {
    ModelParams p;
    p.bath.s = s;
    p.bath.gamma = gamma;
    p.delta_a = delta_a;
    p.kappa = kappa;
    return p;
}

// Roots of [(z + i k)^2 - d^2](z^2 - 1) - y^2 d from the companion matrix
std::vector<cplx> bath_free_roots(const ModelParams& p) {
    const cplx ik = I * p.kappa;
    const double d2 = p.delta_a * p.delta_a;
    // (z^2 + 2 i k z - k^2 - d^2)(z^2 - 1) - y^2 d
    const cplx c1 = 2.0 * ik;
    const cplx c0 = -p.kappa * p.kappa - d2;
    const cplx a3 = c1, a2 = c0 - 1.0, a1 = -c1, a0 = -c0 - p.y * p.y * p.delta_a;
    Eigen::Matrix4cd comp = Eigen::Matrix4cd::Zero();
    comp(0, 0) = -a3;
    comp(0, 1) = -a2;
    comp(0, 2) = -a1;
    comp(0, 3) = -a0;
    comp(1, 0) = comp(2, 1) = comp(3, 2) = 1.0;
    const Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(comp);
    std::vector<cplx> r(es.eigenvalues().data(), es.eigenvalues().data() + 4);
    return r;
}

// det(0) as a function of y, bisected for its sign change
double bisect_critical_coupling(const ModelParams& base) {
    auto h = [&](double y) { return characteristic_det(0.0, base.with_y(y)).real(); };
    double lo = 0.0, hi = 1.0;
    while (h(hi) > 0.0)
        hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (h(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

TEST_CASE("closed-form critical coupling") {
    CHECK(critical_coupling(params()) == Approx(std::sqrt(4.25 / 2.0)).epsilon(1e-15));
    CHECK(critical_coupling(params()) == Approx(1.45774).epsilon(1e-5));
    CHECK(critical_coupling(params(0.8, 0.1, 2.0, 2.0)) == Approx(2.0).epsilon(1e-15));
    CHECK(critical_coupling(params(0.8, 0.1, 3.0, 0.0)) == Approx(std::sqrt(3.0)).epsilon(1e-15));
    ModelParams bad = params();
    bad.delta_a = 0.0;
    CHECK_THROWS_AS(critical_coupling(bad), InvalidParameter);
}

TEST_CASE("critical coupling agrees with bisection on det(0) for every bath") {
    for (auto [da, k] : {std::pair{2.0, 0.5}, std::pair{2.0, 2.0}, std::pair{0.7, 1.3}})
        for (double g : {0.05, 0.1, 0.5})
            for (double s : {0.4, 0.8, 1.2, 1.7}) {
                const ModelParams p = params(s, g, da, k);
                CHECK(bisect_critical_coupling(p) == Approx(critical_coupling(p)).epsilon(1e-12));
            }
}

TEST_CASE("characteristic function examples") {
    // closed system (kappa = 0, negligible bath) at the ground-state critical point
    ModelParams closed = params(0.8, 1e-14, 2.0, 0.0);
    closed.y = std::sqrt(2.0);
    CHECK(std::abs(characteristic_det(0.0, closed)) < 1e-14);

    ModelParams p = params();
    for (cplx z : {cplx{2.0, -0.5}, cplx{-2.0, -0.5}})
        CHECK(std::abs(characteristic_det(z, p)) < 1e-14);

    p.y = critical_coupling(p);
    CHECK(std::abs(characteristic_det(0.0, p)) < 1e-10);
}

TEST_CASE("bath-free limit matches companion-matrix roots") {
    for (double frac : {0.0, 0.3, 0.6, 0.9}) {
        ModelParams p = params(0.8, 1e-13);
        p.y = frac * critical_coupling(p);
        for (cplx r : bath_free_roots(p)) {
            CAPTURE(frac);
            CAPTURE(r);
            if (r.imag() > -1e-9)
                continue; // the undamped +-1 pair at y = 0 sits on the real axis
            const cplx z = find_pole(r + cplx{1e-3, -1e-3}, p);
            CHECK(std::abs(z - r) < 1e-10);
        }
    }
}

TEST_CASE("find_pole examples") {
    ModelParams p = params();
    const cplx photon = find_pole({2.0, -0.5}, p);
    CHECK(std::abs(photon - cplx{2.0, -0.5}) < 1e-14);

    // dressed bare-b pole at y = 0: z = 1 + K_II(z)
    const cplx seed = 1.0 + level_shift_retarded(1.0, p.bath);
    CHECK(seed.real() == Approx(0.5676).epsilon(1e-4));
    CHECK(seed.imag() == Approx(-0.3142).epsilon(1e-4));
    const cplx z = find_pole(seed, p);
    CHECK(z.real() == Approx(0.648397339736).epsilon(1e-10));
    CHECK(z.imag() == Approx(-0.162198341889).epsilon(1e-10));
    CHECK(std::abs(z - 1.0 - oracle::level_shift_sheet2(z, 0.8, 0.1)) < 1e-8);

    p.y = critical_coupling(p);
    CHECK(std::abs(find_pole({0.0, -1e-3}, p)) < 1e-8);
}

TEST_CASE("find_pole errors") {
    ModelParams p = params();
    CHECK_THROWS_AS(find_pole({0.5, 0.1}, p), BranchCrossing);
    CHECK_THROWS_AS(find_pole({-0.5, 0.0}, p), BranchCrossing);
    PoleSolverOptions tight;
    tight.max_iterations = 1;
    CHECK_THROWS_AS(find_pole({5.0, -3.0}, p, tight), NoConvergence);
}

TEST_CASE("property: Gamma and Delta vanish at z -> 0") {
    for (double s : {0.1, 0.4, 0.8, 1.2, 1.9}) {
        BathParams b = params(s).bath;
        double prev = INFINITY;
        for (double r = 1e-2; r > 1e-14; r /= 10.0) {
            const BathResponse g = bath_response(std::polar(r, -1.0), b);
            const double m = std::max(std::abs(g.Gamma), std::abs(g.Delta));
            CHECK(m < prev);
            prev = m;
        }
        CHECK(prev < 3.0 * std::abs(b.shift_prefactor()) * std::pow(1e-14, s));
        const BathResponse g0 = bath_response(0.0, b);
        CHECK(g0.Gamma == cplx{});
        CHECK(g0.Delta == cplx{});
    }
}

TEST_CASE("property: pole-pair symmetry") {
    for (double s : {0.4, 0.8, 1.2}) {
        for (double frac : {0.0, 0.3, 0.6, 0.9}) {
            ModelParams p = params(s);
            p.y = frac * critical_coupling(p);
            for (cplx guess : {cplx{1.0, -0.2}, cplx{2.0, -0.5}}) {
                const cplx z = find_pole(guess, p);
                CAPTURE(z);
                const cplx partner = -std::conj(z);
                CHECK(std::abs(characteristic_det(partner, p) - std::conj(characteristic_det(z, p))) < 1e-12);
                CHECK(std::abs(characteristic_det(partner, p)) < 1e-9);
            }
        }
    }
}

TEST_CASE("soft-mode branch invariants and starting point") {
    const ModelParams p = params(0.8, 0.1, 2.0, 2.0);
    const std::vector<double> grid = soft_mode_grid(p, 200, 1e-6);
    const SoftModeBranch br = trace_soft_mode(p, grid);
    REQUIRE(br.points.size() == grid.size());
    REQUIRE(br.bifurcation_y.has_value());
    CHECK(*br.bifurcation_y > 0.85 * critical_coupling(p));
    CHECK(*br.bifurcation_y < critical_coupling(p));

    const cplx z0 = br.points.front().z;
    CHECK(z0.real() < 1.0);
    CHECK(z0.imag() < 0.0);
    double re_prev = INFINITY;
    for (std::size_t i = 0; i < br.points.size(); ++i) {
        const auto& pt = br.points[i];
        CHECK(pt.z.imag() <= 0.0);
        CHECK(pt.z.real() >= 0.0);
        CHECK(pt.z.real() <= re_prev + 1e-12);
        re_prev = pt.z.real();
        if (i > 0)
            CHECK(pt.y > br.points[i - 1].y);
        CHECK(std::abs(characteristic_det(pt.z, p.with_y(pt.y))) < 1e-9);
        if (pt.z.real() != 0.0)
            CHECK(std::abs(characteristic_det(-std::conj(pt.z), p.with_y(pt.y))) < 1e-9);
    }
    CHECK(std::abs(br.points.back().z) < 1e-6);
}

TEST_CASE("property: crossing coupling equals the closed form") {
    for (double s : {0.4, 0.8, 1.2}) {
        for (double g : {0.1, 0.2}) {
            const ModelParams p = params(s, g, 2.0, 2.0);
            const std::vector<double> grid = soft_mode_grid(p, 100, 1e-6);
            const double y_star = estimate_crossing_coupling(trace_soft_mode(p, grid));
            CAPTURE(s);
            CAPTURE(g);
            CHECK(y_star == Approx(critical_coupling(p)).epsilon(1e-4));
        }
    }
}

TEST_CASE("soft-mode grid validation") {
    const ModelParams p = params();
    const std::vector<double> g = soft_mode_grid(p, 10, 1e-3);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == Approx(critical_coupling(p) * (1.0 - 1e-3)).epsilon(1e-9));
    CHECK_THROWS_AS(soft_mode_grid(p, 1), InvalidParameter);
    const std::vector<double> past{0.0, critical_coupling(p)};
    CHECK_THROWS_AS(trace_soft_mode(p, past), InvalidParameter);
    const std::vector<double> unordered{0.5, 0.2};
    CHECK_THROWS_AS(trace_soft_mode(p, unordered), InvalidParameter);
}
