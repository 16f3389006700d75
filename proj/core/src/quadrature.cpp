#include "dicke/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>

#include "dicke/errors.hpp"

namespace dicke {

namespace {

// Kronrod abscissae (descending) and weights; Gauss weights for the odd nodes
constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

} // namespace

PanelEstimate gauss_kronrod15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double abs_half = std::abs(half);
    const double fc = f(center);
    double resg = fc * wg[3];
    double resk = fc * wgk[7];
    double resabs = std::abs(resk);
    std::array<double, 7> fv1{}, fv2{};
    for (int j = 0; j < 7; ++j) {
        const double dx = half * xgk[j];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += wgk[j] * (f1 + f2);
        resabs += wgk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1)
            resg += wg[j / 2] * (f1 + f2);
    }
    const double reskh = 0.5 * resk;
    double resasc = wgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += wgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

    const double value = resk * half;
    resabs *= abs_half;
    resasc *= abs_half;
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
        err = std::max(50.0 * eps * resabs, err);
    return {value, err};
}

QuadratureResult integrate(const std::function<double(double)>& f, std::vector<double> breakpoints,
                           double tail_power, const QuadratureOptions& opts) {
    if (breakpoints.size() < 2)
        throw InvalidParameter("integrate needs at least two breakpoints");
    std::sort(breakpoints.begin(), breakpoints.end());
    breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());
    if (!(tail_power > 1.0))
        throw InvalidParameter("tail decay power must exceed 1");
    const double m = std::min(1.0 / (tail_power - 1.0), 12.0);

    QuadratureResult res;
    std::size_t evals = 0;

    // one integrand per segment; tails are integrated in the mapped variable u
    std::vector<std::function<double(double)>> integrands;

    auto make_integrand = [&](int kind, double L) -> std::function<double(double)> {
        if (kind == 0)
            return [&f, &evals](double w) {
                ++evals;
                return f(w);
            };
        const double sign = static_cast<double>(kind);
        return [&f, &evals, L, m, sign](double u) {
            if (u <= 0.0)
                return 0.0;
            const double w = L * std::pow(u, -m);
            if (!std::isfinite(w) || w > 1e150)
                return 0.0;
            ++evals;
            return f(sign * w) * m * w / u;
        };
    };

    struct Entry {
        Panel p;
        std::size_t seg;
        bool operator<(const Entry& o) const { return p < o.p; }
    };
    std::priority_queue<Entry> queue;
    double total = 0.0, total_err = 0.0;

    auto add_panel = [&](std::size_t seg, double a, double b) {
        const PanelEstimate est = gauss_kronrod15(integrands[seg], a, b);
        queue.push({{a, b, est.value, est.error}, seg});
        total += est.value;
        total_err += est.error;
    };

    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        const double lo = breakpoints[i], hi = breakpoints[i + 1];
        if (std::isinf(lo) && std::isinf(hi))
            throw InvalidParameter("a segment cannot be infinite at both ends");
        if (std::isinf(hi)) {
            if (!(lo > 0.0))
                throw InvalidParameter("upper tail needs a positive finite start");
            integrands.push_back(make_integrand(+1, lo));
            add_panel(integrands.size() - 1, 0.0, 1.0);
        } else if (std::isinf(lo)) {
            if (!(hi < 0.0))
                throw InvalidParameter("lower tail needs a negative finite end");
            integrands.push_back(make_integrand(-1, -hi));
            add_panel(integrands.size() - 1, 0.0, 1.0);
        } else {
            integrands.push_back(make_integrand(0, 0.0));
            add_panel(integrands.size() - 1, lo, hi);
        }
    }

    auto tolerance = [&] { return std::max(opts.abs_tol, opts.rel_tol * std::abs(total)); };
    while (total_err > tolerance() && queue.size() < opts.max_subdivisions) {
        const Entry worst = queue.top();
        queue.pop();
        total -= worst.p.value;
        total_err -= worst.p.error;
        const double mid = 0.5 * (worst.p.a + worst.p.b);
        if (!(mid > worst.p.a && mid < worst.p.b)) {
            // panel too narrow to split further; keep it and stop refining
            queue.push(worst);
            total += worst.p.value;
            total_err += worst.p.error;
            break;
        }
        add_panel(worst.seg, worst.p.a, mid);
        add_panel(worst.seg, mid, worst.p.b);
    }

    // resum to shed accumulated cancellation in the running totals
    total = 0.0;
    total_err = 0.0;
    std::vector<Entry> all;
    all.reserve(queue.size());
    while (!queue.empty()) {
        all.push_back(queue.top());
        queue.pop();
    }
    std::sort(all.begin(), all.end(), [](const Entry& x, const Entry& y) {
        return x.seg != y.seg ? x.seg < y.seg : x.p.a < y.p.a;
    });
    for (const auto& e : all) {
        total += e.p.value;
        total_err += e.p.error;
    }
    res.value = total;
    res.error = total_err;
    res.evaluations = evals;
    res.panels = all.size();
    res.converged = total_err <= tolerance();
    if (!std::isfinite(total) || total_err > opts.failure_tol * std::max(1.0, std::abs(total)))
        throw QuadratureFailure("adaptive quadrature did not reach the failure threshold: estimate " +
                                std::to_string(total) + ", error " + std::to_string(total_err) +
                                " after " + std::to_string(all.size()) + " panels");
    return res;
}

} // namespace dicke
