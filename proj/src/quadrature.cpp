#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace gcsim::quad {

namespace {

// Kronrod-15 abscissae (positive half) and weights, with the embedded
// Gauss-7 weights on the shared nodes (odd indices plus the midpoint).
constexpr double kKronrodX[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
constexpr double kKronrodW[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kGaussW[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct Panel {
    double a, b;
    double value;
    double error;
};

Panel evaluate_panel(const std::function<double(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double f_mid = f(mid);
    double k15 = kKronrodW[7] * f_mid;
    double g7 = kGaussW[3] * f_mid;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kKronrodX[i];
        const double pair = f(mid + dx) + f(mid - dx);
        k15 += kKronrodW[i] * pair;
        if (i % 2 == 1) g7 += kGaussW[i / 2] * pair;
    }
    k15 *= half;
    g7 *= half;

    // |K15 - G7| overestimates the K15 error; taking it at face value just
    // costs a few extra bisections on smooth integrands.
    return Panel{a, b, k15, std::abs(k15 - g7)};
}

}  // namespace

Result integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& opts, std::span<const double> breakpoints) {
    if (!(b >= a)) throw std::domain_error("quad: interval end precedes start");
    Result res;
    if (a == b) {
        res.converged = true;
        return res;
    }

    // Initial subdivision at the supplied breakpoints.
    std::vector<double> edges;
    edges.push_back(a);
    for (double x : breakpoints)
        if (x > a && x < b) edges.push_back(x);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::vector<Panel> panels;
    panels.reserve(64);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        panels.push_back(evaluate_panel(f, edges[i], edges[i + 1]));

    auto worse = [](const Panel& lhs, const Panel& rhs) {
        if (lhs.error != rhs.error) return lhs.error < rhs.error;
        return lhs.a < rhs.a;  // deterministic tie-break
    };
    std::make_heap(panels.begin(), panels.end(), worse);

    double total_value = 0.0;
    double total_error = 0.0;
    for (const Panel& p : panels) {
        total_value += p.value;
        total_error += p.error;
    }

    while (static_cast<int>(panels.size()) < opts.max_panels) {
        const double target =
            std::max(opts.abs_tol, opts.rel_tol * std::abs(total_value));
        if (total_error <= target) break;

        std::pop_heap(panels.begin(), panels.end(), worse);
        const Panel worst = panels.back();
        panels.pop_back();

        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Interval no longer splittable in double precision.
            panels.push_back(worst);
            std::push_heap(panels.begin(), panels.end(), worse);
            break;
        }
        const Panel left = evaluate_panel(f, worst.a, mid);
        const Panel right = evaluate_panel(f, mid, worst.b);
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        panels.push_back(left);
        std::push_heap(panels.begin(), panels.end(), worse);
        panels.push_back(right);
        std::push_heap(panels.begin(), panels.end(), worse);
    }

    // Sum panels in spatial order so the result does not depend on the heap
    // layout history.
    std::sort(panels.begin(), panels.end(),
              [](const Panel& lhs, const Panel& rhs) { return lhs.a < rhs.a; });
    double value = 0.0, comp = 0.0, error = 0.0;
    for (const Panel& p : panels) {
        const double y = p.value - comp;
        const double t = value + y;
        comp = (t - value) - y;
        value = t;
        error += p.error;
    }

    res.value = value;
    res.error_estimate = error;
    res.panels = static_cast<int>(panels.size());
    res.converged =
        error <= std::max(opts.abs_tol, opts.rel_tol * std::abs(value));
    return res;
}

const GaussRule& gauss_legendre(int n) {
    if (n < 2) throw std::domain_error("gauss_legendre: need n >= 2");
    static std::mutex mutex;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    // Newton iteration on P_n, seeded with the Chebyshev approximation.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.weights[i] = w;
        rule.nodes[n - 1 - i] = x;
        rule.weights[n - 1 - i] = w;
    }
    auto [pos, inserted] = cache.emplace(n, std::move(rule));
    (void)inserted;
    return pos->second;
}

}  // namespace gcsim::quad
