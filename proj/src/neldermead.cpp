#include "neldermead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace gcsim::opt {

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& start,
                             const std::vector<double>& initial_step,
                             const NelderMeadOptions& opts) {
    const std::size_t n = start.size();
    if (n == 0 || initial_step.size() != n)
        throw std::invalid_argument("nelder_mead: bad start/step sizes");

    std::vector<std::vector<double>> simplex(n + 1, start);
    for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += initial_step[i];
    std::vector<double> values(n + 1);
    for (std::size_t i = 0; i <= n; ++i) values[i] = f(simplex[i]);

    std::vector<std::size_t> order(n + 1);
    auto sort_simplex = [&] {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    };

    NelderMeadResult result;
    std::vector<double> centroid(n), trial(n);
    int iter = 0;
    for (; iter < opts.max_iterations; ++iter) {
        sort_simplex();
        const std::size_t best = order[0], worst = order[n];
        const std::size_t second_worst = order[n - 1];

        // Convergence: simplex collapsed in parameters (relative) or values.
        double extent = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double span = 0.0;
            for (std::size_t v = 1; v <= n; ++v)
                span = std::max(span, std::abs(simplex[order[v]][i] - simplex[best][i]));
            extent = std::max(extent, span / std::max(1.0, std::abs(simplex[best][i])));
        }
        const double spread = values[worst] - values[best];
        if (extent < opts.param_tol ||
            (opts.value_tol > 0.0 && spread < opts.value_tol)) {
            result.converged = true;
            break;
        }

        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t v = 0; v <= n; ++v)
                if (v != worst) s += simplex[v][i];
            centroid[i] = s / n;
        }

        auto blend = [&](double coeff) {
            for (std::size_t i = 0; i < n; ++i)
                trial[i] = centroid[i] + coeff * (simplex[worst][i] - centroid[i]);
            return f(trial);
        };

        const double reflected = blend(-1.0);
        if (reflected < values[order[0]]) {
            const std::vector<double> reflected_point = trial;
            const double expanded = blend(-2.0);
            if (expanded < reflected) {
                simplex[worst] = trial;
                values[worst] = expanded;
            } else {
                simplex[worst] = reflected_point;
                values[worst] = reflected;
            }
        } else if (reflected < values[second_worst]) {
            simplex[worst] = trial;
            values[worst] = reflected;
        } else {
            const double contracted = blend(0.5);
            if (contracted < values[worst]) {
                simplex[worst] = trial;
                values[worst] = contracted;
            } else {
                // Shrink toward the best vertex.
                for (std::size_t v = 0; v <= n; ++v) {
                    if (v == best) continue;
                    for (std::size_t i = 0; i < n; ++i)
                        simplex[v][i] = simplex[best][i] +
                                        0.5 * (simplex[v][i] - simplex[best][i]);
                    values[v] = f(simplex[v]);
                }
            }
        }
    }

    sort_simplex();
    result.x = simplex[order[0]];
    result.value = values[order[0]];
    result.iterations = iter;
    return result;
}

}  // namespace gcsim::opt
