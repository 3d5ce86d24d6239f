#pragma once

#include <functional>
#include <vector>

namespace gcsim::opt {

struct NelderMeadOptions {
    double param_tol = 1e-6;  // relative simplex extent
    double value_tol = 0.0;   // absolute spread of simplex values (0 = off)
    int max_iterations = 400;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Derivative-free simplex descent (reflection / expansion / contraction /
/// shrink with the standard coefficients). Deterministic for a given start.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& start,
                             const std::vector<double>& initial_step,
                             const NelderMeadOptions& opts = {});

}  // namespace gcsim::opt
