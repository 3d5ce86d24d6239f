#pragma once

#include <functional>
#include <span>
#include <vector>

namespace gcsim::quad {

struct Options {
    double abs_tol = 1e-10;
    double rel_tol = 0.0;
    int max_panels = 4096;
};

struct Result {
    double value = 0.0;
    double error_estimate = 0.0;
    int panels = 0;
    bool converged = false;
};

/// Adaptive Gauss-Kronrod (G7/K15) integration of f over [a, b].
/// Panels with the largest local error estimate are bisected first.
/// `breakpoints` seeds the initial subdivision; values outside (a, b) are
/// ignored. Useful when the integrand is a narrow bump inside a wide
/// interval that a single 15-point panel would step over.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& opts = {},
                 std::span<const double> breakpoints = {});

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussRule& gauss_legendre(int n);

}  // namespace gcsim::quad
