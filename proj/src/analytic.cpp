#include "analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bessel.hpp"
#include "errors.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"

namespace gcsim::analytic {

namespace {

// Above this Bessel argument a fixed-order rule over xi cannot resolve the
// integrand (its width shrinks like z^(-1/2)), while the large-argument
// expansion of the scaled Bessel function is already exact to machine
// precision. Both branches compute the same inner integral.
constexpr double kInnerRuleMaxArg = 300.0;
constexpr int kInnerRuleOrder = 64;

// Scaled Bessel factor exp(-z) I1(z) obtained from the inner xi-integral:
// (z/pi) int_0^pi exp(z (cos xi - 1)) sin^2 xi dxi, by the fixed rule while
// the integrand is wide enough for it, by the large-argument expansion
// beyond.
double scaled_bessel_inner(double z) {
    if (z == 0.0) return 0.0;
    if (z > kInnerRuleMaxArg) return special::bessel_i1_scaled(z);
    const quad::GaussRule& rule = quad::gauss_legendre(kInnerRuleOrder);
    double sum = 0.0;
    for (int i = 0; i < kInnerRuleOrder; ++i) {
        const double xi = 0.5 * M_PI * (rule.nodes[i] + 1.0);
        const double s = std::sin(xi);
        sum += rule.weights[i] * std::exp(z * (std::cos(xi) - 1.0)) * s * s;
    }
    return 0.5 * z * sum;  // (z/pi) * (pi/2) * weighted sum
}

// Convolution of the injected pulse with the exchange kernel, evaluated at
// effective position omega and local velocity u_hat. The T integral is taken
// in sigma = sqrt(T), which removes the 1/sqrt(T) factor of the kernel, and
// every exponential is grouped as -(sqrt(A) - sigma sqrt(K_d))^2 <= 0 so the
// integrand never overflows (A = beta K_a omega).
double convolution(const AnalyteDimensionless& p, double omega, double u_hat,
                   double t_hat, const QuadratureOptions& opts) {
    if (!(t_hat >= 0.0)) throw std::domain_error("concentration: t_hat must be >= 0");

    const double lower = std::max(0.0, t_hat - p.Da * omega - p.t1_hat);
    const double upper = std::max(0.0, t_hat - p.Da * omega);

    const double A = p.beta * p.K_a * omega;
    double value = 0.0;
    // The delta part of the kernel contributes exactly when the pulse window
    // covers T = 0: lower bound 0 and t - Da*omega in (0, t1].
    if (lower == 0.0 && upper > 0.0) value += std::exp(-A) / u_hat;
    if (upper <= lower || A == 0.0) return value;

    const double sqrt_A = std::sqrt(A);
    const double sqrt_Kd = std::sqrt(p.K_d);
    const double scale = 2.0 * std::sqrt(A * p.K_d);
    auto integrand = [&](double sigma) {
        const double gap = sqrt_A - sigma * sqrt_Kd;
        return scaled_bessel_inner(scale * sigma) * std::exp(-gap * gap);
    };

    // The exponential is a bump centred where the kernel balances,
    // sigma* = sqrt(A / K_d), of width ~ 1/sqrt(K_d). Seed panel edges there
    // so the adaptive pass cannot step over it.
    const double sigma_a = std::sqrt(lower);
    const double sigma_b = std::sqrt(upper);
    const double sigma_star = sqrt_A / sqrt_Kd;
    const double width = 1.0 / sqrt_Kd;
    const double seeds[] = {sigma_star - 8 * width, sigma_star - 4 * width,
                            sigma_star - 2 * width, sigma_star - width,
                            sigma_star,             sigma_star + width,
                            sigma_star + 2 * width, sigma_star + 4 * width,
                            sigma_star + 8 * width};

    quad::Options qopts;
    qopts.abs_tol = opts.abs_tol * u_hat / std::max(scale, 1e-300);
    qopts.max_panels = opts.max_panels;
    const quad::Result r = quad::integrate(integrand, sigma_a, sigma_b, qopts, seeds);
    if (!r.converged)
        throw NumericalError("concentration: quadrature did not converge "
                             "(achieved absolute error " +
                                 std::to_string(r.error_estimate * scale / u_hat) + ")",
                             r.error_estimate * scale / u_hat);
    return value + scale * r.value / u_hat;
}

}  // namespace

void AnalyteDimensionless::validate() const {
    if (!(beta > 0.0)) throw ValidationError("analyte groups: beta must be > 0");
    if (!(K_a >= 0.0)) throw ValidationError("analyte groups: K_a must be >= 0");
    if (!(K_d > 0.0)) throw ValidationError("analyte groups: K_d must be > 0");
    if (!(Da > 0.0)) throw ValidationError("analyte groups: Da must be > 0");
    if (!(t1_hat > 0.0)) throw ValidationError("analyte groups: t1_hat must be > 0");
}

double concentration_constant_u(const AnalyteDimensionless& p, double x_hat,
                                double t_hat, const QuadratureOptions& opts) {
    if (!(x_hat >= 0.0)) throw std::domain_error("concentration: x_hat must be >= 0");
    return convolution(p, x_hat, 1.0, t_hat, opts);
}

double concentration_variable_u(const AnalyteDimensionless& p,
                                const flow::FlowField& flow, double x_hat,
                                double t_hat, const QuadratureOptions& opts) {
    return convolution(p, flow.omega(x_hat), flow.velocity(x_hat), t_hat, opts);
}

double concentration_direct_bessel(const AnalyteDimensionless& p, double omega,
                                   double u_hat, double t_hat,
                                   const QuadratureOptions& opts) {
    if (!(t_hat >= 0.0)) throw std::domain_error("concentration: t_hat must be >= 0");
    const double lower = std::max(0.0, t_hat - p.Da * omega - p.t1_hat);
    const double upper = std::max(0.0, t_hat - p.Da * omega);
    const double A = p.beta * p.K_a * omega;
    double value = 0.0;
    if (lower == 0.0 && upper > 0.0) value += std::exp(-A) / u_hat;
    if (upper <= lower || A == 0.0) return value;

    const double scale = 2.0 * std::sqrt(A * p.K_d);
    auto integrand = [&](double sigma) {
        return std::exp(-A - p.K_d * sigma * sigma) *
               special::bessel_i1(scale * sigma);
    };
    quad::Options qopts;
    qopts.abs_tol = opts.abs_tol * u_hat / std::max(scale, 1e-300);
    qopts.max_panels = opts.max_panels;
    const double sigma_star = std::sqrt(A / p.K_d);
    const double width = 1.0 / std::sqrt(p.K_d);
    const double seeds[] = {sigma_star - 4 * width, sigma_star - width, sigma_star,
                            sigma_star + width, sigma_star + 4 * width};
    const quad::Result r =
        quad::integrate(integrand, std::sqrt(lower), std::sqrt(upper), qopts, seeds);
    return value + scale * r.value / u_hat;
}

Chromatogram chromatogram(std::span<const AnalyteDimensionless> params,
                          std::span<const std::string> names,
                          const flow::FlowField& flow, Regime regime,
                          std::span<const double> t_hat_grid,
                          const QuadratureOptions& opts) {
    if (params.empty()) throw ValidationError("chromatogram: no analytes");
    if (t_hat_grid.empty()) throw ValidationError("chromatogram: empty time grid");
    if (!names.empty() && names.size() != params.size())
        throw ValidationError("chromatogram: names/params size mismatch");
    for (std::size_t i = 0; i + 1 < t_hat_grid.size(); ++i)
        if (!(t_hat_grid[i] < t_hat_grid[i + 1]))
            throw ValidationError("chromatogram: time grid must be strictly ascending");
    if (!(t_hat_grid.front() >= 0.0))
        throw ValidationError("chromatogram: time grid must be non-negative");
    for (const AnalyteDimensionless& p : params) p.validate();

    const double L = flow.L_hat();
    const double omega_L = regime == Regime::variable_velocity ? flow.omega(L) : L;
    const double u_L = regime == Regime::variable_velocity ? flow.velocity(L) : 1.0;

    Chromatogram out;
    out.times.assign(t_hat_grid.begin(), t_hat_grid.end());
    out.time_unit = Chromatogram::TimeUnit::t_hat;
    out.unit = Unit::dimensionless;
    out.analytes.assign(names.begin(), names.end());
    out.values.assign(params.size(), std::vector<double>(t_hat_grid.size(), 0.0));

    parallel_for(params.size(), [&](std::size_t i) {
        for (std::size_t k = 0; k < t_hat_grid.size(); ++k)
            out.values[i][k] = convolution(params[i], omega_L, u_L, t_hat_grid[k], opts);
    });
    return out;
}

std::vector<std::vector<double>> profile(std::span<const AnalyteDimensionless> params,
                                         const flow::FlowField& flow, Regime regime,
                                         double t_hat,
                                         std::span<const double> x_hat_grid,
                                         const QuadratureOptions& opts) {
    if (params.empty()) throw ValidationError("profile: no analytes");
    std::vector<std::vector<double>> out(params.size(),
                                         std::vector<double>(x_hat_grid.size(), 0.0));
    std::vector<double> omegas(x_hat_grid.size()), speeds(x_hat_grid.size());
    for (std::size_t k = 0; k < x_hat_grid.size(); ++k) {
        omegas[k] = regime == Regime::variable_velocity ? flow.omega(x_hat_grid[k])
                                                        : x_hat_grid[k];
        speeds[k] = regime == Regime::variable_velocity ? flow.velocity(x_hat_grid[k])
                                                        : 1.0;
    }
    parallel_for(params.size(), [&](std::size_t i) {
        for (std::size_t k = 0; k < x_hat_grid.size(); ++k)
            out[i][k] = convolution(params[i], omegas[k], speeds[k], t_hat, opts);
    });
    return out;
}

double suggest_time_end(std::span<const AnalyteDimensionless> params,
                        const flow::FlowField& flow, Regime regime) {
    const double W = regime == Regime::variable_velocity ? flow.omega(flow.L_hat())
                                                         : flow.L_hat();
    double t_end = 0.0;
    for (const AnalyteDimensionless& p : params) {
        const double delay = p.beta * p.K_a * W / p.K_d;  // kernel first moment
        const double spread = std::sqrt(2.0 * p.beta * p.K_a * W) / p.K_d;
        t_end = std::max(t_end, p.Da * W + delay + 10.0 * spread + 2.0 * p.t1_hat);
    }
    return t_end;
}

}  // namespace gcsim::analytic
