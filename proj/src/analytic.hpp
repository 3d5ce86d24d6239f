#pragma once

#include <span>
#include <vector>

#include "chromatogram.hpp"
#include "flow.hpp"

namespace gcsim::analytic {

/// Scaled coefficients of one analyte. K_a = 0 is admitted as the
/// no-adsorption limit; everything else must be strictly positive.
struct AnalyteDimensionless {
    double beta = 1.0;
    double K_a = 1.0;
    double K_d = 1.0;
    double Da = 0.0;
    double t1_hat = 0.0;

    void validate() const;
};

struct QuadratureOptions {
    double abs_tol = 1e-8;  // absolute tolerance on the concentration value
    int max_panels = 4096;
};

/// Outlet/interior concentration for the uniform-velocity column:
/// a pulse delayed by Da*x convolved with the adsorption exchange kernel
///   exp(-K_d T) [ delta(T) + sqrt(beta K_a K_d x / T) I1(2 sqrt(beta K_a K_d x T)) ].
double concentration_constant_u(const AnalyteDimensionless& p, double x_hat,
                                double t_hat, const QuadratureOptions& opts = {});

/// Same solution structure for the pressure-driven column, with x replaced
/// by omega(x) and the whole signal carried on 1/u(x).
double concentration_variable_u(const AnalyteDimensionless& p,
                                const flow::FlowField& flow, double x_hat,
                                double t_hat, const QuadratureOptions& opts = {});

/// Direct evaluation of the convolution with an unscaled I1. Overflows for
/// large exponents; kept as the cross-check route for the stabilized form.
double concentration_direct_bessel(const AnalyteDimensionless& p, double omega,
                                   double u_hat, double t_hat,
                                   const QuadratureOptions& opts = {});

/// Outlet chromatogram at x = L_hat over an ascending time grid; analytes
/// are independent and evaluated in parallel.
Chromatogram chromatogram(std::span<const AnalyteDimensionless> params,
                          std::span<const std::string> names,
                          const flow::FlowField& flow, Regime regime,
                          std::span<const double> t_hat_grid,
                          const QuadratureOptions& opts = {});

/// Concentration of every analyte along the column at one instant.
std::vector<std::vector<double>> profile(std::span<const AnalyteDimensionless> params,
                                         const flow::FlowField& flow, Regime regime,
                                         double t_hat,
                                         std::span<const double> x_hat_grid,
                                         const QuadratureOptions& opts = {});

/// A time horizon past the slowest analyte's peak and spread; used when no
/// window is configured.
double suggest_time_end(std::span<const AnalyteDimensionless> params,
                        const flow::FlowField& flow, Regime regime);

}  // namespace gcsim::analytic
