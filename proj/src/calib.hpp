#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "analytic.hpp"
#include "chromatogram.hpp"
#include "scales.hpp"

namespace gcsim::calib {

/// Detector trace in arbitrary units over strictly ascending seconds.
struct ExperimentalChromatogram {
    std::vector<double> time_s;
    std::vector<double> intensity_au;

    void validate() const;
};

struct AnalyteWindow {
    std::string analyte;
    double t_start_s = 0.0;
    double t_end_s = 0.0;
};

/// Detector response per analyte: a.u. per (mol/m^3), from the
/// injected-equals-eluted balance f = A p0 / (c0 t1 pL).
double conversion_factor(double peak_area, double inlet_concentration,
                         double injection_time, double inlet_pressure,
                         double outlet_pressure);

/// Mean intensity over a flat inter-peak window (at least 10 samples).
double estimate_baseline(const ExperimentalChromatogram& data, double window_start_s,
                         double window_end_s);

/// The fixed experimental frame a fit runs in: everything except the two
/// kinetic coefficients of the analyte under study.
struct FitExperiment {
    scales::ColumnGeometry geometry;
    scales::OperatingConditions conditions;
    double inlet_concentration = 0.0;   // mol/m^3 of this analyte
    double conversion_factor = 0.0;     // a.u. per (mol/m^3)
    Regime regime = Regime::variable_velocity;
};

/// Detector-unit model trace: f * c0 * c_hat(L, t/tau) + baseline. The
/// candidate (k_a, k_d) fixes its own scales, so no reference analyte is
/// involved; the resulting physical trace is frame-independent.
std::vector<double> model_intensity(const FitExperiment& experiment, double k_a,
                                    double k_d, double baseline_au,
                                    std::span<const double> time_s,
                                    const analytic::QuadratureOptions& opts = {});

struct FitConfig {
    double k_a_min = 1e1, k_a_max = 1e6;   // 1/s
    double k_d_min = 1e-1, k_d_max = 1e3;  // 1/s
    int starts = 32;
    std::uint64_t seed = 20240901;
    double param_tol = 1e-6;
    int max_iterations = 400;
    std::optional<std::pair<double, double>> baseline_window_s;
    std::vector<std::pair<double, double>> exclusions_s;
    analytic::QuadratureOptions quadrature;
};

struct FitResult {
    std::string analyte;
    double k_a = 0.0;
    double k_d = 0.0;
    double sse = 0.0;        // a.u.^2 over the fit window
    double r_squared = 0.0;  // 1 - SSE / TSS, window-local mean
    double equilibrium_constant = 0.0;  // k_a / k_d
    double equilibrium_loading = 0.0;   // K * c0, mol/m^3
    double beta = 0.0;                  // K relative to the reference analyte
    double baseline_au = 0.0;
    bool converged = false;
    int evaluations = 0;
};

/// Two-parameter fit of (k_a, k_d) to the window of `data` that belongs to
/// one analyte: log-uniform multi-starts refined by simplex descent, all
/// deterministic under the configured seed. `reference_K` scales the derived
/// beta (pass the analyte's own K for a self-referenced fit).
FitResult fit_analyte(const ExperimentalChromatogram& data, const AnalyteWindow& window,
                      const FitExperiment& experiment, const FitConfig& config,
                      double reference_K = 0.0);

}  // namespace gcsim::calib
