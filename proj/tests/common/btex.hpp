#pragma once

// Shared BTEX test fixture: the lab-scale five-analyte separation used
// throughout the tests, with published reference values for cross-checks.

#include <array>
#include <string>
#include <vector>

#include "analytic.hpp"
#include "scales.hpp"

namespace btex {

inline gcsim::scales::ColumnGeometry geometry() {
    return {20.0, 9e-5, 1e-6};
}

inline gcsim::scales::OperatingConditions conditions() {
    gcsim::scales::OperatingConditions c;
    c.temperature = 353.15;
    c.inlet_pressure = 4.01e5;
    c.outlet_pressure = 1.013e5;
    c.inlet_velocity = 0.41;
    c.inlet_flow_rate = 1e-8;
    c.injection_time = 4.0;
    c.viscosity = 2.3e-5;
    return c;
}

// Component order: o-xylene (reference), p+m-xylene (double concentration),
// ethylbenzene, toluene, benzene.
inline std::vector<gcsim::scales::AnalyteSpec> analytes() {
    return {
        {"o-xylene", 2.732e-6, 2.0667e-6, 1.0168e4, 14.291},
        {"p-m-xylene", 5.464e-6, 2.0667e-6, 0.6483e4, 11.057},
        {"ethylbenzene", 2.732e-6, 2.3847e-6, 0.9203e4, 16.940},
        {"toluene", 2.732e-6, 2.6072e-6, 0.2953e4, 11.502},
        {"benzene", 2.732e-6, 2.8934e-6, 0.0579e4, 5.299},
    };
}

inline constexpr std::size_t kReference = 0;

// Published fitted-parameter table for the same experiment.
inline constexpr double kDamkohler = 0.0633;
inline constexpr double kLengthScale = 1.8722e-3;  // m
inline constexpr double kTimeScale = 0.0723;       // s
inline constexpr double kColumnLengthHat = 10683.0;
inline constexpr double kOmegaAtOutlet = 7485.0;
inline constexpr std::array<double, 5> kPecletInverse = {
    2.6926e-3, 2.6926e-3, 3.1069e-3, 3.3968e-3, 3.7696e-3};
inline constexpr std::array<double, 5> kBeta = {1.0000, 0.8242, 0.7635, 0.3608,
                                                0.1530};
inline constexpr std::array<double, 5> kCalibrationAuSPerPpb = {
    25.82, 35.28, 28.10, 46.36, 57.97};
inline constexpr std::array<double, 5> kConversionFactor = {
    1.8708e8, 2.5557e8, 2.0356e8, 3.3584e8, 4.1997e8};

/// Scaled per-analyte parameters built directly from the published table
/// (Da and the outlet boundary taken at their published values), as used by
/// the verification scenarios. The group values are exact ratios of the
/// published k's, so they are reproduced here rather than re-derived.
inline std::vector<gcsim::analytic::AnalyteDimensionless> published_params(
    double t1_hat = 4.0 / kTimeScale) {
    const auto specs = analytes();
    const double K_ref = specs[0].equilibrium_constant();
    std::vector<gcsim::analytic::AnalyteDimensionless> params(specs.size());
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const double beta = specs[i].equilibrium_constant() / K_ref;
        params[i].beta = beta;
        params[i].K_a = (specs[i].k_a / specs[0].k_a) / beta;
        params[i].K_d = specs[i].k_d / specs[0].k_d;
        params[i].Da = kDamkohler;
        params[i].t1_hat = t1_hat;
    }
    return params;
}

inline std::vector<std::string> names() {
    std::vector<std::string> out;
    for (const auto& a : analytes()) out.push_back(a.name);
    return out;
}

inline constexpr double kOutletPressureHat = 1.013e5 / 4.01e5;

}  // namespace btex
