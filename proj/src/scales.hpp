#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gcsim::scales {

/// Ideal gas constant, J/(mol K).
inline constexpr double kGasConstant = 8.31446261815324;

struct ColumnGeometry {
    double length = 0.0;            // m
    double inner_radius = 0.0;      // m
    double coating_thickness = 0.0; // m

    double phase_ratio() const { return 2.0 * coating_thickness / inner_radius; }
    void validate() const;
};

struct OperatingConditions {
    double temperature = 0.0;      // K
    double inlet_pressure = 0.0;   // Pa
    double outlet_pressure = 0.0;  // Pa
    std::optional<double> inlet_velocity;   // m/s
    std::optional<double> inlet_flow_rate;  // m^3/s
    double injection_time = 0.0;   // s
    double viscosity = 0.0;        // Pa s

    void validate() const;

    /// Inlet velocity, preferring the explicit value over the flow-rate
    /// derived one. When both are present and disagree by more than 0.1%,
    /// a warning is appended (the explicit velocity wins).
    double resolve_inlet_velocity(double inner_radius,
                                  std::vector<std::string>* warnings = nullptr) const;
};

struct AnalyteSpec {
    std::string name;
    double inlet_concentration = 0.0;    // mol/m^3
    double diffusion_coefficient = 0.0;  // m^2/s at inlet pressure
    double k_a = 0.0;                    // 1/s
    double k_d = 0.0;                    // 1/s

    double equilibrium_constant() const { return k_a / k_d; }
    double equilibrium_loading() const { return equilibrium_constant() * inlet_concentration; }
    void validate() const;
};

/// Every scaled parameter needed by the solvers, plus the scales themselves
/// so results can be mapped back to SI units.
struct DimensionlessGroups {
    double damkohler = 0.0;       // Da
    double length_hat = 0.0;      // L / length_scale
    double injection_hat = 0.0;   // t1 / time_scale
    double outlet_pressure_hat = 0.0;
    double length_scale = 0.0;    // m
    double time_scale = 0.0;      // s
    double inlet_velocity = 0.0;  // m/s (resolved value)
    std::size_t reference_index = 0;
    std::vector<double> beta;
    std::vector<double> K_a;
    std::vector<double> K_d;
    std::vector<double> peclet_inverse;
};

double inlet_velocity_from_flow(double flow_rate, double radius);
double ppb_to_molar(double ppb, double temperature, double pressure);
double molar_to_ppb(double molar, double temperature, double pressure);

DimensionlessGroups nondimensionalize(const ColumnGeometry& geometry,
                                      const OperatingConditions& conditions,
                                      std::span<const AnalyteSpec> analytes,
                                      std::size_t reference_index,
                                      std::vector<std::string>* warnings = nullptr);

// Mapping between scaled and SI quantities.
inline double to_seconds(const DimensionlessGroups& g, double t_hat) { return t_hat * g.time_scale; }
inline double to_t_hat(const DimensionlessGroups& g, double seconds) { return seconds / g.time_scale; }
inline double to_meters(const DimensionlessGroups& g, double x_hat) { return x_hat * g.length_scale; }
inline double to_x_hat(const DimensionlessGroups& g, double meters) { return meters / g.length_scale; }

}  // namespace gcsim::scales
