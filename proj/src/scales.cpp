#include "scales.hpp"

#include <cmath>
#include <stdexcept>

#include "errors.hpp"

namespace gcsim::scales {

void ColumnGeometry::validate() const {
    if (!(length > 0.0)) throw ValidationError("geometry: length must be > 0");
    if (!(inner_radius > 0.0)) throw ValidationError("geometry: inner_radius must be > 0");
    if (!(coating_thickness > 0.0))
        throw ValidationError("geometry: coating_thickness must be > 0");
    // The cross-section averaging behind the transport model needs a thin
    // coating; delta/R < 0.1 is the enforced envelope.
    if (!(coating_thickness / inner_radius < 0.1))
        throw ValidationError(
            "geometry: coating_thickness must be small compared to inner_radius "
            "(coating_thickness / inner_radius < 0.1)");
}

void OperatingConditions::validate() const {
    if (!(temperature > 0.0)) throw ValidationError("conditions: temperature must be > 0");
    if (!(outlet_pressure > 0.0))
        throw ValidationError("conditions: outlet_pressure must be > 0");
    if (!(inlet_pressure >= outlet_pressure))
        throw ValidationError("conditions: inlet_pressure must be >= outlet_pressure");
    if (!(injection_time > 0.0))
        throw ValidationError("conditions: injection_time must be > 0");
    if (!(viscosity > 0.0)) throw ValidationError("conditions: viscosity must be > 0");
    if (!inlet_velocity && !inlet_flow_rate)
        throw ValidationError("conditions: provide at least one of inlet_velocity, inlet_flow_rate");
    if (inlet_velocity && !(*inlet_velocity > 0.0))
        throw ValidationError("conditions: inlet_velocity must be > 0");
    if (inlet_flow_rate && !(*inlet_flow_rate > 0.0))
        throw ValidationError("conditions: inlet_flow_rate must be > 0");
}

double OperatingConditions::resolve_inlet_velocity(
    double inner_radius, std::vector<std::string>* warnings) const {
    if (inlet_velocity && inlet_flow_rate) {
        const double derived = inlet_velocity_from_flow(*inlet_flow_rate, inner_radius);
        const double rel = std::abs(derived - *inlet_velocity) / *inlet_velocity;
        if (rel > 1e-3 && warnings) {
            warnings->push_back(
                "conditions: inlet_velocity (" + std::to_string(*inlet_velocity) +
                " m/s) disagrees with inlet_flow_rate / (pi R^2) (" +
                std::to_string(derived) + " m/s); using inlet_velocity");
        }
        return *inlet_velocity;
    }
    if (inlet_velocity) return *inlet_velocity;
    return inlet_velocity_from_flow(*inlet_flow_rate, inner_radius);
}

void AnalyteSpec::validate() const {
    const std::string prefix = "analyte '" + name + "': ";
    if (name.empty()) throw ValidationError("analyte: name must be non-empty");
    if (!(inlet_concentration > 0.0))
        throw ValidationError(prefix + "inlet_concentration must be > 0");
    if (!(diffusion_coefficient > 0.0))
        throw ValidationError(prefix + "diffusion_coefficient must be > 0");
    if (!(k_a > 0.0)) throw ValidationError(prefix + "k_a must be > 0");
    if (!(k_d > 0.0)) throw ValidationError(prefix + "k_d must be > 0");
}

double inlet_velocity_from_flow(double flow_rate, double radius) {
    if (!(flow_rate > 0.0)) throw std::domain_error("inlet_velocity_from_flow: flow_rate must be > 0");
    if (!(radius > 0.0)) throw std::domain_error("inlet_velocity_from_flow: radius must be > 0");
    return flow_rate / (M_PI * radius * radius);
}

double ppb_to_molar(double ppb, double temperature, double pressure) {
    if (!(ppb >= 0.0)) throw std::domain_error("ppb_to_molar: ppb must be >= 0");
    if (!(temperature > 0.0)) throw std::domain_error("ppb_to_molar: temperature must be > 0");
    if (!(pressure > 0.0)) throw std::domain_error("ppb_to_molar: pressure must be > 0");
    return ppb * 1e-9 * pressure / (kGasConstant * temperature);
}

double molar_to_ppb(double molar, double temperature, double pressure) {
    if (!(molar >= 0.0)) throw std::domain_error("molar_to_ppb: concentration must be >= 0");
    if (!(temperature > 0.0)) throw std::domain_error("molar_to_ppb: temperature must be > 0");
    if (!(pressure > 0.0)) throw std::domain_error("molar_to_ppb: pressure must be > 0");
    return molar * kGasConstant * temperature / pressure * 1e9;
}

DimensionlessGroups nondimensionalize(const ColumnGeometry& geometry,
                                      const OperatingConditions& conditions,
                                      std::span<const AnalyteSpec> analytes,
                                      std::size_t reference_index,
                                      std::vector<std::string>* warnings) {
    geometry.validate();
    conditions.validate();
    if (analytes.empty()) throw ValidationError("analytes: list must be non-empty");
    if (reference_index >= analytes.size())
        throw ValidationError("reference analyte index out of range");
    for (const AnalyteSpec& a : analytes) a.validate();

    const AnalyteSpec& ref = analytes[reference_index];
    const double u0 = conditions.resolve_inlet_velocity(geometry.inner_radius, warnings);

    DimensionlessGroups g;
    g.inlet_velocity = u0;
    g.reference_index = reference_index;
    g.length_scale = u0 * geometry.inner_radius / (2.0 * geometry.coating_thickness * ref.k_a);
    g.time_scale = ref.equilibrium_loading() / (ref.k_a * ref.inlet_concentration);
    g.damkohler = g.length_scale / (u0 * g.time_scale);
    g.length_hat = geometry.length / g.length_scale;
    g.injection_hat = conditions.injection_time / g.time_scale;
    g.outlet_pressure_hat = conditions.outlet_pressure / conditions.inlet_pressure;

    g.beta.reserve(analytes.size());
    g.K_a.reserve(analytes.size());
    g.K_d.reserve(analytes.size());
    g.peclet_inverse.reserve(analytes.size());
    for (std::size_t i = 0; i < analytes.size(); ++i) {
        const AnalyteSpec& a = analytes[i];
        if (i == reference_index) {
            // Exactly one by definition, not merely to rounding.
            g.beta.push_back(1.0);
            g.K_a.push_back(1.0);
            g.K_d.push_back(1.0);
        } else {
            g.beta.push_back(a.equilibrium_loading() * ref.inlet_concentration /
                             (ref.equilibrium_loading() * a.inlet_concentration));
            g.K_a.push_back(a.k_a * a.inlet_concentration * ref.equilibrium_loading() /
                            (ref.k_a * ref.inlet_concentration * a.equilibrium_loading()));
            g.K_d.push_back(a.k_d * ref.equilibrium_loading() /
                            (ref.k_a * ref.inlet_concentration));
        }
        g.peclet_inverse.push_back(a.diffusion_coefficient / (u0 * g.length_scale));
    }
    return g;
}

}  // namespace gcsim::scales
