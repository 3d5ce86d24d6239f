#include "flow.hpp"

#include <cmath>
#include <stdexcept>

#include "errors.hpp"

namespace gcsim::flow {

FlowField::FlowField(double pL_hat, double L_hat) : pl_(pL_hat), length_(L_hat) {
    if (!(pL_hat > 0.0) || !(pL_hat <= 1.0))
        throw ValidationError("flow: outlet pressure ratio must lie in (0, 1]");
    if (!(L_hat > 0.0)) throw ValidationError("flow: column length must be > 0");
    drop_ = 1.0 - pl_ * pl_;
    uniform_ = std::abs(1.0 - pl_) < 1e-9;
}

void FlowField::check_domain(double x_hat) const {
    // Allow a whisker of rounding slack at the outlet.
    if (!(x_hat >= 0.0) || x_hat > length_ * (1.0 + 1e-12))
        throw std::domain_error("flow: x_hat outside [0, L_hat]");
}

double FlowField::pressure(double x_hat) const {
    check_domain(x_hat);
    if (uniform_) return 1.0;
    return std::sqrt(1.0 - drop_ * x_hat / length_);
}

double FlowField::velocity(double x_hat) const { return 1.0 / pressure(x_hat); }

double FlowField::diffusion_ratio(double x_hat) const { return 1.0 / pressure(x_hat); }

double FlowField::omega(double x_hat) const {
    check_domain(x_hat);
    if (uniform_) return x_hat;  // limit of the expression below as pL -> 1
    const double p = std::sqrt(1.0 - drop_ * x_hat / length_);
    return 2.0 * length_ * (1.0 - p * p * p) / (3.0 * drop_);
}

double FlowField::velocity_derivative(double x_hat) const {
    check_domain(x_hat);
    if (uniform_) return 0.0;
    const double p = std::sqrt(1.0 - drop_ * x_hat / length_);
    return drop_ / (2.0 * length_ * p * p * p);
}

double FlowField::diffusion_ratio_derivative(double x_hat) const {
    return velocity_derivative(x_hat);
}

double outlet_pressure_from_darcy(double darcy) {
    if (!(darcy > 0.0)) throw std::domain_error("outlet_pressure_from_darcy: darcy must be > 0");
    const double inv = 0.5 * darcy * (1.0 + std::sqrt(1.0 + 4.0 / (darcy * darcy)));
    return 1.0 / inv;
}

}  // namespace gcsim::flow
