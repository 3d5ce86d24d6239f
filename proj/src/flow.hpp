#pragma once

namespace gcsim::flow {

/// Steady pressure-driven carrier profiles along the column, as pure
/// functions of the scaled axial coordinate x_hat in [0, L_hat]. All
/// evaluators are closed-form; solvers sample them on whatever grid they
/// use. When the pressure drop vanishes (|1 - pL_hat| < 1e-9) the profiles
/// degenerate to their analytic limits: p = u = D = 1 and omega(x) = x.
class FlowField {
public:
    FlowField(double pL_hat, double L_hat);

    double pressure(double x_hat) const;        // p(0)=1, p(L)=pL, non-increasing
    double velocity(double x_hat) const;         // u = 1/p
    double omega(double x_hat) const;            // effective axial coordinate
    double diffusion_ratio(double x_hat) const;  // D = 1/p
    double velocity_derivative(double x_hat) const;         // du/dx
    double diffusion_ratio_derivative(double x_hat) const;  // dD/dx (same law)

    double pL_hat() const { return pl_; }
    double L_hat() const { return length_; }
    bool uniform() const { return uniform_; }

private:
    void check_domain(double x_hat) const;

    double pl_;
    double length_;
    double drop_;  // 1 - pL^2
    bool uniform_;
};

/// Outlet-to-inlet pressure ratio implied by a given Darcy number,
/// 1/p_L = (Da/2)(1 + sqrt(1 + 4/Da^2)).
double outlet_pressure_from_darcy(double darcy);

}  // namespace gcsim::flow
