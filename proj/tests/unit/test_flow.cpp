#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "../common/btex.hpp"
#include "errors.hpp"
#include "flow.hpp"

using gcsim::flow::FlowField;
using gcsim::flow::outlet_pressure_from_darcy;

namespace {
constexpr double kPL = btex::kOutletPressureHat;  // 1.013/4.01
constexpr double kL = btex::kColumnLengthHat;     // 10683
}  // namespace

TEST_CASE("pressure profile endpoints and midpoint") {
    const FlowField flow(kPL, kL);
    CHECK(flow.pressure(0.0) == 1.0);
    CHECK(flow.pressure(kL) == doctest::Approx(kPL).epsilon(1e-12));
    // Midpoint by direct substitution: sqrt((1 + pL^2)/2).
    CHECK(flow.pressure(0.5 * kL) ==
          doctest::Approx(std::sqrt((1.0 + kPL * kPL) / 2.0)).epsilon(1e-14));
    CHECK(flow.pressure(0.5 * kL) == doctest::Approx(0.7293203).epsilon(1e-6));
    // Monotone non-increasing.
    double prev = 2.0;
    for (int k = 0; k <= 50; ++k) {
        const double p = flow.pressure(kL * k / 50.0);
        CHECK(p <= prev + 1e-15);
        prev = p;
    }
}

TEST_CASE("velocity is the reciprocal pressure") {
    const FlowField flow(kPL, kL);
    CHECK(flow.velocity(0.0) == 1.0);
    CHECK(flow.velocity(kL) == doctest::Approx(3.9585).epsilon(1e-4));
    for (int k = 0; k <= 37; ++k) {
        const double x = kL * k / 37.0;
        CHECK(flow.pressure(x) * flow.velocity(x) == doctest::Approx(1.0).epsilon(1e-14));
    }
    const FlowField uniform(1.0, kL);
    for (double x : {0.0, 0.3 * kL, kL}) CHECK(uniform.velocity(x) == 1.0);
}

TEST_CASE("omega coordinate") {
    const FlowField flow(kPL, kL);
    CHECK(flow.omega(0.0) == 0.0);
    CHECK(flow.omega(kL) == doctest::Approx(7484.84).epsilon(2e-4));

    // Strictly increasing.
    double prev = -1.0;
    for (int k = 0; k <= 60; ++k) {
        const double w = flow.omega(kL * k / 60.0);
        CHECK(w > prev);
        prev = w;
    }

    // Identity map in the uniform limit.
    const FlowField uniform(1.0, kL);
    for (int k = 0; k <= 20; ++k) {
        const double x = kL * k / 20.0;
        CHECK(uniform.omega(x) == doctest::Approx(x).epsilon(1e-12));
    }

    // d(omega)/dx = p, against centered differences.
    const double h = 1e-3;
    for (double x : {0.1 * kL, 0.5 * kL, 0.9 * kL}) {
        const double fd = (flow.omega(x + h) - flow.omega(x - h)) / (2.0 * h);
        CHECK(fd == doctest::Approx(flow.pressure(x)).epsilon(1e-8));
    }
}

TEST_CASE("diffusion ratio tracks inverse pressure") {
    const FlowField flow(kPL, kL);
    CHECK(flow.diffusion_ratio(0.0) == 1.0);
    CHECK(flow.diffusion_ratio(kL) == doctest::Approx(1.0 / kPL).epsilon(1e-12));
    CHECK(flow.diffusion_ratio(0.5 * kL) == doctest::Approx(1.3711398).epsilon(1e-6));
    // Derivative law (1 - pL^2) / (2 L p^3) against centered differences.
    for (double x : {0.2 * kL, 0.7 * kL}) {
        const double h = 1e-3;
        const double fd =
            (flow.diffusion_ratio(x + h) - flow.diffusion_ratio(x - h)) / (2.0 * h);
        CHECK(fd == doctest::Approx(flow.diffusion_ratio_derivative(x)).epsilon(1e-8));
    }
}

TEST_CASE("domain errors outside the column") {
    const FlowField flow(kPL, kL);
    CHECK_THROWS_AS(flow.pressure(-1e-9), std::domain_error);
    CHECK_THROWS_AS(flow.omega(kL * 1.001), std::domain_error);
    CHECK_THROWS_AS(FlowField(0.0, kL), gcsim::ValidationError);
    CHECK_THROWS_AS(FlowField(1.5, kL), gcsim::ValidationError);
}

TEST_CASE("outlet pressure from the Darcy number") {
    // Vanishing pressure drop limit.
    CHECK(outlet_pressure_from_darcy(1e-12) == doctest::Approx(1.0).epsilon(1e-9));
    // Da = 1: 2 / (1 + sqrt 5).
    CHECK(outlet_pressure_from_darcy(1.0) ==
          doctest::Approx(2.0 / (1.0 + std::sqrt(5.0))).epsilon(1e-14));
    CHECK_THROWS_AS(outlet_pressure_from_darcy(0.0), std::domain_error);

    // Consistency with the lab conditions: Da = 16 mu u0 L / (R^2 pL)
    // recovers the measured pressure ratio within 10%.
    const auto cond = btex::conditions();
    const auto geom = btex::geometry();
    const double darcy = 16.0 * cond.viscosity * *cond.inlet_velocity * geom.length /
                         (geom.inner_radius * geom.inner_radius * cond.outlet_pressure);
    const double recovered = outlet_pressure_from_darcy(darcy);
    CHECK(recovered == doctest::Approx(kPL).epsilon(0.10));
}
