#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "../common/btex.hpp"
#include "analysis.hpp"
#include "analytic.hpp"
#include "errors.hpp"
#include "flow.hpp"
#include "scales.hpp"

using namespace gcsim;
using analytic::AnalyteDimensionless;
using analytic::concentration_constant_u;
using analytic::concentration_variable_u;

namespace {

AnalyteDimensionless reference_analyte(double Da = 0.0633, double t1 = 55.33) {
    AnalyteDimensionless p;
    p.beta = 1.0;
    p.K_a = 1.0;
    p.K_d = 1.0;
    p.Da = Da;
    p.t1_hat = t1;
    return p;
}

std::vector<double> uniform_grid(double a, double b, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = a + (b - a) * (i + 1) / double(n);
    return g;
}

}  // namespace

TEST_CASE("inlet boundary value during the pulse") {
    const auto p = reference_analyte();
    // x = 0: the injected square pulse itself.
    CHECK(concentration_constant_u(p, 0.0, 0.5 * p.t1_hat) == doctest::Approx(1.0));
    CHECK(concentration_constant_u(p, 0.0, 2.0 * p.t1_hat) == 0.0);
    const flow::FlowField flow(btex::kOutletPressureHat, 500.0);
    CHECK(concentration_variable_u(p, flow, 0.0, 0.5 * p.t1_hat) == doctest::Approx(1.0));
}

TEST_CASE("causality: nothing arrives before the advective delay") {
    const auto p = reference_analyte();
    const flow::FlowField flow(btex::kOutletPressureHat, 500.0);
    const double omega_L = flow.omega(500.0);
    CHECK(concentration_constant_u(p, 400.0, 0.9 * p.Da * 400.0) == 0.0);
    CHECK(concentration_variable_u(p, flow, 500.0, 0.9 * p.Da * omega_L) == 0.0);
}

TEST_CASE("no adsorption: the pulse passes undamped") {
    auto p = reference_analyte();
    p.K_a = 0.0;
    const double x = 120.0;
    CHECK(concentration_constant_u(p, x, p.Da * x + 0.5 * p.t1_hat) ==
          doctest::Approx(1.0));
    CHECK(concentration_constant_u(p, x, p.Da * x + 2.0 * p.t1_hat) == 0.0);

    // Variable velocity: rectangle of height 1/u(L) arriving at Da*omega(L).
    const flow::FlowField flow(btex::kOutletPressureHat, 500.0);
    const double omega_L = flow.omega(500.0);
    const double u_L = flow.velocity(500.0);
    CHECK(concentration_variable_u(p, flow, 500.0, p.Da * omega_L + 0.5 * p.t1_hat) ==
          doctest::Approx(1.0 / u_L));
    CHECK(concentration_variable_u(p, flow, 500.0, p.Da * omega_L + 1.5 * p.t1_hat) ==
          0.0);
}

TEST_CASE("stabilized form equals the direct-Bessel form where both are finite") {
    // Moderate exponents keep the plain I1 route in floating-point range.
    auto p = reference_analyte(0.1, 5.0);
    const double omega = 40.0;
    for (double t : {4.5, 20.0, 40.0, 60.0, 90.0, 140.0}) {
        const double stabilized = concentration_constant_u(p, omega, t);
        const double direct = analytic::concentration_direct_bessel(p, omega, 1.0, t);
        CHECK(stabilized == doctest::Approx(direct).epsilon(1e-8));
    }
    auto weak = reference_analyte(0.1, 5.0);
    weak.beta = 0.3;
    weak.K_a = 0.8;
    weak.K_d = 1.7;
    for (double t : {10.0, 35.0, 70.0}) {
        const double stabilized = concentration_constant_u(weak, omega, t);
        const double direct = analytic::concentration_direct_bessel(weak, omega, 1.0, t);
        CHECK(stabilized == doctest::Approx(direct).epsilon(1e-8));
    }
}

TEST_CASE("vanishing pressure drop recovers the constant-velocity solution") {
    const auto p = reference_analyte();
    const double L = 500.0;
    const flow::FlowField nearly_uniform(1.0 - 1e-12, L);
    for (double t : {50.0, 200.0, 380.0, 500.0}) {
        CHECK(concentration_variable_u(p, nearly_uniform, L, t) ==
              doctest::Approx(concentration_constant_u(p, L, t)).epsilon(1e-8));
    }
}

TEST_CASE("bounds: non-negative and below the carrier dilution ceiling") {
    const flow::FlowField flow(btex::kOutletPressureHat, 500.0);
    const double u_L = flow.velocity(500.0);
    const auto params = btex::published_params();
    for (const auto& p : params) {
        for (double t : uniform_grid(0.0, 700.0, 60)) {
            const double c = concentration_variable_u(p, flow, 500.0, t);
            CHECK(c >= 0.0);
            CHECK(c <= 1.0 / u_L + 1e-9);
        }
    }
}

TEST_CASE("outlet mass equals the injected pulse mass") {
    // u(L) * integral c(L, t) dt = t1 for the reference analyte, full column.
    const auto p = reference_analyte();
    const flow::FlowField flow(btex::kOutletPressureHat, btex::kColumnLengthHat);
    const double omega_L = flow.omega(btex::kColumnLengthHat);
    const double u_L = flow.velocity(btex::kColumnLengthHat);

    const double t_lo = p.Da * omega_L;  // signal starts here
    const double spread = std::sqrt(2.0 * omega_L) / p.K_d;
    const double t_hi = t_lo + omega_L + 14.0 * spread + 2.0 * p.t1_hat;
    const int n = 4000;  // Simpson panels
    const double h = (t_hi - t_lo) / (2 * n);
    double sum = 0.0;
    for (int i = 0; i <= 2 * n; ++i) {
        const double w = (i == 0 || i == 2 * n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        sum += w * concentration_variable_u(p, flow, btex::kColumnLengthHat,
                                            t_lo + i * h);
    }
    const double mass = u_L * sum * h / 3.0;
    CHECK(mass == doctest::Approx(p.t1_hat).epsilon(0.005));
}

TEST_CASE("retention grows with the equilibrium constant") {
    const flow::FlowField flow(btex::kOutletPressureHat, 500.0);
    const auto grid = uniform_grid(0.5, 1200.0, 2400);
    double previous_peak = 0.0;
    for (double K : {0.5, 1.0, 2.0}) {
        auto p = reference_analyte();
        p.K_a = K;  // K = K_a / K_d with K_d fixed
        const std::vector<AnalyteDimensionless> one{p};
        const auto chrom =
            analytic::chromatogram(one, {}, flow, Regime::variable_velocity, grid);
        const auto peak = analysis::find_peak(chrom.times, chrom.values[0]);
        CHECK(peak.time > previous_peak);
        previous_peak = peak.time;
    }
}

TEST_CASE("analytes are mutually independent") {
    const flow::FlowField flow(btex::kOutletPressureHat, 500.0);
    const auto params = btex::published_params();
    const auto names = btex::names();
    const auto grid = uniform_grid(1.0, 650.0, 300);

    const auto all =
        analytic::chromatogram(params, names, flow, Regime::variable_velocity, grid);
    const std::vector<AnalyteDimensionless> only_benzene{params[4]};
    const auto solo =
        analytic::chromatogram(only_benzene, {}, flow, Regime::variable_velocity, grid);
    for (std::size_t k = 0; k < grid.size(); ++k)
        CHECK(all.values[4][k] == solo.values[0][k]);
}

TEST_CASE("scaling frame does not change the physical trace") {
    // Evaluate benzene in the shared frame (o-xylene reference) and in its
    // own frame; the scaled outlet concentration (same c0) must match.
    const auto geometry = btex::geometry();
    const auto conditions = btex::conditions();
    const auto analytes = btex::analytes();

    const auto shared = scales::nondimensionalize(geometry, conditions, analytes, 0);
    const auto own = scales::nondimensionalize(geometry, conditions, analytes, 4);

    const std::size_t i = 4;  // benzene
    const AnalyteDimensionless in_shared{shared.beta[i], shared.K_a[i], shared.K_d[i],
                                         shared.damkohler, shared.injection_hat};
    const AnalyteDimensionless in_own{own.beta[i], own.K_a[i], own.K_d[i],
                                      own.damkohler, own.injection_hat};
    const flow::FlowField flow_shared(shared.outlet_pressure_hat, shared.length_hat);
    const flow::FlowField flow_own(own.outlet_pressure_hat, own.length_hat);

    for (double seconds : {60.0, 100.0, 120.0, 150.0}) {
        const double a =
            concentration_variable_u(in_shared, flow_shared, shared.length_hat,
                                     seconds / shared.time_scale);
        const double b = concentration_variable_u(in_own, flow_own, own.length_hat,
                                                  seconds / own.time_scale);
        CHECK(a == doctest::Approx(b).epsilon(1e-7));
    }
}

TEST_CASE("quadrature failure carries the achieved error") {
    const auto p = reference_analyte();
    analytic::QuadratureOptions opts;
    opts.abs_tol = 1e-300;
    opts.max_panels = 4;
    const flow::FlowField flow(btex::kOutletPressureHat, btex::kColumnLengthHat);
    try {
        concentration_variable_u(p, flow, btex::kColumnLengthHat, 8000.0, opts);
        FAIL("expected NumericalError");
    } catch (const NumericalError& e) {
        CHECK(e.achieved_error > 0.0);
    }
}

TEST_CASE("request validation") {
    const auto p = reference_analyte();
    const flow::FlowField flow(btex::kOutletPressureHat, 500.0);
    CHECK_THROWS_AS(concentration_constant_u(p, -1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(concentration_constant_u(p, 1.0, -1.0), std::domain_error);
    CHECK_THROWS_AS(concentration_variable_u(p, flow, 501.0, 1.0), std::domain_error);

    const std::vector<AnalyteDimensionless> one{p};
    const std::vector<double> descending{2.0, 1.0};
    CHECK_THROWS_AS(
        analytic::chromatogram(one, {}, flow, Regime::variable_velocity, descending),
        ValidationError);
    const std::vector<double> empty;
    CHECK_THROWS_AS(
        analytic::chromatogram(one, {}, flow, Regime::variable_velocity, empty),
        ValidationError);
}
