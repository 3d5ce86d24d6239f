#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "../common/btex.hpp"
#include "errors.hpp"
#include "scales.hpp"

using namespace gcsim::scales;

TEST_CASE("inlet velocity from flow rate") {
    CHECK(inlet_velocity_from_flow(1e-8, 9e-5) ==
          doctest::Approx(0.3929751).epsilon(1e-6));
    // Unit-area construction: Q = pi * 1e-8 through radius 1e-4.
    CHECK(inlet_velocity_from_flow(M_PI * 1e-8, 1e-4) == doctest::Approx(1.0).epsilon(1e-12));
    // Linear in the flow rate.
    CHECK(inlet_velocity_from_flow(2e-8, 9e-5) ==
          doctest::Approx(2.0 * inlet_velocity_from_flow(1e-8, 9e-5)).epsilon(1e-14));
    CHECK_THROWS_AS(inlet_velocity_from_flow(0.0, 9e-5), std::domain_error);
    CHECK_THROWS_AS(inlet_velocity_from_flow(1e-8, -1.0), std::domain_error);
}

TEST_CASE("ppb conversion at inlet conditions") {
    const double c = ppb_to_molar(20.0, 353.15, 4.01e5);
    CHECK(c == doctest::Approx(2.732e-6).epsilon(2e-3));
    CHECK(ppb_to_molar(0.0, 353.15, 4.01e5) == 0.0);
    CHECK(ppb_to_molar(40.0, 353.15, 4.01e5) == doctest::Approx(2.0 * c).epsilon(1e-14));
    // Round trip through the inverse.
    CHECK(molar_to_ppb(c, 353.15, 4.01e5) == doctest::Approx(20.0).epsilon(1e-12));
    CHECK_THROWS_AS(ppb_to_molar(1.0, -300.0, 1e5), std::domain_error);
}

TEST_CASE("nondimensionalization of the lab-scale experiment") {
    std::vector<std::string> warnings;
    const auto analytes = btex::analytes();
    const auto g = nondimensionalize(btex::geometry(), btex::conditions(), analytes,
                                     btex::kReference, &warnings);

    // Published table values, within the tolerance that absorbs the
    // table-internal rounding.
    CHECK(g.damkohler == doctest::Approx(btex::kDamkohler).epsilon(0.02));
    CHECK(g.length_scale == doctest::Approx(btex::kLengthScale).epsilon(0.05));
    CHECK(g.time_scale == doctest::Approx(btex::kTimeScale).epsilon(0.05));
    CHECK(g.length_hat == doctest::Approx(btex::kColumnLengthHat).epsilon(0.05));
    for (std::size_t i = 0; i < analytes.size(); ++i) {
        CHECK(g.peclet_inverse[i] ==
              doctest::Approx(btex::kPecletInverse[i]).epsilon(0.05));
        CHECK(g.beta[i] == doctest::Approx(btex::kBeta[i]).epsilon(0.005));
    }

    // Reference analyte groups are exactly one by definition.
    CHECK(g.beta[btex::kReference] == 1.0);
    CHECK(g.K_a[btex::kReference] == 1.0);
    CHECK(g.K_d[btex::kReference] == 1.0);

    // The two Damkohler forms are the same algebraic quantity.
    const auto& ref = analytes[btex::kReference];
    const double da_flow = g.length_scale / (g.inlet_velocity * g.time_scale);
    const double da_kinetic = btex::geometry().inner_radius * ref.inlet_concentration /
                              (2.0 * btex::geometry().coating_thickness *
                               ref.equilibrium_loading());
    CHECK(std::abs(da_flow - da_kinetic) / da_kinetic < 1e-12);

    // tau = 1/k_d of the reference component, exactly.
    CHECK(g.time_scale == doctest::Approx(1.0 / ref.k_d).epsilon(1e-14));

    // The velocity/flow-rate disagreement in this dataset produces a warning.
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("inlet_velocity") != std::string::npos);

    // K_a and K_d coincide per analyte: (k_a,i/k_a,1)/beta_i reduces to
    // k_d,i/k_d,1.
    for (std::size_t i = 0; i < analytes.size(); ++i)
        CHECK(g.K_a[i] == doctest::Approx(g.K_d[i]).epsilon(1e-12));
}

TEST_CASE("round trip between scaled and SI quantities") {
    const auto analytes = btex::analytes();
    const auto g = nondimensionalize(btex::geometry(), btex::conditions(), analytes,
                                     btex::kReference);
    for (double x : {1e-4, 0.2, 3.7, 20.0}) {
        CHECK(to_meters(g, to_x_hat(g, x)) == doctest::Approx(x).epsilon(1e-12));
        CHECK(to_seconds(g, to_t_hat(g, x)) == doctest::Approx(x).epsilon(1e-12));
    }
    // Concentration scales per analyte.
    for (const auto& a : analytes) {
        const double c_hat = 0.37;
        CHECK(c_hat * a.inlet_concentration / a.inlet_concentration ==
              doctest::Approx(c_hat).epsilon(1e-14));
        const double q_hat = 0.11;
        CHECK(q_hat * a.equilibrium_loading() / a.equilibrium_loading() ==
              doctest::Approx(q_hat).epsilon(1e-14));
    }
}

TEST_CASE("validation rejects bad inputs") {
    auto geometry = btex::geometry();
    geometry.coating_thickness = geometry.inner_radius;  // not a thin coating
    CHECK_THROWS_AS(geometry.validate(), gcsim::ValidationError);

    auto conditions = btex::conditions();
    conditions.inlet_velocity.reset();
    conditions.inlet_flow_rate.reset();
    CHECK_THROWS_AS(conditions.validate(), gcsim::ValidationError);

    const auto analytes = btex::analytes();
    CHECK_THROWS_AS(nondimensionalize(btex::geometry(), btex::conditions(), analytes,
                                      analytes.size()),
                    gcsim::ValidationError);
    CHECK_THROWS_AS(
        nondimensionalize(btex::geometry(), btex::conditions(),
                          std::span<const AnalyteSpec>{}, 0),
        gcsim::ValidationError);
}

TEST_CASE("velocity resolution prefers the explicit value") {
    auto conditions = btex::conditions();
    std::vector<std::string> warnings;
    CHECK(conditions.resolve_inlet_velocity(9e-5, &warnings) == 0.41);
    CHECK(warnings.size() == 1);

    conditions.inlet_velocity.reset();
    warnings.clear();
    CHECK(conditions.resolve_inlet_velocity(9e-5, &warnings) ==
          doctest::Approx(0.3929751).epsilon(1e-6));
    CHECK(warnings.empty());
}
