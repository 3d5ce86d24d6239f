#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "bessel.hpp"

using namespace gcsim::special;

TEST_CASE("I1 vanishes at zero") {
    CHECK(bessel_i1(0.0) == 0.0);
    CHECK(bessel_i1_integral(0.0) == 0.0);
}

TEST_CASE("I1(1) against the 40-term series oracle") {
    const double oracle = bessel_i1_series(1.0, 40);
    CHECK(oracle == doctest::Approx(0.5651591).epsilon(1e-7));
    CHECK(bessel_i1(1.0) == doctest::Approx(oracle).epsilon(1e-12));
    // Reference value to 17 digits.
    CHECK(bessel_i1(1.0) == doctest::Approx(0.56515910399248503).epsilon(1e-14));
}

TEST_CASE("series and integral representations agree to 1e-10") {
    for (double z : {0.1, 1.0, 5.0, 10.0, 30.0}) {
        const double series = bessel_i1_series(z, 40);
        const double integral = bessel_i1_integral(z);
        CHECK(std::abs(integral - series) / series < 1e-10);
    }
}

TEST_CASE("scaled form matches external references") {
    // exp(-z) I1(z) evaluated with 30 significant digits of arbitrary
    // precision arithmetic, rounded to double.
    struct Ref { double z, value; };
    const Ref refs[] = {
        {35.0, 0.066704431729491439},
        {60.0, 0.051179630189028718},
        {100.0, 0.039744153025130253},
        {1000.0, 0.012610930256928629},
        {14970.0, 0.0032605306432443533},
    };
    for (const Ref& r : refs)
        CHECK(bessel_i1_scaled(r.z) == doctest::Approx(r.value).epsilon(1e-12));
    // Continuity across the series/asymptotic switch.
    CHECK(bessel_i1_scaled(30.0 - 1e-9) ==
          doctest::Approx(bessel_i1_scaled(30.0 + 1e-9)).epsilon(1e-11));
}

TEST_CASE("scaled and unscaled forms are consistent") {
    for (double z : {0.5, 3.0, 12.0, 25.0, 40.0, 200.0})
        CHECK(bessel_i1(z) == doctest::Approx(bessel_i1_scaled(z) * std::exp(z)).epsilon(1e-12));
}

TEST_CASE("unscaled overflow is an infinity, not garbage") {
    CHECK(std::isinf(bessel_i1(800.0)));
    CHECK(std::isfinite(bessel_i1_scaled(800.0)));
}

TEST_CASE("negative arguments are rejected") {
    CHECK_THROWS_AS(bessel_i1(-1.0), std::domain_error);
    CHECK_THROWS_AS(bessel_i1_scaled(-0.5), std::domain_error);
    CHECK_THROWS_AS(bessel_i1_integral(-2.0), std::domain_error);
}
