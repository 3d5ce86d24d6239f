#include <doctest.h>

#include <cmath>

#include "quadrature.hpp"

using gcsim::quad::integrate;
using gcsim::quad::Options;

TEST_CASE("polynomials integrate exactly") {
    const auto r = integrate([](double x) { return x * x; }, 0.0, 1.0);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("sine over a period") {
    const auto r = integrate([](double x) { return std::sin(x); }, 0.0, M_PI);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("narrow bump inside a wide interval needs breakpoints") {
    // exp(-1e4 (x-5)^2) integrated over [0, 1000]: a single 15-point panel
    // sees zeros everywhere.
    auto bump = [](double x) { return std::exp(-1e4 * (x - 5.0) * (x - 5.0)); };
    const double exact = std::sqrt(M_PI / 1e4);

    Options opts;
    opts.abs_tol = 1e-12;
    const double seeds[] = {4.9, 4.95, 5.0, 5.05, 5.1};
    const auto seeded = integrate(bump, 0.0, 1000.0, opts, seeds);
    CHECK(seeded.converged);
    CHECK(seeded.value == doctest::Approx(exact).epsilon(1e-10));
}

TEST_CASE("panel budget exhaustion is reported, not hidden") {
    Options opts;
    opts.abs_tol = 1e-300;  // unreachable
    opts.max_panels = 8;
    const auto r = integrate([](double x) { return std::sqrt(std::abs(x)); }, -1.0, 1.0,
                             opts);
    CHECK_FALSE(r.converged);
    CHECK(r.error_estimate > 0.0);
}

TEST_CASE("gauss-legendre rule integrates high-order polynomials") {
    const auto& rule = gcsim::quad::gauss_legendre(8);
    // 8-point rule is exact through degree 15: check x^14 on [-1, 1].
    double sum = 0.0;
    for (int i = 0; i < 8; ++i)
        sum += rule.weights[i] * std::pow(rule.nodes[i], 14);
    CHECK(sum == doctest::Approx(2.0 / 15.0).epsilon(1e-13));
}

TEST_CASE("degenerate interval") {
    const auto r = integrate([](double x) { return x; }, 2.0, 2.0);
    CHECK(r.converged);
    CHECK(r.value == 0.0);
}
