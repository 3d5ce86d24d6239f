#include "bessel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "quadrature.hpp"

namespace gcsim::special {

namespace {

void check_domain(double z) {
    if (std::isnan(z) || z < 0.0)
        throw std::domain_error("bessel_i1: argument must be >= 0");
}

// Power series, summed until the next term is negligible. Terms are built
// incrementally so intermediate values stay on the scale of the result.
double series_to_convergence(double z) {
    double term = 0.5 * z;
    double sum = term;
    const double q = 0.25 * z * z;
    for (int k = 1; k < 1000; ++k) {
        term *= q / (static_cast<double>(k) * (k + 1));
        const double next = sum + term;
        if (next == sum) break;
        sum = next;
    }
    return sum;
}

// Large-argument expansion of exp(-z) I1(z) * sqrt(2 pi z):
//   sum_k (-1)^k a_k / z^k,  a_k = a_{k-1} (4 - (2k-1)^2) / (8k).
// Accurate to machine precision for z >= 30.
double scaled_asymptotic(double z) {
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k <= 30; ++k) {
        term *= -(4.0 - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k * z);
        const double next = sum + term;
        if (next == sum) break;
        sum = next;
    }
    return sum / std::sqrt(2.0 * M_PI * z);
}

constexpr double kSeriesCutoff = 30.0;

}  // namespace

double bessel_i1_scaled(double z) {
    check_domain(z);
    if (z < kSeriesCutoff) return series_to_convergence(z) * std::exp(-z);
    return scaled_asymptotic(z);
}

double bessel_i1(double z) {
    check_domain(z);
    if (z < kSeriesCutoff) return series_to_convergence(z);
    return scaled_asymptotic(z) * std::exp(z);
}

double bessel_i1_series(double z, int terms) {
    check_domain(z);
    if (terms < 1) throw std::domain_error("bessel_i1_series: need terms >= 1");
    double term = 0.5 * z;
    double sum = term;
    const double q = 0.25 * z * z;
    for (int k = 1; k < terms; ++k) {
        term *= q / (static_cast<double>(k) * (k + 1));
        sum += term;
    }
    return sum;
}

double bessel_i1_integral(double z) {
    check_domain(z);
    if (z == 0.0) return 0.0;
    // Integrate exp(z (cos xi - 1)) sin^2 xi, which stays in [0, 1], then
    // restore the exp(z) factor. The integrand concentrates near xi = 0 for
    // large z, so seed panel edges on that scale.
    auto f = [z](double xi) {
        const double s = std::sin(xi);
        return std::exp(z * (std::cos(xi) - 1.0)) * s * s;
    };
    const double w = 1.0 / std::sqrt(std::max(z, 1.0));
    const double seeds[] = {w, 2 * w, 4 * w, 8 * w, 0.5 * M_PI};
    quad::Options opts;
    opts.abs_tol = 0.0;
    opts.rel_tol = 1e-14;
    const quad::Result r = quad::integrate(f, 0.0, M_PI, opts, seeds);
    return (z / M_PI) * r.value * std::exp(z);
}

}  // namespace gcsim::special
