#pragma once

namespace gcsim::special {

/// Modified Bessel function of the first kind, order one, for z >= 0.
/// Overflows to +inf once exp(z) leaves double range (z ~ 713).
double bessel_i1(double z);

/// exp(-z) * I1(z). Finite for all z >= 0; this is the form used inside
/// the stabilized convolution integrals.
double bessel_i1_scaled(double z);

/// Truncated power series sum_{k<terms} (z/2)^(2k+1) / (k! (k+1)!).
/// Kept as an independent oracle for cross-checks.
double bessel_i1_series(double z, int terms);

/// Integral representation (z/pi) * int_0^pi exp(z cos xi) sin^2 xi dxi,
/// evaluated by adaptive quadrature. Independent of the series route.
double bessel_i1_integral(double z);

}  // namespace gcsim::special
