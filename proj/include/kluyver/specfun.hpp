#pragma once

namespace kluyver::specfun {

// Bessel functions of the first and second kind for real t >= 0.
double j0(double t);
double j1(double t);
double y0(double t);
// Order-one Neumann function; used for Wronskian checks.
double y1(double t);

// Modified Bessel functions. i0 overflows beyond t ~ 713 and throws
// OverflowError; use the scaled forms for large arguments.
double i0(double t);
double k0(double t);
double i0_scaled(double t);  // exp(-t) * I0(t)
double k0_scaled(double t);  // exp(t)  * K0(t)

// k-th positive zero of J0 (k >= 1).
double j0_zero(int k);

// Upper incomplete gamma Gamma(s, x) for positive integer s.
double upper_gamma_int(int s, double x);

inline constexpr double euler_gamma = 0.57721566490153286060651209;

}  // namespace kluyver::specfun
