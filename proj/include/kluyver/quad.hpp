#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace kluyver::quad {

template <class T>
struct BasicQuadResult {
  T value{};
  double err_estimate = 0.0;
  std::size_t n_evals = 0;
};
using QuadResult = BasicQuadResult<double>;
using ComplexQuadResult = BasicQuadResult<std::complex<double>>;

using RealFn = std::function<double(double)>;
using ComplexFn = std::function<std::complex<double>(double)>;

// Double-exponential rule on (0, inf) for integrands with exponential or
// algebraic decay and at most integrable endpoint singularities at 0.
// Converged when successive levels agree to tol relative to int |f|.
QuadResult de_integrate(const RealFn& f, double tol);
ComplexQuadResult de_integrate_complex(const ComplexFn& f, double tol);

// tanh-sinh on a finite interval [a, b]; endpoints are never evaluated.
QuadResult tanh_sinh(const RealFn& f, double a, double b, double tol);
ComplexQuadResult tanh_sinh_complex(const ComplexFn& f, double a, double b, double tol);

struct GaussRule {
  std::vector<double> x;  // nodes on [-1, 1]
  std::vector<double> w;
};
// n-point Gauss-Legendre rule, 1 <= n <= 64.
const GaussRule& gauss_legendre(int n);

struct SeriesLimit {
  double value = 0.0;
  double err_estimate = 0.0;
  int terms_used = 0;
};

// Levin u-transform of the partial sums of a series given by its terms.
SeriesLimit levin_u(const std::vector<double>& terms);
// Iterated averaging of partial sums; suited to alternating series.
SeriesLimit euler_average(const std::vector<double>& terms);

// Integral over (0, inf) of an oscillatory integrand whose envelope
// decays like t^-envelope_exponent. The range is cut at the zeros of
// J0(frequency_scale * t); panel integrals are summed with Levin
// acceleration, falling back to iterated averaging.
struct OscillatorySpec {
  RealFn integrand;
  double envelope_exponent = 1.0;
  double frequency_scale = 1.0;
  int subdivisions = 2;
  int max_panels = 120;
};
QuadResult oscillatory_integrate(const OscillatorySpec& spec, double tol);

}  // namespace kluyver::quad
