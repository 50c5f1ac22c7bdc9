#include "kluyver/quad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "kluyver/errors.hpp"
#include "kluyver/specfun.hpp"

namespace kluyver::quad {

namespace {

constexpr double pi = std::numbers::pi;
constexpr int max_level = 10;
constexpr int min_level = 3;

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(std::complex<double> v) { return std::abs(v); }
inline bool finite(double v) { return std::isfinite(v); }
inline bool finite(std::complex<double> v) {
  return std::isfinite(v.real()) && std::isfinite(v.imag());
}

template <class T, class F>
T checked(const F& f, double x) {
  T v = f(x);
  if (!finite(v)) throw DomainError("quadrature: non-finite integrand at x = " + std::to_string(x));
  return v;
}

// Trapezoid sums over u in [ulo, uhi] with step halving. node(u) returns
// the weighted integrand value at u.
template <class T, class Node>
BasicQuadResult<T> trapezoid_levels(const Node& node, double ulo, double uhi, double h0,
                                    double tol, std::size_t nev, const char* who) {
  T sum{};
  double l1 = 0.0;
  long klo = static_cast<long>(std::ceil(ulo / h0));
  long khi = static_cast<long>(std::floor(uhi / h0));
  for (long k = klo; k <= khi; ++k) {
    T v = node(k * h0);
    sum += v;
    l1 += magnitude(v);
  }
  nev += static_cast<std::size_t>(khi - klo + 1);
  T s = h0 * sum;
  double h = h0;
  double diff = 0.0;
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    T add{};
    long ilo = static_cast<long>(std::ceil((ulo / h - 1.0) / 2.0));
    long ihi = static_cast<long>(std::floor((uhi / h - 1.0) / 2.0));
    for (long i = ilo; i <= ihi; ++i) {
      T v = node((2 * i + 1) * h);
      add += v;
      l1 += magnitude(v);
    }
    nev += static_cast<std::size_t>(std::max(0L, ihi - ilo + 1));
    T next = 0.5 * s + h * add;
    diff = magnitude(next - s);
    s = next;
    double scale = h * l1;
    if (level >= min_level && diff <= tol * scale) return {s, diff, nev};
  }
  throw AccuracyError(std::string(who) + ": tolerance not reached", magnitude(s), diff);
}

template <class T, class F>
BasicQuadResult<T> de_impl(const F& f, double tol) {
  auto node = [&](double u) -> T {
    double e = std::exp(-u);
    double t = std::exp(u - e);
    if (t < 1e-300) return T{};
    return checked<T>(f, t) * (t * (1.0 + e));
  };
  // Locate the truncation window on a coarse grid.
  const double h0 = 0.5;
  double gmax = 0.0;
  std::size_t nev = 0;
  double uhi = 0.0;
  int quiet = 0;
  for (int k = 0; k <= 120; ++k) {
    double u = k * h0;
    double m = magnitude(node(u));
    ++nev;
    gmax = std::max(gmax, m);
    uhi = u;
    quiet = (m <= 1e-18 * gmax) ? quiet + 1 : 0;
    if (quiet >= 3) break;
  }
  double ulo = 0.0;
  quiet = 0;
  for (int k = 1; k <= 16; ++k) {
    double u = -k * h0;
    double m = magnitude(node(u));
    ++nev;
    gmax = std::max(gmax, m);
    ulo = u;
    quiet = (m <= 1e-18 * gmax) ? quiet + 1 : 0;
    if (quiet >= 2) break;
  }
  if (gmax == 0.0) return {T{}, 0.0, nev};
  return trapezoid_levels<T>(node, ulo, uhi, h0, tol, nev, "de_integrate");
}

template <class T, class F>
BasicQuadResult<T> tanh_sinh_impl(const F& f, double a, double b, double tol) {
  if (!(b > a)) {
    if (a == b) return {};
    throw DomainError("tanh_sinh: need a < b");
  }
  const double c = 0.5 * (a + b), d = 0.5 * (b - a);
  // Node at u; positive u approaches b, negative u approaches a. Offsets
  // from the endpoint are formed directly to keep them accurate.
  auto pair = [&](double u) -> T {
    double au = std::abs(u);
    double v = 0.5 * pi * std::sinh(au);
    double e = std::exp(-2.0 * v);
    double delta = 2.0 * e / (1.0 + e);  // 1 - tanh v
    double w = d * 0.5 * pi * std::cosh(au) * 4.0 * e / ((1.0 + e) * (1.0 + e));
    if (w == 0.0) return T{};
    double off = d * delta;
    if (u == 0.0) return w * checked<T>(f, c);
    double x = (u > 0) ? b - off : a + off;
    if (x >= b || x <= a) return T{};
    return w * checked<T>(f, x);
  };
  double gmax = 0.0;
  double uhi = 0.0;
  std::size_t nev = 0;
  int quiet = 0;
  for (int k = 0; k <= 14; ++k) {
    double u = 0.5 * k;
    double m = magnitude(pair(u)) + (k ? magnitude(pair(-u)) : 0.0);
    nev += 2;
    gmax = std::max(gmax, m);
    uhi = u;
    quiet = (m <= 1e-19 * gmax) ? quiet + 1 : 0;
    if (quiet >= 2) break;
  }
  if (gmax == 0.0) return {T{}, 0.0, nev};
  return trapezoid_levels<T>(pair, -uhi, uhi, 0.5, tol, nev, "tanh_sinh");
}

std::array<GaussRule, 65> build_gauss() {
  std::array<GaussRule, 65> rules;
  for (int n = 1; n <= 64; ++n) {
    GaussRule& r = rules[n];
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
      double z = std::cos(pi * (i + 0.75) / (n + 0.5));
      double dp = 1.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = z;
        for (int k = 2; k <= n; ++k) {
          double p2 = ((2.0 * k - 1) * z * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1.0);
        double dz = p1 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-16) break;
      }
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      double w = 2.0 / ((1.0 - z * z) * dp * dp);
      r.x[i] = -z;
      r.x[n - 1 - i] = z;
      r.w[i] = r.w[n - 1 - i] = w;
    }
    if (n % 2 == 1) r.x[n / 2] = 0.0;
  }
  return rules;
}

}  // namespace

QuadResult de_integrate(const RealFn& f, double tol) { return de_impl<double>(f, tol); }
ComplexQuadResult de_integrate_complex(const ComplexFn& f, double tol) {
  return de_impl<std::complex<double>>(f, tol);
}

QuadResult tanh_sinh(const RealFn& f, double a, double b, double tol) {
  return tanh_sinh_impl<double>(f, a, b, tol);
}
ComplexQuadResult tanh_sinh_complex(const ComplexFn& f, double a, double b, double tol) {
  return tanh_sinh_impl<std::complex<double>>(f, a, b, tol);
}

const GaussRule& gauss_legendre(int n) {
  static const std::array<GaussRule, 65> rules = build_gauss();
  if (n < 1 || n > 64) throw DomainError("gauss_legendre: n must be in [1, 64]");
  return rules[n];
}

SeriesLimit levin_u(const std::vector<double>& terms) {
  const int n = static_cast<int>(terms.size());
  SeriesLimit out;
  if (n == 0) return out;
  std::vector<double> s(n);
  double acc = 0.0;
  for (int j = 0; j < n; ++j) s[j] = acc += terms[j];
  out.value = s[n - 1];
  out.err_estimate = std::abs(terms[n - 1]);
  out.terms_used = n;
  if (n < 3) return out;
  const double beta = 1.0;
  const int kmax = std::min(n - 1, 40);
  const int start = n - 1 - kmax;
  double prev = s[start];
  double best_err = out.err_estimate;
  for (int k = 1; k <= kmax; ++k) {
    double num = 0.0, den = 0.0;
    double binom = 1.0;
    bool ok = true;
    for (int j = 0; j <= k; ++j) {
      int m = start + j;
      if (terms[m] == 0.0) {
        ok = false;
        break;
      }
      double omega = (beta + m) * terms[m];
      double c = binom * std::pow((beta + start + j) / (beta + start + k), k - 1) / omega;
      if (j % 2) c = -c;
      num += c * s[m];
      den += c;
      binom = binom * (k - j) / (j + 1);
    }
    if (!ok || den == 0.0) break;
    double lk = num / den;
    double err = std::abs(lk - prev);
    if (k >= 2 && err <= best_err) {
      best_err = err;
      out.value = lk;
      out.err_estimate = err;
      out.terms_used = start + k + 1;
    }
    prev = lk;
  }
  return out;
}

SeriesLimit euler_average(const std::vector<double>& terms) {
  const int n = static_cast<int>(terms.size());
  SeriesLimit out;
  if (n == 0) return out;
  std::vector<double> s(n);
  double acc = 0.0;
  for (int j = 0; j < n; ++j) s[j] = acc += terms[j];
  out.value = s[n - 1];
  out.err_estimate = std::abs(terms[n - 1]);
  out.terms_used = n;
  for (int m = n; m > 1; --m) {
    double err = std::abs(s[m - 1] - s[m - 2]);
    if (err < out.err_estimate) {
      out.value = s[m - 1];
      out.err_estimate = err;
    }
    for (int i = 0; i + 1 < m; ++i) s[i] = 0.5 * (s[i] + s[i + 1]);
  }
  return out;
}

QuadResult oscillatory_integrate(const OscillatorySpec& spec, double tol) {
  if (!(spec.envelope_exponent > 0.0))
    throw DivergenceError("oscillatory_integrate: envelope does not decay (exponent <= 0)");
  if (!(spec.frequency_scale > 0.0))
    throw DomainError("oscillatory_integrate: frequency scale must be positive");
  const GaussRule& g = gauss_legendre(15);
  const int sub = std::max(1, spec.subdivisions);
  std::vector<double> terms;
  std::size_t nev = 0;
  double lo = 0.0;
  double last_err = 0.0, last_val = 0.0;
  int agree = 0;
  for (int k = 1; k <= spec.max_panels; ++k) {
    double hi = specfun::j0_zero(k) / spec.frequency_scale;
    double panel = 0.0;
    if (k == 1) {
      QuadResult r = tanh_sinh(spec.integrand, lo, hi, 1e-15);
      panel = r.value;
      nev += r.n_evals;
    } else {
      double w = (hi - lo) / sub;
      for (int s = 0; s < sub; ++s) {
        double a = lo + s * w, c = a + 0.5 * w;
        for (int i = 0; i < 15; ++i) panel += g.w[i] * 0.5 * w * checked<double>(spec.integrand, c + 0.5 * w * g.x[i]);
        nev += 15;
      }
    }
    terms.push_back(panel);
    lo = hi;
    if (k < 6) continue;
    SeriesLimit lim = levin_u(terms);
    double scale = std::max(std::abs(lim.value), 1e-300);
    bool close = std::abs(lim.value - last_val) <= tol * scale && lim.err_estimate <= tol * scale;
    agree = close ? agree + 1 : 0;
    last_err = std::max(lim.err_estimate, std::abs(lim.value - last_val));
    last_val = lim.value;
    if (agree >= 2) return {lim.value, last_err, nev};
  }
  SeriesLimit e = euler_average(terms);
  double scale = std::max(std::abs(e.value), 1e-300);
  if (e.err_estimate <= tol * scale) return {e.value, e.err_estimate, nev};
  throw AccuracyError("oscillatory_integrate: acceleration did not converge", last_val, last_err);
}

}  // namespace kluyver::quad
