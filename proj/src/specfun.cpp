#include "kluyver/specfun.hpp"

#include <array>
#include <cmath>
#include <string>
#include <numbers>

#include "kluyver/errors.hpp"

namespace kluyver::specfun {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double small_cut = 4.0;    // ascending series below this
constexpr double hankel_cut = 20.0;  // Hankel asymptotics at and above this
constexpr double i0_cut = 20.0;

struct Miller {
  double j0, j1, y0, y1;
};

// Backward recurrence for J_k(t), normalised by 1 = J0 + 2 sum J_2k.
// The Neumann series for Y0 and Y1 reuse the same sequence.
Miller miller(double t) {
  int n = 2 * static_cast<int>(std::ceil((1.5 * t + 30.0) / 2.0));
  double jp1 = 0.0, jk = 1e-30;
  double norm = 0.0, sy0 = 0.0, sy1 = 0.0;
  double j1v = 0.0;
  for (int k = n; k >= 1; --k) {
    double jm1 = 2.0 * k / t * jk - jp1;
    // jk currently holds J_k (unnormalised)
    if (k % 2 == 0) {
      norm += 2.0 * jk;
      int h = k / 2;
      sy0 += ((h % 2 == 0) ? 1.0 : -1.0) * jk / h;
    } else if (k >= 3) {
      int h = (k - 1) / 2;
      sy1 += ((h % 2 == 0) ? 1.0 : -1.0) * (2.0 * h + 1.0) / (h * (h + 1.0)) * jk;
    }
    if (k == 1) j1v = jk;
    jp1 = jk;
    jk = jm1;
    if (std::abs(jk) > 1e250) {
      jk *= 1e-250;
      jp1 *= 1e-250;
      norm *= 1e-250;
      sy0 *= 1e-250;
      sy1 *= 1e-250;
      j1v *= 1e-250;
    }
  }
  norm += jk;
  Miller m;
  m.j0 = jk / norm;
  m.j1 = j1v / norm;
  double lg = std::log(0.5 * t) + euler_gamma;
  m.y0 = 2.0 / pi * (lg * m.j0 - 2.0 * sy0 / norm);
  m.y1 = 2.0 / pi * (-m.j0 / t + (lg - 1.0) * m.j1 - sy1 / norm);
  return m;
}

// P and Q of the Hankel expansion for order nu in {0, 1}.
void hankel_pq(int nu, double t, double& p, double& q) {
  double mu = 4.0 * nu * nu;
  double z8 = 8.0 * t;
  p = 1.0;
  q = 0.0;
  double term = 1.0;
  double last = 1e300;
  for (int k = 1; k < 60; ++k) {
    term *= (mu - (2.0 * k - 1) * (2.0 * k - 1)) / (k * z8);
    double a = std::abs(term);
    if (a > last) break;
    last = a;
    // term is a_k / t^k with a_k the Hankel coefficient
    switch (k % 4) {
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
      case 0: p += term; break;
    }
    if (a < 1e-18) break;
  }
}

void hankel(int nu, double t, double& j, double& y) {
  double p, q;
  hankel_pq(nu, t, p, q);
  double c = std::cos(t), s = std::sin(t);
  double cx, sx;  // cos and sin of t - (nu/2 + 1/4) pi
  if (nu == 0) {
    cx = (c + s) * std::numbers::sqrt2 / 2;
    sx = (s - c) * std::numbers::sqrt2 / 2;
  } else {
    cx = (s - c) * std::numbers::sqrt2 / 2;
    sx = -(s + c) * std::numbers::sqrt2 / 2;
  }
  double amp = std::sqrt(2.0 / (pi * t));
  j = amp * (p * cx - q * sx);
  y = amp * (p * sx + q * cx);
}

// sum_k (sign * t^2/4)^k / (k! (k+off)!) with optional harmonic weights
double j0_series(double t) {
  double x = -0.25 * t * t, term = 1.0, sum = 1.0;
  for (int k = 1; k < 80; ++k) {
    term *= x / (double(k) * k);
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

double j1_series(double t) {
  double x = -0.25 * t * t, term = 0.5 * t, sum = term;
  for (int k = 1; k < 80; ++k) {
    term *= x / (double(k) * (k + 1));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

double y0_series(double t, double j0v) {
  double x = -0.25 * t * t, term = 1.0, h = 0.0, sum = 0.0;
  for (int k = 1; k < 80; ++k) {
    term *= x / (double(k) * k);
    h += 1.0 / k;
    double add = -h * term;
    sum += add;
    if (std::abs(add) < 1e-17 * std::abs(sum)) break;
  }
  return 2.0 / pi * ((std::log(0.5 * t) + euler_gamma) * j0v + sum);
}

double y1_series(double t, double j1v) {
  // psi(k+1) + psi(k+2) = -2 gamma + H_k + H_{k+1}
  double x = -0.25 * t * t, term = 0.5 * t;
  double hk = 0.0, hk1 = 1.0;
  double sum = term * (-2.0 * euler_gamma + hk + hk1);
  for (int k = 1; k < 80; ++k) {
    term *= x / (double(k) * (k + 1));
    hk += 1.0 / k;
    hk1 += 1.0 / (k + 1);
    double add = term * (-2.0 * euler_gamma + hk + hk1);
    sum += add;
    if (std::abs(add) < 1e-17 * std::abs(sum)) break;
  }
  return -2.0 / (pi * t) + 2.0 / pi * std::log(0.5 * t) * j1v - sum / pi;
}

double i0_series(double t) {
  double x = 0.25 * t * t, term = 1.0, sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= x / (double(k) * k);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

// sum_k s^k ((2k-1)!!)^2 / (k! (8t)^k), s = +1 for I0, -1 for K0
double modified_asymptotic(double t, double s) {
  double term = 1.0, sum = 1.0, last = 1.0;
  for (int k = 1; k < 80; ++k) {
    term *= s * (2.0 * k - 1) * (2.0 * k - 1) / (8.0 * k * t);
    double a = std::abs(term);
    if (a > last) break;
    last = a;
    sum += term;
    if (a < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

double k0_small(double t) {
  double x = 0.25 * t * t, term = 1.0, h = 0.0, sum = 0.0;
  for (int k = 1; k < 80; ++k) {
    term *= x / (double(k) * k);
    h += 1.0 / k;
    sum += h * term;
    if (h * term < 1e-17 * sum) break;
  }
  return -(std::log(0.5 * t) + euler_gamma) * i0_series(t) + sum;
}

// exp(t) K0(t) = int_0^inf exp(-t (cosh u - 1)) du by the trapezoid rule.
double k0_scaled_trapezoid(double t) {
  double h = std::min(0.2, 0.3 / std::sqrt(t));
  double sum = 0.5;
  for (int k = 1; k < 10000; ++k) {
    double u = k * h;
    double v = std::exp(-t * 2.0 * std::sinh(0.5 * u) * std::sinh(0.5 * u));
    sum += v;
    if (v < 1e-18) break;
  }
  return h * sum;
}

void require_finite(double t, const char* name) {
  if (!std::isfinite(t)) throw DomainError(std::string(name) + ": argument must be finite");
}

}  // namespace

double j0(double t) {
  require_finite(t, "j0");
  t = std::abs(t);
  if (t < small_cut) return j0_series(t);
  if (t < hankel_cut) return miller(t).j0;
  double j, y;
  hankel(0, t, j, y);
  return j;
}

double j1(double t) {
  require_finite(t, "j1");
  double a = std::abs(t), r;
  if (a < small_cut) {
    r = j1_series(a);
  } else if (a < hankel_cut) {
    r = miller(a).j1;
  } else {
    double y;
    hankel(1, a, r, y);
  }
  return t < 0 ? -r : r;
}

double y0(double t) {
  require_finite(t, "y0");
  if (!(t > 0.0)) throw DomainError("y0: argument must be positive");
  if (t < small_cut) return y0_series(t, j0_series(t));
  if (t < hankel_cut) return miller(t).y0;
  double j, y;
  hankel(0, t, j, y);
  return y;
}

double y1(double t) {
  require_finite(t, "y1");
  if (!(t > 0.0)) throw DomainError("y1: argument must be positive");
  if (t < small_cut) return y1_series(t, j1_series(t));
  if (t < hankel_cut) return miller(t).y1;
  double j, y;
  hankel(1, t, j, y);
  return y;
}

double i0_scaled(double t) {
  require_finite(t, "i0");
  t = std::abs(t);
  if (t < i0_cut) return std::exp(-t) * i0_series(t);
  return modified_asymptotic(t, 1.0) / std::sqrt(2.0 * pi * t);
}

double i0(double t) {
  require_finite(t, "i0");
  t = std::abs(t);
  if (t < i0_cut) return i0_series(t);
  if (t > 713.0) throw OverflowError("i0: result overflows binary64; use i0_scaled");
  double e = std::exp(0.5 * t);
  return (modified_asymptotic(t, 1.0) / std::sqrt(2.0 * pi * t) * e) * e;
}

double k0_scaled(double t) {
  require_finite(t, "k0");
  if (!(t > 0.0)) throw DomainError("k0: argument must be positive");
  if (t <= 1.0) return std::exp(t) * k0_small(t);
  if (t < 25.0) return k0_scaled_trapezoid(t);
  return modified_asymptotic(t, -1.0) * std::sqrt(pi / (2.0 * t));
}

double k0(double t) {
  require_finite(t, "k0");
  if (!(t > 0.0)) throw DomainError("k0: argument must be positive");
  if (t <= 1.0) return k0_small(t);
  return k0_scaled(t) * std::exp(-t);
}

double j0_zero(int k) {
  if (k < 1) throw DomainError("j0_zero: index must be >= 1");
  double b = (k - 0.25) * pi;
  double b8 = 8.0 * b;
  double z = b + 1.0 / b8 - 124.0 / (3.0 * b8 * b8 * b8);
  for (int it = 0; it < 6; ++it) {
    double dz = j0(z) / j1(z);
    z += dz;
    if (std::abs(dz) < 1e-16 * z) break;
  }
  return z;
}

double upper_gamma_int(int s, double x) {
  if (s < 1) throw DomainError("upper_gamma_int: order must be a positive integer");
  if (x < 0.0) throw DomainError("upper_gamma_int: argument must be non-negative");
  double term = 1.0, sum = 1.0, fact = 1.0;
  for (int k = 1; k < s; ++k) {
    term *= x / k;
    sum += term;
    fact *= k;
  }
  return fact * std::exp(-x) * sum;
}

}  // namespace kluyver::specfun
