#include "kluyver/walks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>

#include "kluyver/bessel_product.hpp"
#include "kluyver/errors.hpp"
#include "kluyver/moments.hpp"
#include "kluyver/quad.hpp"
#include "kluyver/specfun.hpp"
#include "kluyver/wick.hpp"

namespace kluyver::walks {

namespace {

constexpr double pi = std::numbers::pi;
constexpr int max_steps = 16;
constexpr double tail_cut = 20.0;
constexpr double cache_T = 2000.0;
constexpr double phase_budget = 8.0;
constexpr double min_direct_x = 1e-6;
constexpr double small_x_linear = 1e-3;

// x * int J0(xt) J0(t)^n t dt with the panel sum cached up to cache_T and
// the remainder from the large-t expansion.
class DirectKernel {
 public:
  explicit DirectKernel(int n)
      : n_(n),
        omega_max_(2.0 * n),
        base_(quad::HankelTail::factor(quad::BesselKind::J0, 0, {1.0, 1.0}, 20).pow(n)) {
    base_.shift(1.0);
    int k = 0;
    while (specfun::j0_zero(k + 1) <= cache_T) {
      append_panel(++k, t_, wf_);
      panel_end_.push_back(t_.size());
    }
  }

  DensityValue evaluate(double x) const {
    const int kt = first_zero_index(std::max(tail_cut, tail_cut / x));
    const double T = specfun::j0_zero(kt);
    const std::size_t cached = std::min<std::size_t>(kt, panel_end_.size());
    const std::size_t end = cached ? panel_end_[cached - 1] : 0;
    double finite = 0.0, l1 = 0.0;
    for (std::size_t i = 0; i < end; ++i) {
      double v = wf_[i] * specfun::j0(x * t_[i]);
      finite += v;
      l1 += std::abs(v);
    }
    if (static_cast<std::size_t>(kt) > panel_end_.size()) {
      std::vector<double> t, wf;
      for (int k = static_cast<int>(panel_end_.size()) + 1; k <= kt; ++k) {
        t.clear();
        wf.clear();
        append_panel(k, t, wf);
        for (std::size_t i = 0; i < t.size(); ++i) {
          double v = wf[i] * specfun::j0(x * t[i]);
          finite += v;
          l1 += std::abs(v);
        }
      }
    }
    quad::HankelTail tail = base_.with_scales({1.0, x}) *
                            quad::HankelTail::factor(quad::BesselKind::J0, 1, {1.0, x}, 20);
    double terr = 0.0;
    std::complex<double> tv = tail.integrate_from(T, &terr);
    double value = finite + tv.real();
    double err = terr + std::abs(tv.imag()) + 1e-16 * l1 * std::sqrt(double(end) + 1.0);
    return {x * value, x * err};
  }

 private:
  static int first_zero_index(double bound) {
    int k = std::max(1, static_cast<int>(std::floor(bound / pi + 0.25)));
    while (k > 1 && specfun::j0_zero(k - 1) >= bound) --k;
    while (specfun::j0_zero(k) < bound) ++k;
    return k;
  }

  // Nodes of zero-panel k (between the (k-1)-th and k-th zero of J0).
  void append_panel(int k, std::vector<double>& t, std::vector<double>& wf) const {
    const quad::GaussRule& g = quad::gauss_legendre(15);
    double lo = (k == 1) ? 0.0 : specfun::j0_zero(k - 1);
    double hi = specfun::j0_zero(k);
    int m = std::max(1, static_cast<int>(std::ceil(omega_max_ * (hi - lo) / phase_budget)));
    double width = (hi - lo) / m;
    for (int s = 0; s < m; ++s) {
      double c = lo + (s + 0.5) * width;
      for (int i = 0; i < 15; ++i) {
        double tt = c + 0.5 * width * g.x[i];
        double j = specfun::j0(tt);
        double v = tt;
        for (int p = 0; p < n_; ++p) v *= j;
        t.push_back(tt);
        wf.push_back(0.5 * width * g.w[i] * v);
      }
    }
  }

  int n_;
  double omega_max_;
  quad::HankelTail base_;
  std::vector<double> t_, wf_;
  std::vector<std::size_t> panel_end_;
};

const DirectKernel& direct_kernel(int n) {
  static std::array<std::once_flag, max_steps + 1> once;
  static std::array<std::unique_ptr<DirectKernel>, max_steps + 1> kernels;
  std::call_once(once[n], [n] { kernels[n] = std::make_unique<DirectKernel>(n); });
  return *kernels[n];
}

const std::vector<wick::FeynmanTerm>& feynman_terms(int j) {
  static std::array<std::once_flag, max_steps + 1> once;
  static std::array<std::vector<wick::FeynmanTerm>, max_steps + 1> terms;
  std::call_once(once[j], [j] { terms[j] = wick::feynman_coefficients(j); });
  return terms[j];
}

constexpr int series_kmax = 80;

const moments::MaclaurinTable& series_table(int j) {
  static std::array<std::once_flag, max_steps + 1> once;
  static std::array<moments::MaclaurinTable, max_steps + 1> tables;
  std::call_once(once[j], [j] { tables[j] = moments::maclaurin_table(j, series_kmax, 1e-14); });
  return tables[j];
}

void check_n(int n) {
  if (n < 1 || n > max_steps)
    throw DomainError("walks: n must be in [1, " + std::to_string(max_steps) + "]");
}

DensityValue direct_unchecked(int n, double x) {
  if (x <= 0.0 || x >= n) return {0.0, 0.0};
  return direct_kernel(n).evaluate(x);
}

// Sum over Feynman terms of q_m/pi^(2(j-m)) x M(x; 2m+1, 2(j-m), 1).
DensityValue feynman_unchecked(int j, double x, double tol) {
  if (x == 0.0) return {0.0, 0.0};
  double v = 0.0, e = 0.0;
  for (const auto& t : feynman_terms(j)) {
    double c = t.q.get_d() / std::pow(pi, t.k0_power);
    auto r = moments::bessel_moment({x, t.i0_power, t.k0_power, 1, moments::Outer::I0}, tol);
    v += c * r.value;
    e += std::abs(c) * r.err_estimate;
  }
  return {x * v, x * e};
}

DensityValue p4_moment_form(double x, double tol) {
  const double pi4 = std::pow(pi, 4);
  auto a = moments::bessel_moment({x, 0, 4, 1, moments::Outer::I0}, tol);
  auto b = moments::bessel_moment({x, 1, 3, 1, moments::Outer::K0}, tol);
  return {x * (6.0 / pi4 * a.value + 24.0 / pi4 * b.value),
          x * (6.0 / pi4 * a.err_estimate + 24.0 / pi4 * b.err_estimate)};
}

// (2x / (pi sqrt 3)) sum_k A_k (x/3)^(2k), A_k = sum_j C(k,j)^2 C(2j,j).
// Summed directly (compensated); needs about 40 / (1 - x^2) terms.
DensityValue p3_series(double x, double tol) {
  const double z = x * x;
  double bprev = 0.0, b = 1.0;  // b_k = A_k / 9^k
  double zk = 1.0, sum = 0.0, comp = 0.0, term = 1.0;
  long k = 0;
  for (; k < 200000000L; ++k) {
    term = b * zk;
    double t = sum + term;
    comp += (std::abs(sum) >= std::abs(term)) ? (sum - t) + term : (term - t) + sum;
    sum = t;
    if (term < 1e-17 * sum) break;
    double kk = static_cast<double>(k);
    double bnext = ((10.0 * kk * kk + 10.0 * kk + 3.0) * b - kk * kk * bprev) / (9.0 * (kk + 1.0) * (kk + 1.0));
    bprev = b;
    b = bnext;
    zk *= z;
  }
  sum += comp;
  const double pref = 2.0 * x / (pi * std::sqrt(3.0));
  double err = (1e-16 * std::sqrt(static_cast<double>(k) + 1.0) + 1e-17) * sum + term * z / (1.0 - z);
  if (err > tol * sum)
    throw AccuracyError("p3 series: truncation bound above tolerance", pref * sum, pref * err);
  return {pref * sum, pref * err};
}

DensityValue series_unchecked(int j, double x, double tol) {
  if (x == 0.0) return {0.0, 0.0};
  const auto& tab = series_table(j);
  const double z = x * x;
  double v = 0.0, e = 0.0;
  for (const auto& part : tab.parts) {
    std::vector<double> terms(part.size());
    double zk = x;
    for (std::size_t k = 0; k < part.size(); ++k) {
      terms[k] = part[k] * zk;
      zk *= z;
    }
    double plain = 0.0;
    for (double t : terms) plain += t;
    if (std::abs(terms.back()) <= 1e-17 * std::abs(plain)) {
      v += plain;
      e += 1e-16 * std::abs(plain);
      continue;
    }
    quad::SeriesLimit lim = quad::levin_u(terms);
    v += lim.value;
    e += lim.err_estimate;
  }
  if (e > tol * std::max(std::abs(v), 1e-300))
    throw AccuracyError("series route: truncation bound above tolerance", v, e);
  return {v, e};
}

void require_odd_small(int n, double x, const char* route) {
  if (n < 3 || n % 2 == 0)
    throw DomainError(std::string(route) + " route requires odd n >= 3");
  if (x < 0.0 || x > 1.0) throw DomainError(std::string(route) + " route requires 0 <= x <= 1");
  if (n == 3 && x >= 1.0) throw DomainError(std::string(route) + " route requires x < 1 for n = 3");
}

}  // namespace

std::string route_name(Route r) {
  switch (r) {
    case Route::direct: return "direct";
    case Route::closed_form: return "closed_form";
    case Route::feynman: return "feynman";
    case Route::series: return "series";
    case Route::rayleigh: return "rayleigh";
  }
  return "?";
}

Route parse_route(const std::string& s) {
  for (Route r : {Route::direct, Route::closed_form, Route::feynman, Route::series, Route::rayleigh})
    if (route_name(r) == s) return r;
  throw DomainError("unknown route '" + s + "'");
}

DensityValue density(int n, double x, Route route, double tol) {
  check_n(n);
  if (!std::isfinite(x) || x < 0.0 || x > n)
    throw DomainError("density: x must lie in [0, n]");
  switch (route) {
    case Route::direct:
      if (n < 3) throw DomainError("direct route requires n >= 3; use closed_form for n = 2");
      if (n == 3 && std::abs(x - 1.0) < 1e-6)
        throw PoleError("direct route refuses |x - 1| < 1e-6 for n = 3 (logarithmic singularity)");
      if (x > 0.0 && x < min_direct_x)
        throw DomainError("direct route needs x >= 1e-6; use the series or feynman route");
      return direct_unchecked(n, x);
    case Route::closed_form:
      if (n == 2) {
        if (x >= 2.0) throw PoleError("p2 closed form is singular at x = 2 and vanishes beyond");
        return {2.0 / (pi * std::sqrt(4.0 - x * x)), 0.0};
      }
      if (n == 3) {
        if (std::abs(x - 1.0) < 1e-6) throw PoleError("p3 closed form: x too close to the singularity at 1");
        if (x > 1.0) throw DomainError("p3 closed form (power series) holds for 0 <= x < 1");
        if (x == 0.0) return {0.0, 0.0};
        return p3_series(x, tol);
      }
      if (n == 4) {
        if (!(x > 0.0 && x < 2.0)) throw DomainError("p4 closed form holds for 0 < x < 2");
        return p4_moment_form(x, std::min(tol, 1e-13));
      }
      throw DomainError("closed_form route requires n in {2, 3, 4}");
    case Route::feynman:
      require_odd_small(n, x, "feynman");
      return feynman_unchecked((n - 1) / 2, x, std::min(tol, 1e-13));
    case Route::series:
      require_odd_small(n, x, "series");
      return series_unchecked((n - 1) / 2, x, tol);
    case Route::rayleigh:
      return {rayleigh_approx(n, x), 0.0};
  }
  throw DomainError("density: unknown route");
}

double slope_at_zero(int n) {
  check_n(n);
  if (n < 5) throw DomainError("slope_at_zero: p_n'(0+) is finite only for n >= 5");
  static std::array<std::once_flag, max_steps + 1> once;
  static std::array<double, max_steps + 1> cache{};
  std::call_once(once[n], [n] {
    quad::BesselProductSpec s{{{quad::BesselKind::J0, 1.0, n}}, 1.0};
    cache[n] = quad::bessel_product_integrate(s, 1e-13).value;
  });
  return cache[n];
}

double density_auto(int n, double x) {
  check_n(n);
  if (x <= 0.0 || x >= n) return 0.0;
  if (n == 1) return 0.0;
  if (n == 2) return 2.0 / (pi * std::sqrt(4.0 - x * x));
  if (n % 2 == 1 && (x < 1.0 || (n > 3 && x == 1.0))) return feynman_unchecked((n - 1) / 2, x, 1e-13).value;
  if (n == 4 && x < 2.0) return p4_moment_form(x, 1e-13).value;
  if (n % 2 == 0 && x < small_x_linear) return slope_at_zero(n) * x;
  if (x < min_direct_x) return 0.0;
  return direct_unchecked(n, x).value;
}

double p4_identity_residual(double x, double tol) {
  if (!(x > 0.0 && x < 2.0)) throw DomainError("p4 identity holds for 0 < x < 2");
  return std::abs(density(4, x, Route::direct, tol).value - p4_moment_form(x, 1e-13).value);
}

double maclaurin_continuation(int j, double x) {
  if (j < 1) throw DomainError("maclaurin_continuation: j must be >= 1");
  if (x < 0.0) throw DomainError("maclaurin_continuation: x must be >= 0");
  return feynman_unchecked(j, x, 1e-13).value;
}

const moments::MaclaurinTable& maclaurin_coefficients(int j) {
  if (j < 1 || 2 * j + 1 > max_steps) throw DomainError("maclaurin_coefficients: j out of range");
  return series_table(j);
}

double rayleigh_approx(int n, double x) {
  if (n < 1) throw DomainError("rayleigh_approx: n must be >= 1");
  return 2.0 * x / n * std::exp(-x * x / n);
}

}  // namespace kluyver::walks
