#include "kluyver/ramble.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "kluyver/errors.hpp"
#include "kluyver/quad.hpp"
#include "kluyver/walks.hpp"

namespace kluyver::ramble {

namespace {

constexpr double pi = std::numbers::pi;
constexpr long p3_terms = 1000000;

void check_j(int j) {
  if (j < 1 || 2 * j + 1 > 15) throw DomainError("ramble: j must be in [1, 7]");
}

// Normalised three-step coefficients b_k = A_k / 9^k, r_{3,k} = b_k 2/(pi sqrt 3).
template <class F>
void p3_coefficients(long count, F&& visit) {
  double bprev = 0.0, b = 1.0;
  for (long k = 0; k < count; ++k) {
    visit(k, b);
    double kk = static_cast<double>(k);
    double bnext = ((10.0 * kk * kk + 10.0 * kk + 3.0) * b - kk * kk * bprev) / (9.0 * (kk + 1.0) * (kk + 1.0));
    bprev = b;
    b = bnext;
  }
}

const double p3_pref = 2.0 / (pi * std::sqrt(3.0));

// sum_k r_k / (2k + 2 - z) and an error estimate.
RambleValue partial_fractions(int j, cplx z) {
  RambleValue out;
  if (j == 1) {
    // r_k ~ c/k: sum to K directly, then the tail c sum_{k>K} 1/(k (2k + 2 - z))
    // to leading order in 1/K.
    cplx s = 0.0, comp = 0.0;
    double last = 0.0;
    p3_coefficients(p3_terms, [&](long k, double b) {
      cplx t = p3_pref * b / (2.0 * k + 2.0 - z);
      cplx y = t - comp;
      cplx u = s + y;
      comp = (u - s) - y;
      s = u;
      last = p3_pref * b;
    });
    const double K = p3_terms - 1;
    const double c = last * K;
    cplx tail = c / (2.0 * K + 1.0) * (1.0 + (z - 1.0) / (2.0 * K));
    out.value = s + tail;
    out.err = std::abs(c) * (1.0 + std::abs(z)) / (K * K) + 1e-15 * std::abs(s);
    return out;
  }
  const auto& tab = walks::maclaurin_coefficients(j);
  const std::size_t K = tab.r.size();
  for (std::size_t k = 0; k < K; ++k) out.value += tab.r[k] / (2.0 * k + 2.0 - z);
  // Geometric decay at ratio about 1/9; bound the remainder by the last term.
  const double dmin = std::max(1.0, std::abs(2.0 * K + 2.0 - z) - 2.0);
  out.err = 2.0 * std::abs(tab.r[K - 1]) / dmin + 1e-15 * std::abs(out.value);
  return out;
}

}  // namespace

double taylor_coefficient(int j, int k) {
  check_j(j);
  if (k < 0) throw DomainError("taylor_coefficient: k must be >= 0");
  if (j == 1) {
    double r = 0.0;
    p3_coefficients(k + 1, [&](long kk, double b) {
      if (kk == k) r = p3_pref * b;
    });
    return r;
  }
  const auto& tab = walks::maclaurin_coefficients(j);
  if (static_cast<std::size_t>(k) >= tab.r.size()) throw DomainError("taylor_coefficient: k beyond the cached table");
  return tab.r[k];
}

RambleValue ramble_direct(int n, cplx s, double tol) {
  if (n < 1 || n > 16) throw DomainError("ramble_direct: n must be in [1, 16]");
  if (n == 1) return {1.0, 0.0};
  const double floor_re = (n == 2) ? -1.0 : -2.0;
  if (!(s.real() > floor_re))
    throw DomainError("ramble_direct: need Re s > " + std::to_string(static_cast<int>(floor_re)) + " for n = " +
                      std::to_string(n));
  if (n == 2 && s.imag() == 0.0) {
    // Central binomial form Gamma(s + 1) / Gamma(s/2 + 1)^2.
    const double x = s.real();
    double v = std::exp(std::lgamma(x + 1.0) - 2.0 * std::lgamma(0.5 * x + 1.0));
    return {v, 4.0 * std::numeric_limits<double>::epsilon() * v};
  }
  const auto& t = walks::density_table(n);
  cplx fine = 0.0, coarse = 0.0;
  double xmin = t.x.front(), pmin = t.p.front();
  for (std::size_t i = 0; i < t.x.size(); ++i) {
    cplx v = std::pow(t.x[i], s) * t.p[i];
    fine += t.w[i] * v;
    coarse += t.w_half[i] * v;
    if (t.x[i] < xmin) {
      xmin = t.x[i];
      pmin = t.p[i];
    }
  }
  // The coarse rule error is roughly the square of the fine one (relative),
  // plus the mass below the smallest node.
  const double diff = std::abs(fine - coarse);
  const double scale = std::max(1.0, std::abs(fine));
  const double beta = (n == 2) ? 1.0 : 2.0;
  double below = pmin * std::pow(xmin, s.real() + 1.0) / (s.real() + beta);
  // Floors: the table densities carry about 1e-13, except the square-root
  // endpoint of p_2 and the small-x linear regime of even n >= 6.
  const double floor = (n == 2) ? 1e-8 : (n % 2 == 0 && n >= 6) ? 1e-10 : 1e-13;
  RambleValue out{fine, std::min(diff, diff * diff / scale + floor * scale) + below};
  if (out.err > tol * scale)
    throw AccuracyError("ramble_direct: error estimate above tolerance", fine.real(), out.err);
  return out;
}

RambleValue ramble_continued(int j, cplx z, double tol) {
  check_j(j);
  const double k_real = 0.5 * z.real() - 1.0;
  const double k_near = std::round(k_real);
  if (k_near >= 0.0 && std::abs(z - cplx(2.0 * k_near + 2.0, 0.0)) < 1e-12 * (2.0 * k_near + 2.0)) {
    const int k = static_cast<int>(k_near);
    throw PoleError("ramble_continued: z = " + std::to_string(2 * k + 2) + " is a pole", -taylor_coefficient(j, k));
  }
  RambleValue out = partial_fractions(j, z);
  const auto& t = walks::density_table(2 * j + 1);
  cplx tail = 0.0, tail_half = 0.0;
  for (std::size_t i = 0; i < t.x.size(); ++i) {
    if (t.x[i] <= 1.0) continue;
    cplx v = std::pow(t.x[i], -z) * t.p[i];
    tail += t.w[i] * v;
    tail_half += t.w_half[i] * v;
  }
  out.value += tail;
  const double d = std::abs(tail - tail_half);
  const double scale = std::max(1.0, std::abs(out.value));
  out.err += std::min(d, d * d / std::max(1.0, std::abs(tail)) + 1e-13 * std::max(1.0, std::abs(tail)));
  if (out.err > tol * scale)
    throw AccuracyError("ramble_continued: error estimate above tolerance", out.value.real(), out.err);
  return out;
}

double pole_limit(int j, int k, double delta) {
  check_j(j);
  if (k < 0 || !(delta > 0.0)) throw DomainError("pole_limit: need k >= 0 and delta > 0");
  const double z0 = 2.0 * k + 2.0;
  cplx above = ramble_continued(j, z0 + delta, 1e-6).value * (-delta);
  cplx below = ramble_continued(j, z0 - delta, 1e-6).value * delta;
  return 0.5 * (above + below).real();
}

SumRuleResult sum_rule_check(int j, cplx nu, int m_max, double tol) {
  check_j(j);
  if (m_max < 10) throw DomainError("sum_rule_check: m_max must be >= 10");
  {
    const double h = 0.5 * nu.real();
    if (nu.imag() == 0.0 && h < 0.0 && h == std::round(h))
      throw DomainError("sum_rule_check: nu must not be a negative even integer");
  }
  SumRuleResult out;
  out.m_max = m_max;
  out.lhs = ramble_direct(2 * j + 2, nu, 1e-8).value;

  const cplx half = 0.5 * nu;
  cplx binom = 1.0;
  out.truncates = nu.imag() == 0.0 && nu.real() >= 0.0 && half.real() == std::round(half.real());
  std::vector<double> re, im;
  for (int m = 0; m <= m_max; ++m) {
    if (m > 0) binom *= (half - static_cast<double>(m - 1)) / static_cast<double>(m);
    cplx term = 0.0;
    if (binom != 0.0) {
      const cplx arg = nu - 2.0 * m;
      cplx w = arg.real() > 0.0 ? ramble_direct(2 * j + 1, arg, 1e-8).value
                                : ramble_continued(j, -arg, 1e-8).value;
      term = binom * binom * w;
    }
    out.terms.push_back(term);
    out.partial += term;
    re.push_back(term.real());
    im.push_back(term.imag());
  }
  if (out.truncates) {
    out.rhs = out.partial;
    out.tail_estimate = 0.0;
  } else {
    // Terms decay like a power of m; the Levin transform supplies the tail.
    auto lr = quad::levin_u(re);
    auto li = quad::levin_u(im);
    out.rhs = cplx(lr.value, li.value);
    out.tail_estimate = std::abs(out.rhs - out.partial);
    const double acc_err = std::hypot(lr.err_estimate, li.err_estimate);
    if (acc_err > tol)
      throw AccuracyError("sum_rule_check: accelerated tail uncertain beyond tolerance", out.rhs.real(), acc_err);
  }
  out.residual = std::abs(out.lhs - out.rhs);
  return out;
}

}  // namespace kluyver::ramble
