#include "kluyver/lseries.hpp"

#include <gmpxx.h>

#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

#include "kluyver/errors.hpp"
#include "kluyver/specfun.hpp"
#include "kluyver/walks.hpp"

namespace kluyver::lseries {

namespace {

constexpr double pi = std::numbers::pi;

using Series = std::vector<mpz_class>;

Series mul(const Series& a, const Series& b, std::size_t len) {
  Series c(len, 0);
  for (std::size_t i = 0; i < a.size() && i < len; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < len; ++j)
      if (b[j] != 0) c[i + j] += a[i] * b[j];
  }
  return c;
}

// 1/a for a[0] = 1.
Series inverse(const Series& a, std::size_t len) {
  Series c(len, 0);
  c[0] = 1;
  for (std::size_t n = 1; n < len; ++n) {
    mpz_class s = 0;
    for (std::size_t k = 1; k <= n && k < a.size(); ++k) s += a[k] * c[n - k];
    c[n] = -s;
  }
  return c;
}

Series power(Series base, int e, std::size_t len) {
  Series r(len, 0);
  r[0] = 1;
  while (e > 0) {
    if (e & 1) r = mul(r, base, len);
    e >>= 1;
    if (e) base = mul(base, base, len);
  }
  return r;
}

Series eta_series(int m, std::size_t len) {
  Series s(len, 0);
  auto v = eta_expansion(m, static_cast<int>(len));
  for (std::size_t i = 0; i < len; ++i) s[i] = static_cast<long>(v[i]);
  return s;
}

}  // namespace

std::vector<std::int64_t> eta_expansion(int m, int N) {
  if (m < 1 || N < 1) throw DomainError("eta_expansion: need m >= 1 and N >= 1");
  std::vector<std::int64_t> c(N, 0);
  // Pentagonal numbers k(3k -+ 1)/2 with sign (-1)^k.
  c[0] = 1;
  for (long k = 1;; ++k) {
    const long p1 = m * (k * (3 * k - 1) / 2), p2 = m * (k * (3 * k + 1) / 2);
    if (p1 >= N) break;
    const int sign = (k % 2) ? -1 : 1;
    c[p1] += sign;
    if (p2 < N) c[p2] += sign;
  }
  return c;
}

int EtaProduct::weight2() const {
  int s = 0;
  for (const auto& f : factors) s += f.e;
  return s;
}

int EtaProduct::q_offset24() const {
  int s = 0;
  for (const auto& f : factors) s += f.m * f.e;
  return s;
}

CuspForm make_form(std::string name, int level, std::vector<EtaProduct> terms, int N) {
  if (terms.empty() || N < 2 || level < 1) throw DomainError("make_form: empty form or bad N/level");
  CuspForm f;
  f.name = std::move(name);
  f.level = level;
  const int w2 = terms.front().weight2();
  if (w2 <= 0 || w2 % 2) throw DomainError("make_form: weight must be a positive integer");
  f.weight = w2 / 2;
  Series total(N + 1, 0);
  for (const auto& t : terms) {
    if (t.weight2() != w2) throw DomainError("make_form: summands of different weight");
    const int off24 = t.q_offset24();
    if (off24 % 24 != 0 || off24 <= 0) throw DomainError("make_form: q power of an eta product is not a positive integer");
    const int d = off24 / 24;
    if (d > N) continue;
    const std::size_t len = N + 1 - d;
    Series prod(len, 0);
    prod[0] = 1;
    for (const auto& fac : t.factors) {
      if (fac.e == 0) continue;
      Series base = eta_series(fac.m, len);
      if (fac.e < 0) base = inverse(base, len);
      prod = mul(prod, power(base, std::abs(fac.e), len), len);
    }
    for (std::size_t i = 0; i < len; ++i) total[i + d] += prod[i];
  }
  f.terms = std::move(terms);
  f.a.resize(N + 1);
  for (int n = 0; n <= N; ++n) {
    if (!total[n].fits_slong_p()) throw OverflowError("make_form: coefficient exceeds 64 bits");
    f.a[n] = total[n].get_si();
  }
  if (f.a[1] != 1) throw StructuralError("make_form: leading coefficient a_1 = " + std::to_string(f.a[1]) + ", expected 1");
  return f;
}

const CuspForm& named_form(const std::string& name) {
  static std::once_flag once;
  static std::map<std::string, CuspForm> forms;
  std::call_once(once, [] {
    forms["f3_15"] = make_form("f3_15", 15, {{{{3, 3}, {5, 3}}}, {{{1, 3}, {15, 3}}}});
    forms["f4_6"] = make_form("f4_6", 6, {{{{1, 2}, {2, 2}, {3, 2}, {6, 2}}}});
    forms["f6_6"] = make_form("f6_6", 6, {{{{2, 9}, {3, 9}, {1, -3}, {6, -3}}}, {{{1, 9}, {6, 9}, {2, -3}, {3, -3}}}});
  });
  auto it = forms.find(name);
  if (it == forms.end()) throw DomainError("unknown form '" + name + "' (expected f3_15, f4_6 or f6_6)");
  return it->second;
}

double eval(const CuspForm& f, double y) {
  if (!(y >= 0.5 / std::sqrt(static_cast<double>(f.level))))
    throw DomainError("eval: y below 0.5/sqrt(level); use the Fricke relation");
  const double q = std::exp(-2.0 * pi * y);
  // Horner from the top.
  double s = 0.0;
  for (int n = f.N(); n >= 1; --n) s = s * q + static_cast<double>(f.a[n]);
  return s * q;
}

FrickeCheck fricke_sign(const CuspForm& f) {
  const double rl = std::sqrt(static_cast<double>(f.level));
  auto sides = [&](double y, double& lhs, double& rhs) {
    lhs = eval(f, 1.0 / (f.level * y));
    rhs = std::pow(rl * y, f.weight) * eval(f, y);
  };
  FrickeCheck out;
  double lhs, rhs;
  sides(1.1 / rl, lhs, rhs);
  out.eps = (lhs / rhs > 0.0) ? 1 : -1;
  out.probes = {0.8 / rl, 0.9 / rl, 1.0 / rl, 1.1 / rl, 1.2 / rl};
  for (double y : out.probes) {
    sides(y, lhs, rhs);
    out.residual = std::max(out.residual, std::abs(lhs - out.eps * rhs));
  }
  if (out.residual > 1e-8)
    throw StructuralError("fricke_sign: " + f.name + " is not a Fricke eigenform to 1e-8 (residual " +
                          std::to_string(out.residual) + ")");
  return out;
}

LValue l_value(const CuspForm& f, int s, double tol, double split) {
  if (s < 1 || s > f.weight - 1)
    throw DomainError("l_value: s must satisfy 1 <= s <= weight - 1 for " + f.name);
  if (!(split > 0.6 && split < 1.6)) throw DomainError("l_value: split factor must lie in (0.6, 1.6)");
  const FrickeCheck fr = fricke_sign(f);
  const double ell = f.level;
  const double y0 = split / std::sqrt(ell);
  const double u0 = 1.0 / (ell * y0);
  const int w = f.weight, s2 = w - s;
  // int_{y0}^inf f(iy) y^(s-1) dy and the folded lower part.
  double upper = 0.0, lower = 0.0, mag = 0.0;
  for (int n = 1; n <= f.N(); ++n) {
    if (f.a[n] == 0) continue;
    const double tn = 2.0 * pi * n, an = static_cast<double>(f.a[n]);
    double tu = an * specfun::upper_gamma_int(s, tn * y0) / std::pow(tn, s);
    double tl = an * specfun::upper_gamma_int(s2, tn * u0) / std::pow(tn, s2);
    upper += tu;
    lower += tl;
    mag += std::abs(tu) + std::abs(tl);
  }
  const double fold = fr.eps * std::pow(ell, 0.5 * w - s);
  const double lam = upper + fold * lower;
  // Tail beyond N with |a_n| <= n^w: each term below n^w e^(-2 pi n ymin) times
  // a polynomial factor in 2 pi n ymin.
  const double ymin = std::min(y0, u0), N = f.N();
  const double decay = 2.0 * pi * ymin;
  double tail = std::pow(N + 1, w) * std::exp(-decay * (N + 1)) * std::pow(decay * (N + 1), w) /
                (1.0 - std::exp(-decay)) * (1.0 + std::abs(fold));
  const double pref = std::pow(2.0 * pi, s) / std::tgamma(s);
  LValue out;
  out.value = pref * lam;
  out.err = pref * (tail + 8.0 * std::numeric_limits<double>::epsilon() * mag * (1.0 + std::abs(fold)));
  out.eps = fr.eps;
  out.N_used = f.N();
  if (out.err > tol * std::max(std::abs(out.value), 1e-300))
    throw AccuracyError("l_value: truncation bound above tolerance for " + f.name, out.value, out.err);
  return out;
}

std::vector<moments::Residual> theorem41_report(double tol) {
  std::vector<moments::Residual> rows;
  auto add = [&](std::string tag, double lhs, double rhs, double t) {
    moments::Residual r;
    r.tag = std::move(tag);
    r.lhs = lhs;
    r.rhs = rhs;
    r.residual = lhs - rhs;
    r.tol = t;
    r.pass = std::abs(r.residual) < t;
    rows.push_back(r);
  };
  for (const char* name : {"f3_15", "f4_6", "f6_6"}) {
    const auto& f = named_form(name);
    double res;
    try {
      res = fricke_sign(f).residual;
    } catch (const StructuralError&) {
      res = std::numeric_limits<double>::infinity();
    }
    add(std::string("fricke_modularity_") + name, res, 0.0, 1e-10);
  }
  const auto& f315 = named_form("f3_15");
  const auto& f46 = named_form("f4_6");
  const auto& f66 = named_form("f6_6");
  auto L = [](const CuspForm& f, int s) { return l_value(f, s).value; };
  const double pi2 = pi * pi, pi3 = pi2 * pi, pi4 = pi2 * pi2, pi6 = pi4 * pi2;

  const double p5s = walks::slope_at_zero(5);
  add("p5_slope_vs_L_f3_15_1", p5s, 6.0 / pi2 * L(f315, 1), tol);
  add("p5_slope_vs_L_f3_15_2", p5s, 3.0 * std::sqrt(15.0) / pi3 * L(f315, 2), tol);

  const double p6s = walks::density(5, 1.0, walks::Route::feynman, 1e-12).value;
  add("p6_slope_vs_L_f4_6_1", p6s, 15.0 / pi2 * L(f46, 1), tol);
  add("p6_slope_vs_L_f4_6_3", p6s, 45.0 / pi4 * L(f46, 3), tol);
  const double m24 = moments::bessel_moment({0.0, 2, 4, 1}).value;
  add("moment_I0^2K0^4_vs_L_f4_6_1", 8.0 * m24, 4.0 * pi2 * L(f46, 1), tol);
  add("L_f4_6_1_vs_L_f4_6_3", 4.0 * pi2 * L(f46, 1), 12.0 * L(f46, 3), tol);

  const double p8s = walks::slope_at_zero(8);
  const double m44 = moments::bessel_moment({0.0, 4, 4, 1}).value;
  const double m26 = moments::bessel_moment({0.0, 2, 6, 1}).value;
  add("p8_slope_vs_L_f6_6_1", p8s, 35.0 / (9.0 * pi2) * L(f66, 1), tol);
  add("p8_slope_vs_L_f6_6_3", p8s, 20.0 / pi4 * L(f66, 3), tol);
  add("p8_slope_vs_L_f6_6_5", p8s, 210.0 / pi6 * L(f66, 5), tol);
  add("p8_slope_vs_wick_moments", p8s, 35.0 * (4.0 / pi6 * m26 - 2.0 / pi4 * m44), tol);
  add("L_f6_6_ratio_5_3", L(f66, 5) / L(f66, 3), 2.0 * pi2 / 21.0, tol);
  add("moment_I0^4K0^4_vs_L_f6_6_3", m44, L(f66, 3), tol);
  add("moment_I0^2K0^6_vs_L_f6_6_5", m26, 27.0 / 4.0 * L(f66, 5), tol);
  return rows;
}

}  // namespace kluyver::lseries
