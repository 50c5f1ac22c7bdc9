#include "kluyver/moments.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "kluyver/bessel_product.hpp"
#include "kluyver/errors.hpp"
#include "kluyver/specfun.hpp"
#include "kluyver/wick.hpp"

namespace kluyver::moments {

namespace {

constexpr double pi = std::numbers::pi;

std::string describe(const MomentSpec& s) {
  std::ostringstream os;
  os << "(x=" << s.x << ", a=" << s.a << ", b=" << s.b << ", k=" << s.k << ")";
  return os.str();
}

}  // namespace

void validate(const MomentSpec& s) {
  if (s.a < 0 || s.b < 1) throw DomainError("moment: need a >= 0 and b >= 1 " + describe(s));
  if (s.k < 0) throw DomainError("moment: need k >= 0 " + describe(s));
  if (!(s.x >= 0.0) || !std::isfinite(s.x)) throw DomainError("moment: need finite x >= 0 " + describe(s));
  if (s.outer == Outer::K0 && !(s.x > 0.0))
    throw DomainError("moment: an outer K0(xt) factor requires x > 0 " + describe(s));
  const bool outer_present = s.outer != Outer::None && !(s.outer == Outer::I0 && s.x == 0.0);
  double growth = s.a - s.b;
  if (s.outer == Outer::I0) growth += s.x;
  if (s.outer == Outer::K0) growth -= s.x;
  if (growth > 0.0) {
    const char* cond = (s.outer == Outer::I0) ? "x + a < b" : (s.outer == Outer::K0) ? "a < b + x" : "a < b";
    throw DivergenceError(std::string("moment diverges: ") + cond + " violated " + describe(s));
  }
  if (growth == 0.0) {
    // Pure power decay t^(k - (a + b + outer)/2) must be integrable.
    double power = s.k - 0.5 * (s.a + s.b + (outer_present ? 1 : 0));
    if (!(power < -1.0))
      throw DivergenceError(
          "moment diverges: on the boundary of the exponential condition the power "
          "decay k - (a + b)/2 < -1 is violated " + describe(s));
  }
}

quad::QuadResult bessel_moment_scaled(const MomentSpec& s, double log_scale, double tol) {
  validate(s);
  const bool outer_i = s.outer == Outer::I0 && s.x > 0.0;
  const bool outer_k = s.outer == Outer::K0;
  double growth = s.a - s.b + (outer_i ? s.x : 0.0) - (outer_k ? s.x : 0.0);
  auto f = [&](double t) {
    double v = 1.0;
    if (s.a) v *= std::pow(specfun::i0_scaled(t), s.a);
    v *= std::pow(specfun::k0_scaled(t), s.b);
    if (outer_i) v *= specfun::i0_scaled(s.x * t);
    if (outer_k) v *= specfun::k0_scaled(s.x * t);
    double e = growth * t + s.k * std::log(t) - log_scale;
    return v * std::exp(e);
  };
  quad::QuadResult r = quad::de_integrate(f, tol);
  if (!std::isfinite(r.value)) throw OverflowError("bessel_moment: result overflows; use a log scale");
  return r;
}

quad::QuadResult bessel_moment(const MomentSpec& s, double tol) {
  return bessel_moment_scaled(s, 0.0, tol);
}

double normalised_moment(int a, int b, int k, double tol) {
  double ls = k * std::log(4.0) + 2.0 * std::lgamma(k + 1.0);
  return bessel_moment_scaled({0.0, a, b, 2 * k + 1, Outer::None}, ls, tol).value;
}

MaclaurinTable maclaurin_table(int j, int k_max, double tol) {
  if (j < 1) throw DomainError("maclaurin_table: j must be >= 1");
  if (k_max < 0) throw DomainError("maclaurin_table: k_max must be >= 0");
  MaclaurinTable t;
  t.j = j;
  auto terms = wick::feynman_coefficients(j);
  t.r.assign(k_max + 1, 0.0);
  t.underflow.assign(k_max + 1, false);
  for (const auto& term : terms) {
    const double q = term.q.get_d();
    t.q.push_back(q);
    std::vector<double> part(k_max + 1);
    const double base = term.k0_power * std::log(pi) - std::log(std::abs(q));
    for (int k = 0; k <= k_max; ++k) {
      double ls = base + k * std::log(4.0) + 2.0 * std::lgamma(k + 1.0);
      MomentSpec ms{0.0, term.i0_power, term.k0_power, 2 * k + 1, Outer::None};
      double v = bessel_moment_scaled(ms, ls, tol).value;
      part[k] = (q < 0 ? -v : v);
      if ((part[k] < 0) != (q < 0) || part[k] == 0.0) t.signs_constant = false;
    }
    t.parts.push_back(std::move(part));
  }
  for (int k = 0; k <= k_max; ++k) {
    double sum = 0.0;
    for (const auto& p : t.parts) sum += p[k];
    t.r[k] = sum;
    t.underflow[k] = std::abs(sum) < 1e-300;
  }
  return t;
}

GammaProductConstants gamma_product_constants() {
  GammaProductConstants g;
  g.gamma_product = std::tgamma(1.0 / 15) * std::tgamma(2.0 / 15) * std::tgamma(4.0 / 15) *
                    std::tgamma(8.0 / 15);
  g.sunrise = g.gamma_product / (240.0 * std::sqrt(5.0));
  g.r50 = std::sqrt(5.0) / (40.0 * std::pow(pi, 4)) * g.gamma_product;
  g.c = g.sunrise / (pi * pi);
  return g;
}

std::vector<Residual> borwein_checks(double tol) {
  const double qtol = 1e-14;
  const double pi4 = std::pow(pi, 4);
  std::vector<Residual> out;
  auto add = [&](std::string tag, double lhs, double rhs, double t) {
    double res = lhs - rhs;
    out.push_back({std::move(tag), lhs, rhs, res, t, std::abs(res) <= t});
  };
  MaclaurinTable tab = maclaurin_table(2, 2, qtol);
  const double r0 = tab.r[0], r1 = tab.r[1], r2 = tab.r[2];
  GammaProductConstants g = gamma_product_constants();
  const double c = g.c;

  add("r51_quadratic_relation", r1, 13.0 / 225 * r0 - 2.0 / (5.0 * pi4 * r0), tol);

  quad::BesselProductSpec j1{{{quad::BesselKind::J1, 1.0, 5}}, -2.0};
  double j15 = quad::bessel_product_integrate(j1, qtol).value;
  add("j1_fifth_power_moment", 8.0 * j15, r0 / 6.0 + 105.0 / (16.0 * pi4 * r0), tol);

  add("r50_gamma_product", r0, 30.0 * c / (pi * pi), tol);
  add("r51_gamma_product", r1, 2.0 / (15.0 * pi * pi) * (13.0 * c - 1.0 / (10.0 * c)), tol);
  add("r52_gamma_product", r2, 2.0 / (225.0 * pi * pi) * (43.0 * c - 19.0 / (40.0 * c)), tol);

  // p5(1) from its Feynman form; p5'(0+) = r50.
  double p51 = 30.0 / pi4 * bessel_moment({1.0, 1, 4, 1, Outer::I0}, qtol).value;
  double gap = p51 - r0;
  add("fettis_gap", gap, 0.006894160706, tol);
  Residual bound{"fettis_gap_exceeds_r51", gap, r1, gap - r1, 0.0, gap > r1};
  out.push_back(bound);
  return out;
}

}  // namespace kluyver::moments
