#include <doctest.h>

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "kluyver/errors.hpp"
#include "kluyver/moments.hpp"
#include "kluyver/walks.hpp"

namespace mo = kluyver::moments;
using mo::Outer;

namespace {

constexpr double pi = std::numbers::pi;

// (pi / 3 sqrt 3) (2^k k! / 3^k)^2 sum_j C(k,j)^2 C(2j,j)
double s3(int k) {
  double sum = 0.0, binom = 1.0;
  for (int j = 0; j <= k; ++j) {
    double c2j = std::tgamma(2.0 * j + 1) / std::pow(std::tgamma(j + 1.0), 2);
    sum += binom * binom * c2j;
    binom = binom * (k - j) / (j + 1.0);
  }
  double f = std::pow(2.0, k) * std::tgamma(k + 1.0) / std::pow(3.0, k);
  return pi / (3.0 * std::sqrt(3.0)) * f * f * sum;
}

}  // namespace

TEST_CASE("sunrise moment and the gamma product") {
  auto g = mo::gamma_product_constants();
  double ref = boost::math::tgamma(1.0 / 15) * boost::math::tgamma(2.0 / 15) *
               boost::math::tgamma(4.0 / 15) * boost::math::tgamma(8.0 / 15) / (240.0 * std::sqrt(5.0));
  CHECK(g.sunrise == doctest::Approx(ref).epsilon(1e-13));
  double m = mo::bessel_moment({0.0, 1, 4, 1}).value;
  CHECK(std::abs(m / ref - 1.0) < 1e-10);
  CHECK(std::abs(g.r50 - 0.3299338011) < 1e-10);
  CHECK(std::abs(std::tgamma(0.5) - std::sqrt(pi)) < 1e-14);
  auto t = mo::maclaurin_table(2, 0);
  CHECK(std::abs(g.c - t.r[0] * pi * pi / 30.0) < 1e-10);
}

TEST_CASE("three-Bessel moments against the closed form") {
  CHECK(std::abs(mo::bessel_moment({0.0, 1, 2, 1}).value - pi / (3.0 * std::sqrt(3.0))) < 1e-10);
  CHECK(std::abs(s3(1) - pi / (3.0 * std::sqrt(3.0)) * (4.0 / 9.0) * 3.0) < 1e-14);
  for (int k = 0; k <= 6; ++k)
    CHECK(mo::bessel_moment({0.0, 1, 2, 2 * k + 1}).value == doctest::Approx(s3(k)).epsilon(1e-11));
}

TEST_CASE("five-step Maclaurin coefficients") {
  auto t = mo::maclaurin_table(2, 20);
  CHECK(std::abs(t.r[0] - 0.3299338011) < 1e-9);
  CHECK(std::abs(t.r[1] - 0.006616730259) < 1e-10);
  CHECK(std::abs(t.r[2] - 0.0002623323540) < 1e-11);
  // Independent route: r50 = int J0^5 t dt by oscillatory quadrature.
  CHECK(std::abs(kluyver::walks::slope_at_zero(5) - t.r[0]) < 1e-9);
  for (int k = 0; k <= 20; ++k) {
    CHECK(t.r[k] > 0.0);
    double s = 0.0;
    for (const auto& p : t.parts) s += p[k];
    CHECK(s == t.r[k]);
  }
  for (int k = 3; k < 20; ++k) CHECK(t.r[k + 1] / t.r[k] < 1.0 / 9.0 + 0.05);
  CHECK(t.signs_constant);
  CHECK(t.parts.size() == t.q.size());
}

TEST_CASE("seven-step coefficients change sign") {
  auto t = mo::maclaurin_table(3, 4);
  CHECK(t.r[0] > 0.0);
  CHECK(t.r[1] < 0.0);
  CHECK(t.signs_constant);
  // r70 = p6(1).
  CHECK(std::abs(t.r[0] - kluyver::walks::density(6, 1.0, kluyver::walks::Route::direct).value) < 1e-8);
}

TEST_CASE("Borwein and Fettis checks") {
  for (const auto& r : mo::borwein_checks(1e-9)) {
    INFO(r.tag << " residual " << r.residual);
    CHECK(r.pass);
  }
}

TEST_CASE("p8'(0+) = p7(1) by two routes") {
  // Route 1: Maclaurin series of p7 summed at x = 1. The coefficients decay
  // algebraically there, so the series route accelerates each signed part.
  double series = kluyver::walks::density(7, 1.0, kluyver::walks::Route::series, 1e-8).value;
  // Route 2: the two-moment Wick form.
  double wick = 35.0 * (4.0 / std::pow(pi, 6) * mo::bessel_moment({0.0, 2, 6, 1}).value -
                        2.0 / std::pow(pi, 4) * mo::bessel_moment({0.0, 4, 4, 1}).value);
  CHECK(std::abs(series - wick) < 1e-8);
  CHECK(std::abs(kluyver::walks::slope_at_zero(8) - wick) < 1e-8);
}

TEST_CASE("convergence conditions") {
  using kluyver::DivergenceError;
  using kluyver::DomainError;
  auto message = [](const mo::MomentSpec& s) {
    try {
      mo::validate(s);
    } catch (const DivergenceError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message({2.0, 1, 2, 1, Outer::I0}).find("x + a < b") != std::string::npos);
  CHECK(message({0.0, 2, 1, 1}).find("a < b") != std::string::npos);
  CHECK(message({0.0, 2, 2, 1}).find("power") != std::string::npos);
  CHECK_NOTHROW(mo::validate({1.0, 1, 4, 1, Outer::I0}));
  CHECK_NOTHROW(mo::validate({0.0, 2, 2, 0}));
  CHECK_THROWS_AS(mo::validate({0.0, 0, 1, 1, Outer::K0}), DomainError);
  CHECK_THROWS_AS(mo::validate({0.0, -1, 1, 1}), DomainError);
  CHECK_THROWS_AS(mo::maclaurin_table(0), DomainError);
  // Boundary x = 1 is inside the region for p5(1).
  CHECK(mo::bessel_moment({1.0, 1, 4, 1, Outer::I0}).value > 0.0);
}

TEST_CASE("scaled moments stay finite") {
  double v = mo::normalised_moment(1, 4, 40);
  CHECK(std::isfinite(v));
  CHECK(v > 0.0);
  double direct = mo::bessel_moment({0.0, 1, 4, 11}).value / (std::pow(4.0, 5) * std::pow(120.0, 2));
  CHECK(mo::normalised_moment(1, 4, 5) == doctest::Approx(direct).epsilon(1e-12));
}
