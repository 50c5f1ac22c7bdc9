#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kluyver/errors.hpp"
#include "kluyver/moments.hpp"
#include "kluyver/quad.hpp"
#include "kluyver/ramble.hpp"
#include "kluyver/walks.hpp"

namespace rb = kluyver::ramble;
using rb::cplx;

TEST_CASE("normalisation and second moment") {
  for (int n = 3; n <= 8; ++n) {
    INFO("n = " << n);
    CHECK(std::abs(rb::ramble_direct(n, 0.0).value - 1.0) < 1e-7);
    CHECK(std::abs(rb::ramble_direct(n, 2.0).value - static_cast<double>(n)) < 1e-6);
  }
  // W2(s) = C(s, s/2) for real s.
  CHECK(std::abs(rb::ramble_direct(2, 1.0).value.real() - 4.0 / std::numbers::pi) < 1e-12);
  CHECK(std::abs(rb::ramble_direct(1, 3.7).value - 1.0) == 0.0);
}

namespace {

// sum_k r_{5,k} / (2k + 2 - z) over k >= k0, plus int_1^5 x^-z p5(x) dx,
// with p5 from the direct route, split at its kink x = 3.
double w5_partial_fraction(double z, int k0) {
  auto tab = kluyver::moments::maclaurin_table(2, 40);
  double s = 0.0;
  for (int k = k0; k <= 40; ++k) s += tab.r[k] / (2 * k + 2 - z);
  auto g = [z](double x) {
    return std::pow(x, -z) * kluyver::walks::density(5, x, kluyver::walks::Route::direct, 1e-12).value;
  };
  s += kluyver::quad::tanh_sinh(g, 1.0, 3.0, 1e-10).value;
  s += kluyver::quad::tanh_sinh(g, 3.0, 5.0, 1e-10).value;
  return s;
}

}  // namespace

TEST_CASE("W5(1) by the partial-fraction route") {
  double oracle = w5_partial_fraction(-1.0, 0);
  CHECK(std::abs(rb::ramble_direct(5, 1.0).value.real() - oracle) < 1e-7);
  CHECK(std::abs(rb::ramble_continued(2, -1.0).value - rb::ramble_direct(5, 1.0).value) < 1e-7);
}

TEST_CASE("poles and residues") {
  auto r50 = kluyver::moments::maclaurin_table(2, 0).r[0];
  // At z = 2 + d the product value * d equals -r50 + d R(z), R the regular
  // part (about 0.25), so the bare limit is only good to O(d).
  const double d = 1e-3;
  double prod = rb::ramble_continued(2, 2.0 + d).value.real() * d;
  CHECK(std::abs(prod + r50) < 3e-4);
  CHECK(std::abs(prod + r50 - d * w5_partial_fraction(2.0 + d, 1)) < 1e-9);
  try {
    rb::ramble_continued(2, 4.0);
    FAIL("expected a pole");
  } catch (const kluyver::PoleError& e) {
    CHECK(std::abs(e.residue() + rb::taylor_coefficient(2, 1)) < 1e-15);
    CHECK(e.residue().real() < 0.0);
  }
  for (int j = 1; j <= 3; ++j) {
    auto tab = kluyver::moments::maclaurin_table(j, 2);
    for (int k = 0; k <= 2; ++k) {
      INFO("j = " << j << ", k = " << k);
      CHECK(std::abs(rb::pole_limit(j, k) - tab.r[k]) < 1e-5);
    }
  }
}

TEST_CASE("complex arguments") {
  cplx z(1.0, 2.0);
  auto w = rb::ramble_continued(2, z).value;
  auto wc = rb::ramble_continued(2, std::conj(z)).value;
  CHECK(std::isfinite(w.real()));
  CHECK(std::abs(w.imag()) > 0.0);
  CHECK(std::abs(wc - std::conj(w)) < 1e-9);
  // Inside the convergent region the continuation matches the direct moment.
  cplx s(0.5, 1.5);
  CHECK(std::abs(rb::ramble_continued(2, -s).value - rb::ramble_direct(5, s).value) < 1e-7);
}

TEST_CASE("partial fractions converge geometrically for five steps") {
  // r_{5,k} decays like 9^-k; increments of the partial sums at z = 1 + 2i
  // shrink by at least a factor 5 per step from k = 5 on.
  auto tab = kluyver::moments::maclaurin_table(2, 20);
  cplx z(1.0, 2.0);
  for (int k = 5; k < 20; ++k) {
    double a = std::abs(tab.r[k] / (2.0 * k + 2.0 - z)), b = std::abs(tab.r[k + 1] / (2.0 * k + 4.0 - z));
    CHECK(b < a / 5.0);
  }
}

TEST_CASE("sum rule") {
  auto exact = rb::sum_rule_check(1, 2.0);
  CHECK(exact.truncates);
  CHECK(std::abs(exact.lhs - 4.0) < 1e-6);
  CHECK(exact.residual < 1e-6);
  for (double nu : {0.0, 0.5, 1.0, 1.5, 3.0}) {
    INFO("j = 1, nu = " << nu);
    CHECK(rb::sum_rule_check(1, nu).residual < 1e-5);
  }
  for (double nu : {0.5, 1.0}) {
    INFO("j = 2, nu = " << nu);
    CHECK(rb::sum_rule_check(2, nu).residual < 1e-5);
  }
  CHECK_THROWS_AS(rb::sum_rule_check(1, 0.5, 12, 1e-13), kluyver::AccuracyError);
  CHECK_THROWS_AS(rb::sum_rule_check(1, 0.5, 5), kluyver::DomainError);
}

TEST_CASE("domains") {
  using kluyver::DomainError;
  CHECK_THROWS_AS(rb::ramble_direct(5, -2.5), DomainError);
  CHECK_THROWS_AS(rb::ramble_direct(2, -1.0), DomainError);
  CHECK_THROWS_AS(rb::ramble_continued(0, 1.0), DomainError);
  CHECK_THROWS_AS(rb::ramble_direct(0, 1.0), DomainError);
}
