#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kluyver/moments.hpp"
#include "kluyver/walks.hpp"
#include "kluyver/wick.hpp"

using namespace kluyver::wick;
using P = RationalPolyJY;

namespace {

P J(int k) { return P::monomial(k, 0); }

// sum_i coef_i * J^i * c_{l - i}
P combo(int l, const std::vector<mpq_class>& coef) {
  P s;
  for (std::size_t i = 0; i < coef.size(); ++i) s += J(static_cast<int>(i)) * hankel_power_sum(l - static_cast<int>(i)) * coef[i];
  return s;
}

}  // namespace

TEST_CASE("Hankel power sums") {
  CHECK(hankel_power_sum(2).to_string() == "2*J^2 - 2*Y^2");
  CHECK(hankel_power_sum(3).to_string() == "2*J^3 - 6*J*Y^2");
  CHECK(hankel_power_sum(5).to_string() == "2*J^5 - 20*J^3*Y^2 + 10*J*Y^4");
  // Direct expansion oracle: 2 * sum over even r of C(l, r) J^(l-r) (iY)^r.
  for (int l = 1; l <= 15; ++l) {
    P ref;
    mpz_class binom = 1;
    for (int r = 0; r <= l; ++r) {
      if (r % 2 == 0) ref += P::monomial(l - r, r, mpq_class(2 * binom * ((r / 2) % 2 ? -1 : 1)));
      binom = binom * (l - r) / (r + 1);
    }
    CHECK(hankel_power_sum(l) == ref);
  }
}

TEST_CASE("decompositions agree with the printed identities") {
  // 2J^3/3 = -c3/6 + J c2/2
  CHECK(J(3) * mpq_class(2, 3) == combo(3, {mpq_class(-1, 6), mpq_class(1, 2)}));
  // -8J^5/15 = -c5/10 + J c4/2 - 2J^2 c3/3
  CHECK(J(5) * mpq_class(-8, 15) == combo(5, {mpq_class(-1, 10), mpq_class(1, 2), mpq_class(-2, 3)}));
  // 16J^7/35 = -c7/14 + J c6/2 - 6J^2 c5/5 + J^3 c4
  CHECK(J(7) * mpq_class(16, 35) == combo(7, {mpq_class(-1, 14), mpq_class(1, 2), mpq_class(-6, 5), mpq_class(1)}));

  auto d1 = wick_decompose(1);
  CHECK(d1.lambda == std::vector<mpq_class>{mpq_class(-1, 4), mpq_class(3, 4)});
  auto d2 = wick_decompose(2);
  CHECK(d2.lambda == std::vector<mpq_class>{mpq_class(3, 16), mpq_class(-15, 16), mpq_class(5, 4)});
  auto d3 = wick_decompose(3);
  CHECK(d3.lambda == std::vector<mpq_class>{mpq_class(-5, 32), mpq_class(35, 32), mpq_class(-21, 8), mpq_class(35, 16)});
}

TEST_CASE("exact reconstruction up to j = 12") {
  for (int j = 1; j <= 12; ++j) {
    auto d = wick_decompose(j);
    CHECK(d.lambda.size() == static_cast<std::size_t>(j + 1));
    CHECK((wick_reconstruct(d) - J(2 * j + 1)).is_zero());
  }
  CHECK_THROWS(wick_decompose(13));
  CHECK_NOTHROW(wick_decompose(13, 13));
}

TEST_CASE("Feynman coefficient sets") {
  auto nonzero = [](int j) {
    std::vector<mpq_class> v;
    for (const auto& t : feynman_coefficients(j))
      if (t.q != 0) v.push_back(t.q);
    return v;
  };
  CHECK(nonzero(1) == std::vector<mpq_class>{6});
  CHECK(nonzero(2) == std::vector<mpq_class>{30});
  CHECK(nonzero(3) == std::vector<mpq_class>{140, -70});
  CHECK(nonzero(4) == std::vector<mpq_class>{630, -840});
  for (const auto& t : feynman_coefficients(4)) {
    CHECK(t.i0_power == 2 * t.m + 1);
    CHECK(t.k0_power == 2 * (4 - t.m));
  }
}

TEST_CASE("degree profile") {
  CHECK(degree_profile(2)[0] == 4);
  CHECK(degree_profile(2)[1] == 4);
  CHECK(degree_profile(3)[3] == 4);
  for (int j = 1; j <= 6; ++j) {
    auto prof = degree_profile(j);
    for (int k = 0; k <= j; ++k) {
      CHECK(prof[k] == (k % 2 == 0 ? 2 * j - k : 2 * j + 1 - k));
      CHECK((J(k) * hankel_power_sum(2 * j + 1 - k)).y_degree() == prof[k]);
    }
  }
}

TEST_CASE("Feynman form equals the oscillatory integral") {
  constexpr double pi = std::numbers::pi;
  for (int j = 1; j <= 3; ++j)
    for (double x : {0.0, 0.25, 0.5, 0.9}) {
      double s = 0.0;
      for (const auto& t : feynman_coefficients(j)) {
        if (t.q == 0) continue;
        auto m = kluyver::moments::bessel_moment({x, t.i0_power, t.k0_power, 1, kluyver::moments::Outer::I0});
        s += t.q.get_d() * m.value / std::pow(pi, t.k0_power) * x;
      }
      double direct = x == 0.0 ? 0.0 : kluyver::walks::density(2 * j + 1, x, kluyver::walks::Route::direct).value;
      CHECK(std::abs(s - direct) < 1e-7);
    }
}
