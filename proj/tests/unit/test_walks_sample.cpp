#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "kluyver/errors.hpp"
#include "kluyver/walks.hpp"

namespace wk = kluyver::walks;

namespace {

constexpr std::uint64_t seed = 20170801;

// Interpolated quantile by position (m - 1) p in the sorted sample.
double iqr_oracle(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  auto at = [&](double p) {
    double pos = (v.size() - 1) * p;
    double f = std::floor(pos);
    auto i = static_cast<std::size_t>(f);
    return v[i] * (1.0 - (pos - f)) + v[i + 1] * (pos - f);
  };
  return at(0.75) - at(0.25);
}

}  // namespace

TEST_CASE("one step has unit length") {
  auto s = wk::simulate(1, 1000, seed);
  for (double d : s.distances) CHECK(std::abs(d - 1.0) < 1e-15);
  CHECK(s.seed == seed);
  CHECK_FALSE(s.generator.empty());
  CHECK_THROWS_AS(wk::simulate(3, 0, seed), kluyver::DomainError);
}

TEST_CASE("mean square distance equals n") {
  auto s = wk::simulate(2, 1000000, seed);
  double m2 = 0.0;
  for (double d : s.distances) m2 += d * d;
  CHECK(std::abs(m2 / s.distances.size() - 2.0) < 0.01);
  for (double d : s.distances) {
    CHECK(d >= 0.0);
    CHECK(d <= 2.0);
  }
}

TEST_CASE("deterministic across thread counts") {
  auto a = wk::simulate(5, 50000, seed, 1);
  auto b = wk::simulate(5, 50000, seed, 3);
  auto c = wk::simulate(5, 50000, seed, 8);
  CHECK(a.distances == b.distances);
  CHECK(a.distances == c.distances);
  CHECK(wk::simulate(5, 1000, seed + 1, 1).distances != std::vector<double>(a.distances.begin(), a.distances.begin() + 1000));
}

TEST_CASE("CDF grid against an independent integration") {
  auto cdf = wk::cdf_grid(5);
  CHECK(std::abs(cdf(5.0) - 1.0) < 1e-6);
  // Composite Simpson on direct-route values, step 0.01 on [0, 2].
  const double h = 0.01;
  double s = 0.0;
  for (int i = 0; i <= 200; ++i) {
    double x = i * h;
    double p = x < 1e-6 ? 0.0 : wk::density(5, x, wk::Route::direct).value;
    s += (i == 0 || i == 200 ? 1.0 : (i % 2 ? 4.0 : 2.0)) * p;
  }
  CHECK(std::abs(cdf(2.0) - s * h / 3.0) < 1e-6);
}

TEST_CASE("Kolmogorov-Smirnov distance at 1e5 samples") {
  for (int n = 3; n <= 8; ++n) {
    auto s = wk::simulate(n, 100000, seed);
    double d = wk::ks_distance(s.distances, wk::cdf_grid(n));
    INFO("n = " << n << ", D = " << d);
    CHECK(d < 0.01);
  }
}

TEST_CASE("Freedman-Diaconis bins") {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<double> u(10000);
  for (double& v : u) v = U(rng);
  auto h = wk::histogram_fd(u);
  CHECK_FALSE(h.sturges_fallback);
  CHECK(std::abs(h.width - 2.0 * iqr_oracle(u) * std::pow(1e4, -1.0 / 3.0)) < 1e-14);
  std::size_t total = 0;
  for (auto c : h.counts) total += c;
  CHECK(total == u.size());

  auto flat = wk::histogram_fd(std::vector<double>(50, 1.0));
  CHECK(flat.sturges_fallback);

  auto s = wk::simulate(5, 100000, seed);
  auto hist = wk::histogram_fd(s.distances);
  double worst = 0.0;
  for (std::size_t b = 0; b < hist.counts.size(); ++b) {
    double centre = hist.lo + (b + 0.5) * hist.width;
    if (centre >= 5.0) continue;
    worst = std::max(worst, std::abs(hist.density[b] - wk::density_auto(5, centre)));
  }
  CHECK(worst < 0.03);
}
