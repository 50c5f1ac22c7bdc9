#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <numbers>
#include <random>
#include <thread>

#include "kluyver/errors.hpp"
#include "kluyver/quad.hpp"
#include "kluyver/walks.hpp"

namespace kluyver::walks {

namespace {

constexpr double pi = std::numbers::pi;
constexpr std::size_t chunk = 4096;

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

int thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("KLUYVER_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

WalkSample simulate(int n, std::size_t samples, std::uint64_t seed, int threads) {
  if (n < 1) throw DomainError("simulate: n must be >= 1");
  if (samples < 1) throw DomainError("simulate: samples must be >= 1");
  WalkSample out;
  out.n = n;
  out.seed = seed;
  out.generator = "mt19937_64, per-chunk seeds from splitmix64, chunk 4096";
  out.distances.resize(samples);
  const std::size_t nchunks = (samples + chunk - 1) / chunk;
  auto run = [&](std::size_t c) {
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(c)));
    std::size_t lo = c * chunk, hi = std::min(samples, lo + chunk);
    for (std::size_t i = lo; i < hi; ++i) {
      double sx = 0.0, sy = 0.0;
      for (int s = 0; s < n; ++s) {
        double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        double th = 2.0 * pi * u;
        sx += std::cos(th);
        sy += std::sin(th);
      }
      out.distances[i] = (n == 1) ? 1.0 : std::min<double>(n, std::hypot(sx, sy));
    }
  };
  int nt = std::min<int>(thread_count(threads), static_cast<int>(nchunks));
  if (nt <= 1) {
    for (std::size_t c = 0; c < nchunks; ++c) run(c);
    return out;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < nt; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t c = w; c < nchunks; c += nt) run(c);
    });
  for (auto& t : pool) t.join();
  return out;
}

double quantile_sorted(const std::vector<double>& s, double p) {
  if (s.empty()) throw DomainError("quantile: empty sample");
  double h = (s.size() - 1) * p;
  std::size_t lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= s.size()) return s.back();
  return s[lo] + (h - lo) * (s[lo + 1] - s[lo]);
}

Histogram histogram_fd(const std::vector<double>& data) {
  if (data.empty()) throw DomainError("histogram_fd: empty sample");
  std::vector<double> s = data;
  std::sort(s.begin(), s.end());
  const double m = static_cast<double>(s.size());
  Histogram h;
  h.iqr = quantile_sorted(s, 0.75) - quantile_sorted(s, 0.25);
  h.lo = s.front();
  const double range = s.back() - s.front();
  std::size_t bins;
  if (h.iqr > 0.0) {
    h.width = 2.0 * h.iqr * std::pow(m, -1.0 / 3.0);
    bins = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(range / h.width)));
  } else {
    h.sturges_fallback = true;
    bins = static_cast<std::size_t>(std::ceil(std::log2(m))) + 1;
    h.width = range > 0.0 ? range / bins : 1.0;
    if (range == 0.0) bins = 1;
  }
  h.counts.assign(bins, 0);
  for (double v : s) {
    std::size_t b = static_cast<std::size_t>((v - h.lo) / h.width);
    h.counts[std::min(b, bins - 1)]++;
  }
  h.density.resize(bins);
  for (std::size_t b = 0; b < bins; ++b) h.density[b] = h.counts[b] / (m * h.width);
  return h;
}

double CdfGrid::operator()(double x) const {
  if (x <= 0.0) return 0.0;
  double u = x / h;
  std::size_t i = static_cast<std::size_t>(u);
  if (i + 1 >= F.size()) return F.back();
  return F[i] + (u - i) * (F[i + 1] - F[i]);
}

CdfGrid cdf_grid(int n, double h) {
  if (!(h > 0.0)) throw DomainError("cdf_grid: step must be positive");
  CdfGrid g;
  g.n = n;
  g.h = h;
  const std::size_t cells = static_cast<std::size_t>(std::ceil(n / h - 1e-9));
  const quad::GaussRule& gl = quad::gauss_legendre(4);
  g.F.assign(cells + 1, 0.0);
  double acc = 0.0;
  for (std::size_t i = 0; i < cells; ++i) {
    double a = i * h, b = std::min<double>(n, a + h);
    double c = 0.5 * (a + b), r = 0.5 * (b - a), cell = 0.0;
    for (int q = 0; q < 4; ++q) cell += gl.w[q] * r * density_auto(n, c + r * gl.x[q]);
    acc += cell;
    g.F[i + 1] = acc;
  }
  return g;
}

double ks_distance(std::vector<double> data, const CdfGrid& cdf) {
  if (data.empty()) throw DomainError("ks_distance: empty sample");
  std::sort(data.begin(), data.end());
  const double m = static_cast<double>(data.size());
  double d = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    double f = cdf(data[i]);
    d = std::max({d, std::abs(f - i / m), std::abs((i + 1) / m - f)});
  }
  return d;
}

namespace {

// tanh-sinh nodes at step 1/16 on [a, b]; w_half holds the weights of the
// embedded step-1/8 rule.
void add_interval(DensityTable& t, double a, double b) {
  constexpr double h = 1.0 / 16.0;
  constexpr int kmax = 64;  // |u| <= 4
  const double c = 0.5 * (a + b), d = 0.5 * (b - a);
  for (int k = -kmax; k <= kmax; ++k) {
    double u = k * h;
    double v = 0.5 * pi * std::sinh(std::abs(u));
    double e = std::exp(-2.0 * v);
    double delta = 2.0 * e / (1.0 + e);
    double w = d * 0.5 * pi * std::cosh(u) * 4.0 * e / ((1.0 + e) * (1.0 + e));
    double x = (k == 0) ? c : (k > 0 ? b - d * delta : a + d * delta);
    if (!(x > a && x < b) || w < 1e-300) continue;
    t.x.push_back(x);
    t.w.push_back(h * w);
    t.w_half.push_back(k % 2 == 0 ? 2.0 * h * w : 0.0);
  }
}

}  // namespace

const DensityTable& density_table(int n) {
  if (n < 2 || n > 16) throw DomainError("density_table: n must be in [2, 16]");
  static std::array<std::once_flag, 17> once;
  static std::array<DensityTable, 17> tables;
  std::call_once(once[n], [n] {
    DensityTable& t = tables[n];
    t.n = n;
    add_interval(t, 0.0, 0.5);
    add_interval(t, 0.5, 1.0);
    for (int i = 1; i < n; ++i) add_interval(t, i, i + 1.0);
    t.p.resize(t.x.size());
    for (std::size_t i = 0; i < t.x.size(); ++i) t.p[i] = density_auto(n, t.x[i]);
  });
  return tables[n];
}

}  // namespace kluyver::walks
