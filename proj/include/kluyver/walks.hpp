#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kluyver/moments.hpp"

namespace kluyver::walks {

enum class Route { direct, closed_form, feynman, series, rayleigh };

std::string route_name(Route r);
Route parse_route(const std::string& s);  // throws DomainError

struct DensityValue {
  double value = 0.0;
  double err = 0.0;
};

// Radial density of an n-step planar walk with unit steps, by the given
// route. See README for the domain of each route.
DensityValue density(int n, double x, Route route, double tol = 1e-10);

// Density by the cheapest accurate route for (n, x); used for tables,
// normalisation and plots. Never refuses points near singularities.
double density_auto(int n, double x);

// Right derivative at 0 for n >= 5: int J0(t)^n t dt.
double slope_at_zero(int n);

// |direct p4(x) - Bessel moment form|, 0 < x < 2.
double p4_identity_residual(double x, double tol = 1e-10);

// Sum of the Maclaurin series of a (2j+1)-step density as given by its
// Feynman integral; finite on [0, 2j - 1) for j = 1, 2 and [0, 3) beyond.
double maclaurin_continuation(int j, double x);

// Cached Taylor coefficients of p_{2j+1} (k_max = 80), shared with the
// series route.
const moments::MaclaurinTable& maclaurin_coefficients(int j);

double rayleigh_approx(int n, double x);

struct WalkSample {
  int n = 0;
  std::uint64_t seed = 0;
  std::string generator;
  std::vector<double> distances;
};

// Deterministic for a given seed regardless of the thread count.
// threads <= 0 picks KLUYVER_THREADS or the hardware concurrency.
WalkSample simulate(int n, std::size_t samples, std::uint64_t seed, int threads = 0);

struct Histogram {
  double lo = 0.0;
  double width = 0.0;
  double iqr = 0.0;
  std::vector<std::size_t> counts;
  std::vector<double> density;  // counts / (samples * width)
  bool sturges_fallback = false;
};
Histogram histogram_fd(const std::vector<double>& data);

// Type-7 sample quantile of sorted data.
double quantile_sorted(const std::vector<double>& sorted, double p);

// CDF of p_n tabulated on a uniform grid of step h over [0, n].
struct CdfGrid {
  int n = 0;
  double h = 0.0;
  std::vector<double> F;  // F[i] = CDF(i * h)
  double operator()(double x) const;
};
CdfGrid cdf_grid(int n, double h = 0.01);

double ks_distance(std::vector<double> data, const CdfGrid& cdf);

// Quadrature table for moments of p_n: x_i, w_i and p_n(x_i) on the unit
// subintervals of [0, n] ([0, 1] is split at 1/2).
struct DensityTable {
  int n = 0;
  std::vector<double> x;
  std::vector<double> w;
  std::vector<double> p;
  std::vector<double> w_half;  // weights of the coarser embedded rule (0 off-grid)
};
const DensityTable& density_table(int n);

}  // namespace kluyver::walks
