#include "kluyver/bessel_product.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "kluyver/errors.hpp"
#include "kluyver/specfun.hpp"

namespace kluyver::quad {

namespace {

using cplx = std::complex<double>;
constexpr double pi = std::numbers::pi;
constexpr double phase_budget = 8.0;  // max omega * width per Gauss panel
constexpr int tail_order = 20;
constexpr double tail_cut = 20.0;     // min scale * T

double factor_value(BesselKind kind, double x) {
  switch (kind) {
    case BesselKind::J0: return specfun::j0(x);
    case BesselKind::J1: return specfun::j1(x);
    case BesselKind::Y0: return specfun::y0(x);
  }
  return 0.0;
}

}  // namespace

HankelTail::HankelTail(std::vector<double> slot_scales, int order)
    : scales_(std::move(slot_scales)), order_(order) {}

HankelTail HankelTail::factor(BesselKind kind, int slot, std::vector<double> slot_scales,
                              int order) {
  HankelTail h(std::move(slot_scales), order);
  const double a = h.scales_.at(slot);
  const int nu = (kind == BesselKind::J1) ? 1 : 0;
  const double phi = (0.5 * nu + 0.25) * pi;
  const double amp = std::sqrt(2.0 / (pi * a));
  h.p0_ = 0.5;
  for (int sigma : {1, -1}) {
    cplx cs = (kind == BesselKind::Y0) ? cplx(0.0, -0.5 * sigma) : cplx(0.5, 0.0);
    cplx base = cs * std::polar(amp, -sigma * phi);
    Branch b;
    b.key.assign(h.scales_.size(), 0);
    b.key[slot] = sigma;
    b.c.resize(order + 1);
    double ak = 1.0;
    cplx ipow(1.0, 0.0);
    const cplx si(0.0, static_cast<double>(sigma));
    for (int k = 0; k <= order; ++k) {
      if (k > 0) {
        ak *= (4.0 * nu * nu - (2.0 * k - 1) * (2.0 * k - 1)) / (8.0 * k * a);
        ipow *= si;
      }
      b.c[k] = base * ipow * ak;
    }
    h.branches_.push_back(std::move(b));
  }
  return h;
}

HankelTail HankelTail::operator*(const HankelTail& o) const {
  if (scales_ != o.scales_ || order_ != o.order_)
    throw ConsistencyError("HankelTail: incompatible operands");
  std::map<std::vector<int>, std::vector<cplx>> acc;
  for (const Branch& x : branches_) {
    for (const Branch& y : o.branches_) {
      std::vector<int> key(x.key.size());
      for (std::size_t i = 0; i < key.size(); ++i) key[i] = x.key[i] + y.key[i];
      auto& c = acc[key];
      if (c.empty()) c.assign(order_ + 1, cplx{});
      for (int i = 0; i <= order_; ++i) {
        if (x.c[i] == cplx{}) continue;
        for (int j = 0; i + j <= order_; ++j) c[i + j] += x.c[i] * y.c[j];
      }
    }
  }
  HankelTail out(scales_, order_);
  out.p0_ = p0_ + o.p0_;
  for (auto& [k, c] : acc) out.branches_.push_back({k, std::move(c)});
  return out;
}

HankelTail HankelTail::with_scales(std::vector<double> slot_scales) const {
  if (slot_scales.size() != scales_.size()) throw ConsistencyError("HankelTail: slot count mismatch");
  HankelTail out = *this;
  out.scales_ = std::move(slot_scales);
  return out;
}

HankelTail HankelTail::pow(int p) const {
  if (p < 1) throw DomainError("HankelTail::pow: exponent must be >= 1");
  HankelTail r = *this;
  for (int i = 1; i < p; ++i) r = r * *this;
  return r;
}

HankelTail& HankelTail::shift(double q) {
  p0_ -= q;
  return *this;
}

double HankelTail::omega(const Branch& b) const {
  double w = 0.0;
  for (std::size_t i = 0; i < b.key.size(); ++i) w += b.key[i] * scales_[i];
  return w;
}

cplx HankelTail::integrate_from(double T, double* err) const {
  cplx total{};
  double bound = 0.0;
  for (const Branch& b : branches_) {
    const double w = omega(b);
    if (w == 0.0) {
      for (int k = 0; k <= order_; ++k) {
        double p = p0_ + k;
        if (b.c[k] == cplx{}) continue;
        if (!(p > 1.0)) throw DivergenceError("integral diverges: non-oscillating tail decays too slowly");
        total += b.c[k] * std::pow(T, 1.0 - p) / (p - 1.0);
      }
      bound += std::abs(b.c[order_]) * std::pow(T, 1.0 - p0_ - order_) / (p0_ + order_ - 1.0);
      continue;
    }
    if (!(p0_ > 0.0)) throw DivergenceError("integral diverges: oscillating tail does not decay");
    const double theta = (w > 0) ? 1.0 : -1.0;
    const double r = 1.0 / std::abs(w);
    auto g = [&](double u) -> cplx {
      cplx z(T, theta * r * u);
      cplx zi = 1.0 / z;
      cplx zp = std::exp(-p0_ * std::log(z));
      cplx s{};
      for (int k = 0; k <= order_; ++k) {
        s += b.c[k] * zp;
        zp *= zi;
      }
      return std::exp(-u) * s;
    };
    ComplexQuadResult q = de_integrate_complex(g, 1e-14);
    total += cplx(0.0, theta * r) * std::polar(1.0, std::fmod(w * T, 2.0 * pi)) * q.value;
    const double pk = p0_ + order_;
    bound += std::abs(b.c[order_]) * std::pow(T, -pk) * std::min(r, T / (pk - 1.0)) +
             q.err_estimate * r;
  }
  if (err) *err = bound;
  return total;
}

double j0_zero_at_least(double bound) {
  int k = std::max(1, static_cast<int>(std::floor(bound / pi + 0.25)));
  while (k > 1 && specfun::j0_zero(k - 1) >= bound) --k;
  while (specfun::j0_zero(k) < bound) ++k;
  return specfun::j0_zero(k);
}

PanelGrid panel_grid(double T, double omega_max, bool skip_first_panel) {
  const GaussRule& g = gauss_legendre(15);
  PanelGrid grid;
  double lo = 0.0;
  for (int k = 1;; ++k) {
    double hi = specfun::j0_zero(k);
    if (k == 1) grid.first_zero = hi;
    if (hi > T * (1.0 + 1e-15)) break;
    if (!(k == 1 && skip_first_panel)) {
      int m = std::max(1, static_cast<int>(std::ceil(omega_max * (hi - lo) / phase_budget)));
      double width = (hi - lo) / m;
      for (int s = 0; s < m; ++s) {
        double c = lo + (s + 0.5) * width;
        for (int i = 0; i < 15; ++i) {
          grid.t.push_back(c + 0.5 * width * g.x[i]);
          grid.w.push_back(0.5 * width * g.w[i]);
        }
      }
    }
    lo = hi;
  }
  return grid;
}

QuadResult bessel_product_integrate(const BesselProductSpec& spec, double tol) {
  if (spec.factors.empty()) throw DomainError("bessel_product_integrate: no factors");
  std::vector<double> scales;
  double omega_max = 0.0, min_scale = 1e300;
  bool has_y = false;
  for (const BesselFactor& f : spec.factors) {
    if (!(f.scale > 0.0)) throw DomainError("bessel_product_integrate: scales must be positive");
    if (f.power < 1) throw DomainError("bessel_product_integrate: powers must be >= 1");
    scales.push_back(f.scale);
    omega_max += f.scale * f.power;
    min_scale = std::min(min_scale, f.scale);
    has_y = has_y || f.kind == BesselKind::Y0;
  }
  const double T = j0_zero_at_least(std::max(tail_cut, tail_cut / min_scale));

  auto integrand = [&](double t) {
    double v = std::pow(t, spec.t_power);
    for (const BesselFactor& f : spec.factors) {
      double b = factor_value(f.kind, f.scale * t);
      for (int p = 0; p < f.power; ++p) v *= b;
    }
    return v;
  };

  const bool singular_start = has_y || spec.t_power < 0.0;
  PanelGrid grid = panel_grid(T, omega_max, singular_start);
  double finite = 0.0, l1 = 0.0;
  std::size_t nev = grid.t.size();
  for (std::size_t i = 0; i < grid.t.size(); ++i) {
    double v = grid.w[i] * integrand(grid.t[i]);
    finite += v;
    l1 += std::abs(v);
  }
  if (singular_start) {
    QuadResult r = tanh_sinh(integrand, 0.0, grid.first_zero, 1e-15);
    finite += r.value;
    l1 += std::abs(r.value);
    nev += r.n_evals;
  }

  HankelTail tail(scales, tail_order);
  for (std::size_t i = 0; i < spec.factors.size(); ++i) {
    HankelTail f = HankelTail::factor(spec.factors[i].kind, static_cast<int>(i), scales, tail_order)
                       .pow(spec.factors[i].power);
    tail = (i == 0) ? f : tail * f;
  }
  tail.shift(spec.t_power);
  double terr = 0.0;
  cplx tv = tail.integrate_from(T, &terr);
  double value = finite + tv.real();
  double err = terr + std::abs(tv.imag()) + 1e-16 * l1 * std::sqrt(static_cast<double>(nev));
  if (err > tol * std::max(std::abs(value), 1e-300) && err > tol * l1)
    throw AccuracyError("bessel_product_integrate: tolerance not reached", value, err);
  return {value, err, nev};
}

}  // namespace kluyver::quad
