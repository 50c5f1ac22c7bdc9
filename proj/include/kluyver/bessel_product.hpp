#pragma once

#include <complex>
#include <vector>

#include "kluyver/quad.hpp"

namespace kluyver::quad {

enum class BesselKind { J0, J1, Y0 };

struct BesselFactor {
  BesselKind kind = BesselKind::J0;
  double scale = 1.0;  // factor is F(scale * t)
  int power = 1;
};

// Integral over (0, inf) of t^t_power * prod F_i(a_i t)^p_i.
struct BesselProductSpec {
  std::vector<BesselFactor> factors;
  double t_power = 0.0;
};

// Large-t expansion of a product of Bessel factors as a sum of branches
//   exp(i omega t) * t^-p0 * sum_{k=0}^{order} c_k t^-k
// keyed by the integer frequency counts of each factor slot.
class HankelTail {
 public:
  struct Branch {
    std::vector<int> key;
    std::vector<std::complex<double>> c;
  };

  HankelTail(std::vector<double> slot_scales, int order);

  // Expansion of F(scale_slot * t) for one slot.
  static HankelTail factor(BesselKind kind, int slot, std::vector<double> slot_scales, int order);

  HankelTail operator*(const HankelTail& other) const;
  // Same coefficients with different slot scales (frequencies).
  HankelTail with_scales(std::vector<double> slot_scales) const;
  HankelTail pow(int p) const;
  // Multiply by t^q.
  HankelTail& shift(double q);

  double p0() const { return p0_; }
  int order() const { return order_; }
  const std::vector<Branch>& branches() const { return branches_; }
  double omega(const Branch& b) const;

  // Integral of the expansion over (T, inf). Zero-frequency branches are
  // integrated in closed form, the others along the ray on which the
  // exponential decays. err receives a bound on the truncation error.
  std::complex<double> integrate_from(double T, double* err) const;

 private:
  std::vector<double> scales_;
  int order_;
  double p0_ = 0.0;
  std::vector<Branch> branches_;
};

// Quadrature nodes on [0, T] following the zeros of J0, each panel split
// so that omega_max * width stays below a fixed phase budget.
struct PanelGrid {
  std::vector<double> t;
  std::vector<double> w;
  double first_zero = 0.0;  // end of the first panel
};
PanelGrid panel_grid(double T, double omega_max, bool skip_first_panel);

// First zero of J0 not below the given bound.
double j0_zero_at_least(double bound);

QuadResult bessel_product_integrate(const BesselProductSpec& spec, double tol);

}  // namespace kluyver::quad
