#pragma once

#include <string>
#include <vector>

#include "kluyver/quad.hpp"

namespace kluyver::moments {

enum class Outer { None, I0, K0 };

// int_0^inf O(x t) I0(t)^a K0(t)^b t^k dt with O the outer factor.
struct MomentSpec {
  double x = 0.0;
  int a = 0;
  int b = 1;
  int k = 1;
  Outer outer = Outer::None;
};

// Throws DivergenceError naming the violated condition, DomainError for
// malformed specs.
void validate(const MomentSpec& spec);

quad::QuadResult bessel_moment(const MomentSpec& spec, double tol = 1e-13);

// The same integral multiplied by exp(-log_scale); lets callers form
// normalised high-order moments without overflow.
quad::QuadResult bessel_moment_scaled(const MomentSpec& spec, double log_scale,
                                      double tol = 1e-13);

// Taylor coefficients of the density of a (2j+1)-step walk,
//   p(x) = sum_k r[k] x^(2k+1),
// split into the contributions of each Feynman term m.
struct MaclaurinTable {
  int j = 0;
  std::vector<double> q;                   // Feynman coefficients
  std::vector<double> r;                   // r[k], k = 0..k_max
  std::vector<std::vector<double>> parts;  // parts[m][k]
  std::vector<bool> underflow;             // |r[k]| below 1e-300
  bool signs_constant = true;              // every part keeps the sign of q_m
};

MaclaurinTable maclaurin_table(int j, int k_max = 20, double tol = 1e-13);

// Normalised moment 1/(4^k k!^2) int I0^a K0^b t^(2k+1) dt.
double normalised_moment(int a, int b, int k, double tol = 1e-13);

struct GammaProductConstants {
  double gamma_product = 0.0;  // G(1/15) G(2/15) G(4/15) G(8/15)
  double sunrise = 0.0;        // int I0 K0^4 t dt
  double r50 = 0.0;
  double c = 0.0;              // sunrise / pi^2
};
GammaProductConstants gamma_product_constants();

struct Residual {
  std::string tag;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;  // lhs - rhs
  double tol = 0.0;
  bool pass = false;
};

// Identities tying the five-step coefficients to the gamma product.
std::vector<Residual> borwein_checks(double tol = 1e-9);

}  // namespace kluyver::moments
