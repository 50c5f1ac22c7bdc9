#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kluyver/moments.hpp"

namespace kluyver::lseries {

// Coefficients c_0..c_{N-1} of prod_{n>=1} (1 - q^(m n)); the eta factor
// eta(m z) is q^(m/24) times this series.
std::vector<std::int64_t> eta_expansion(int m, int N);

struct EtaFactor {
  int m = 1;  // eta(m z)
  int e = 1;  // exponent, may be negative
};

struct EtaProduct {
  std::vector<EtaFactor> factors;
  int weight2() const;    // sum of exponents = twice the weight
  int q_offset24() const;  // sum of m * e, the leading power times 24
};

struct CuspForm {
  std::string name;
  int weight = 0;
  int level = 0;
  std::vector<EtaProduct> terms;
  std::vector<std::int64_t> a;  // a[n] for n = 0..N, a[0] = 0
  int N() const { return static_cast<int>(a.size()) - 1; }
};

// Expands a sum of eta products to O(q^(N+1)) in exact integers. Throws
// DomainError for a non-integral q power or inconsistent weights and
// StructuralError if a_1 != 1.
CuspForm make_form(std::string name, int level, std::vector<EtaProduct> terms, int N = 400);

// The three forms "f3_15", "f4_6", "f6_6"; cached at N = 400.
const CuspForm& named_form(const std::string& name);

// f(iy) from the q-expansion; y must be at least 0.5 / sqrt(level).
double eval(const CuspForm& f, double y);

struct FrickeCheck {
  int eps = 0;
  double residual = 0.0;  // max |f(i/(l y)) - eps (sqrt(l) y)^w f(iy)| over the probes
  std::vector<double> probes;
};

// Sign taken at y = 1.1/sqrt(l), confirmed at four more points in
// [0.8, 1.2]/sqrt(l). Throws StructuralError if the residual exceeds 1e-8.
FrickeCheck fricke_sign(const CuspForm& f);

struct LValue {
  double value = 0.0;
  double err = 0.0;
  int eps = 0;
  int N_used = 0;
};

// L(f, s) for integer 1 <= s <= w - 1, from the integral over y split at
// split / sqrt(l), the lower part folded through the Fricke relation.
LValue l_value(const CuspForm& f, int s, double tol = 1e-12, double split = 1.0);

// Slope and moment identities tied to critical L-values; left sides from the
// walk and moment modules. Includes one row per form for the modularity test.
std::vector<moments::Residual> theorem41_report(double tol = 1e-7);

}  // namespace kluyver::lseries
