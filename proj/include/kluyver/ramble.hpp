#pragma once

#include <complex>
#include <vector>

namespace kluyver::ramble {

using cplx = std::complex<double>;

struct RambleValue {
  cplx value;
  double err = 0.0;
};

// W_n(s) = int_0^n x^s p_n(x) dx for Re s > -1 (n = 2) or Re s > -2 (n >= 3).
RambleValue ramble_direct(int n, cplx s, double tol = 1e-9);

// Continuation of W_{2j+1}(-z) to every z outside {2, 4, 6, ...}:
//   sum_k r_k / (2k + 2 - z) + int_1^{2j+1} x^-z p_{2j+1}(x) dx.
// At a pole throws PoleError carrying the residue -r_k.
RambleValue ramble_continued(int j, cplx z, double tol = 1e-9);

// (2k + 2 - z) W_{2j+1}(-z) as z -> 2k + 2, from the symmetric pair
// z = 2k + 2 +- delta.
double pole_limit(int j, int k, double delta = 1e-4);

// Maclaurin coefficient r_{2j+1,k} as used by the continuation.
double taylor_coefficient(int j, int k);

struct SumRuleResult {
  cplx lhs;                 // W_{2j+2}(nu)
  cplx rhs;                 // accelerated sum over m
  cplx partial;             // plain partial sum up to m_max
  double residual = 0.0;    // |lhs - rhs|
  double tail_estimate = 0.0;
  int m_max = 0;
  bool truncates = false;   // nu a nonnegative even integer
  std::vector<cplx> terms;
};

// Compares W_{2j+2}(nu) with sum_m C(nu/2, m)^2 W_{2j+1}(nu - 2m). Throws
// AccuracyError when the estimated truncation tail exceeds tol.
SumRuleResult sum_rule_check(int j, cplx nu, int m_max = 40, double tol = 1e-5);

}  // namespace kluyver::ramble
