#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace kluyver::wick {

// Polynomial in two commuting symbols J and Y with rational coefficients.
class RationalPolyJY {
 public:
  using Monomial = std::pair<int, int>;  // (degree in J, degree in Y)

  RationalPolyJY() = default;
  static RationalPolyJY monomial(int dj, int dy, const mpq_class& c = 1);

  RationalPolyJY& operator+=(const RationalPolyJY& o);
  RationalPolyJY& operator-=(const RationalPolyJY& o);
  RationalPolyJY& operator*=(const mpq_class& s);
  friend RationalPolyJY operator+(RationalPolyJY a, const RationalPolyJY& b) { return a += b; }
  friend RationalPolyJY operator-(RationalPolyJY a, const RationalPolyJY& b) { return a -= b; }
  friend RationalPolyJY operator*(RationalPolyJY a, const mpq_class& s) { return a *= s; }
  friend RationalPolyJY operator*(const RationalPolyJY& a, const RationalPolyJY& b);
  bool operator==(const RationalPolyJY& o) const { return terms_ == o.terms_; }

  bool is_zero() const { return terms_.empty(); }
  mpq_class coeff(int dj, int dy) const;
  int y_degree() const;  // -1 for the zero polynomial
  const std::map<Monomial, mpq_class>& terms() const { return terms_; }
  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const mpq_class& c);
  std::map<Monomial, mpq_class> terms_;
};

// c_l = (J + iY)^l + (J - iY)^l, real by construction.
RationalPolyJY hankel_power_sum(int l);

// J^(2j+1) = sum_{k=0}^{j} lambda[k] * J^k * c_{2j+1-k}.
struct WickDecomposition {
  int j = 0;
  std::vector<mpq_class> lambda;
};

inline constexpr int default_j_limit = 12;

WickDecomposition wick_decompose(int j, int j_limit = default_j_limit);
RationalPolyJY wick_reconstruct(const WickDecomposition& d);

// Y-degree of each basis member J^k c_{2j+1-k}, k = 0..j.
std::vector<int> degree_profile(int j);

// Coefficient q_m of x * int I0(xt) I0^(2m+1) (K0/pi)^(2(j-m)) t dt in the
// density of a (2j+1)-step walk.
struct FeynmanTerm {
  int m = 0;
  mpq_class q;
  int i0_power = 0;  // 2m + 1
  int k0_power = 0;  // 2(j - m)
};
std::vector<FeynmanTerm> feynman_coefficients(int j, int j_limit = default_j_limit);

}  // namespace kluyver::wick
