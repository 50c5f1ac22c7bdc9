#include "kluyver/wick.hpp"

#include <sstream>

#include "kluyver/errors.hpp"

namespace kluyver::wick {

namespace {

mpz_class binomial(int n, int k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

void check_j(int j, int j_limit) {
  if (j < 1) throw DomainError("wick: j must be >= 1");
  if (j > j_limit)
    throw DomainError("wick: j = " + std::to_string(j) + " exceeds the configured limit " +
                      std::to_string(j_limit));
}

}  // namespace

RationalPolyJY RationalPolyJY::monomial(int dj, int dy, const mpq_class& c) {
  RationalPolyJY p;
  p.add_term({dj, dy}, c);
  return p;
}

void RationalPolyJY::add_term(const Monomial& m, const mpq_class& c) {
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

RationalPolyJY& RationalPolyJY::operator+=(const RationalPolyJY& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

RationalPolyJY& RationalPolyJY::operator-=(const RationalPolyJY& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

RationalPolyJY& RationalPolyJY::operator*=(const mpq_class& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

RationalPolyJY operator*(const RationalPolyJY& a, const RationalPolyJY& b) {
  RationalPolyJY r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_)
      r.add_term({ma.first + mb.first, ma.second + mb.second}, mpq_class(ca * cb));
  return r;
}

mpq_class RationalPolyJY::coeff(int dj, int dy) const {
  auto it = terms_.find({dj, dy});
  return it == terms_.end() ? mpq_class(0) : it->second;
}

int RationalPolyJY::y_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.second);
  return d;
}

std::string RationalPolyJY::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    mpq_class a = abs(c);
    bool unit = (a == 1) && (m.first + m.second > 0);
    if (!unit) os << a.get_str();
    if (m.first) os << (unit ? "" : "*") << "J" << (m.first > 1 ? "^" + std::to_string(m.first) : "");
    if (m.second) os << ((unit && !m.first) ? "" : "*") << "Y" << (m.second > 1 ? "^" + std::to_string(m.second) : "");
  }
  return os.str();
}

RationalPolyJY hankel_power_sum(int l) {
  if (l < 0) throw DomainError("hankel_power_sum: l must be >= 0");
  RationalPolyJY p;
  for (int r = 0; r <= l; r += 2) {
    mpz_class c = 2 * binomial(l, r);
    if ((r / 2) % 2) c = -c;
    p += RationalPolyJY::monomial(l - r, r, mpq_class(c));
  }
  return p;
}

WickDecomposition wick_decompose(int j, int j_limit) {
  check_j(j, j_limit);
  const int n = j + 1;
  // Row s: coefficient of J^(2j+1-2s) Y^(2s); column k: basis member k.
  std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(n + 1, 0));
  for (int k = 0; k < n; ++k) {
    const int l = 2 * j + 1 - k;
    for (int s = 0; 2 * s <= l && s < n; ++s) {
      mpz_class c = 2 * binomial(l, 2 * s);
      a[s][k] = (s % 2) ? mpz_class(-c) : c;
    }
  }
  a[0][n] = 1;

  // Fraction-free (Bareiss) elimination.
  mpz_class prev = 1;
  for (int p = 0; p < n; ++p) {
    int piv = p;
    while (piv < n && a[piv][p] == 0) ++piv;
    if (piv == n) throw ConsistencyError("wick_decompose: singular system");
    if (piv != p) std::swap(a[piv], a[p]);
    for (int i = p + 1; i < n; ++i) {
      for (int c = p + 1; c <= n; ++c) {
        mpz_class v = a[i][c] * a[p][p] - a[i][p] * a[p][c];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a[i][c] = v;
      }
      a[i][p] = 0;
    }
    prev = a[p][p];
  }
  std::vector<mpq_class> x(n);
  for (int i = n - 1; i >= 0; --i) {
    mpq_class s = a[i][n];
    for (int c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
    x[i].canonicalize();
  }

  WickDecomposition d{j, std::move(x)};
  if (!(wick_reconstruct(d) == RationalPolyJY::monomial(2 * j + 1, 0)))
    throw ConsistencyError("wick_decompose: reconstruction is not exact");
  return d;
}

RationalPolyJY wick_reconstruct(const WickDecomposition& d) {
  RationalPolyJY sum;
  for (int k = 0; k < static_cast<int>(d.lambda.size()); ++k)
    sum += RationalPolyJY::monomial(k, 0) * hankel_power_sum(2 * d.j + 1 - k) * d.lambda[k];
  return sum;
}

std::vector<int> degree_profile(int j) {
  if (j < 1) throw DomainError("degree_profile: j must be >= 1");
  std::vector<int> out;
  for (int k = 0; k <= j; ++k)
    out.push_back((RationalPolyJY::monomial(k, 0) * hankel_power_sum(2 * j + 1 - k)).y_degree());
  return out;
}

std::vector<FeynmanTerm> feynman_coefficients(int j, int j_limit) {
  WickDecomposition d = wick_decompose(j, j_limit);
  std::vector<FeynmanTerm> out;
  for (int m = 0; 2 * m + 1 <= j; ++m) {
    mpz_class four = 1;
    four <<= 2 * (j - m);
    mpq_class q = d.lambda[2 * m + 1] * 2 * four;
    if ((j - m + 1) % 2) q = -q;
    out.push_back({m, q, 2 * m + 1, 2 * (j - m)});
  }
  return out;
}

}  // namespace kluyver::wick
