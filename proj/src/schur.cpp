#include "nssigma/schur.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

#include "nssigma/linalg.hpp"

namespace nssigma {

PowerSumPoly power_sum_variable(int k) {
  if (k < 1) throw std::invalid_argument("power sums start at T_1");
  return PowerSumPoly::variable(static_cast<std::size_t>(k - 1));
}

std::vector<int> power_sum_weights(std::size_t count) {
  std::vector<int> w(count);
  for (std::size_t k = 0; k < count; ++k) w[k] = static_cast<int>(k + 1);
  return w;
}

std::vector<PowerSumPoly> p_polynomials(int max_n) {
  if (max_n < 0) throw std::invalid_argument("max_n must be nonnegative");
  std::vector<PowerSumPoly> p{PowerSumPoly(Rational(1))};
  for (int n = 1; n <= max_n; ++n) {
    PowerSumPoly acc;
    for (int k = 1; k <= n; ++k) acc += power_sum_variable(k).scaled(Rational(k)) * p[n - k];
    p.push_back(acc.scaled(make_rational(1, n)));
  }
  return p;
}

PowerSumPoly schur_S(const Partition& lambda) {
  const auto& parts = lambda.parts();
  const int l = static_cast<int>(parts.size());
  auto p = p_polynomials(lambda[0] + l);
  std::vector<std::vector<PowerSumPoly>> m(l, std::vector<PowerSumPoly>(l));
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) {
      int idx = parts[i] - i + j;
      if (idx >= 0) m[i][j] = p[idx];
    }
  return laplace_determinant(m, PowerSumPoly(Rational(1)));
}

namespace {

using Exponents = std::vector<int>;

// Sorts distinct entries into strictly decreasing order; returns the sign of
// the sorting permutation, or 0 if two entries coincide.
int sort_decreasing(Exponents& e) {
  int inversions = 0;
  for (std::size_t a = 0; a < e.size(); ++a)
    for (std::size_t b = a + 1; b < e.size(); ++b) {
      if (e[a] == e[b]) return 0;
      inversions += e[a] < e[b];
    }
  std::sort(e.begin(), e.end(), std::greater<>());
  return inversions % 2 ? -1 : 1;
}

Monomial to_monomial(const Exponents& e) {
  Monomial m;
  for (std::size_t i = 0; i < e.size(); ++i) m.set(i, e[i]);
  return m;
}

// Calls f on every distinct rearrangement of mu.
template <class F>
void for_each_rearrangement(Exponents mu, F&& f) {
  std::sort(mu.begin(), mu.end());
  do f(mu);
  while (std::next_permutation(mu.begin(), mu.end()));
}

}  // namespace

// The alternant and the Vandermonde are both antisymmetric, so the division
// runs on orbit representatives: an antisymmetric polynomial is stored by its
// coefficients on strictly decreasing exponent vectors, and the quotient is
// built in the monomial symmetric basis, using a_delta * m_mu = sum over
// rearrangements beta of mu of a_(beta + delta).
SymPoly schur_s(const Partition& lambda, int l) {
  if (l < lambda.length()) throw std::invalid_argument("schur_s needs at least length(lambda) variables");
  if (l == 0) return SymPoly(Rational(1));
  // det(t_j^(lambda_i + l-1-i)) by the Leibniz sum; every entry is a monomial
  Exponents perm(l);
  for (int k = 0; k < l; ++k) perm[k] = k;
  std::vector<SymPoly::Term> terms;
  do {
    Exponents e(l);
    for (int r = 0; r < l; ++r) e[perm[r]] = lambda[r] + l - 1 - r;
    int inversions = 0;
    for (int a = 0; a < l; ++a)
      for (int b = a + 1; b < l; ++b) inversions += perm[a] > perm[b];
    terms.emplace_back(to_monomial(e), Rational(inversions % 2 ? -1 : 1));
  } while (std::next_permutation(perm.begin(), perm.end()));
  SymPoly alternant = SymPoly::from_terms(std::move(terms));

  std::map<Exponents, Rational, std::greater<>> remainder;
  for (const auto& [mono, c] : alternant.terms()) {
    Exponents e(l);
    for (int i = 0; i < l; ++i) e[i] = mono[i];
    Exponents sorted = e;
    int sign = sort_decreasing(sorted);
    if (sign == 0) throw std::domain_error("alternant is not antisymmetric");
    if (sign > 0) remainder[sorted] = c;
  }
  for (const auto& [mono, c] : alternant.terms()) {
    Exponents e(l);
    for (int i = 0; i < l; ++i) e[i] = mono[i];
    int sign = sort_decreasing(e);
    auto it = remainder.find(e);
    if (it == remainder.end() || it->second != (sign > 0 ? c : Rational(-c)))
      throw std::domain_error("alternant is not antisymmetric");
  }

  std::vector<SymPoly::Term> quotient;
  while (!remainder.empty()) {
    auto [gamma, c] = *remainder.begin();
    Exponents mu(l);
    for (int i = 0; i < l; ++i) mu[i] = gamma[i] - (l - 1 - i);
    if (mu.back() < 0) throw std::domain_error("inexact division by the Vandermonde");
    for_each_rearrangement(mu, [&](const Exponents& beta) {
      quotient.emplace_back(to_monomial(beta), c);
      Exponents shifted(l);
      for (int i = 0; i < l; ++i) shifted[i] = beta[i] + (l - 1 - i);
      int sign = sort_decreasing(shifted);
      if (sign == 0) return;
      auto& slot = remainder[shifted];
      slot -= sign > 0 ? c : Rational(-c);
      if (sgn(slot) == 0) remainder.erase(shifted);
    });
  }
  return SymPoly::from_terms(std::move(quotient));
}

PowerSumPoly negate_vars(const PowerSumPoly& p) {
  std::vector<PowerSumPoly::Term> terms;
  for (const auto& [m, c] : p.terms()) terms.emplace_back(m, m.total_degree() % 2 ? Rational(-c) : c);
  return PowerSumPoly::from_terms(std::move(terms));
}

SymPoly power_sums_in_t(const PowerSumPoly& p, int l) {
  std::size_t top = 0;
  for (const auto& t : p.terms()) top = std::max(top, t.first.span());
  std::vector<SymPoly> images;
  for (std::size_t k = 1; k <= top; ++k) {
    SymPoly s;
    for (int j = 0; j < l; ++j) s += SymPoly::monomial(Monomial::variable(j, static_cast<int>(k)), make_rational(1, k));
    images.push_back(s);
  }
  return p.substitute(images, [](const Rational& c) { return SymPoly(c); }, SymPoly(Rational(1)));
}

std::string format_power_sum(const PowerSumPoly& p, const std::string& stem) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    Rational mag = abs(c);
    out += first ? (sgn(c) < 0 ? "-" : "") : (sgn(c) < 0 ? " - " : " + ");
    first = false;
    std::string mono;
    for (std::size_t v = 0; v < m.span(); ++v) {
      if (m[v] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += stem + std::to_string(v + 1);
      if (m[v] != 1) mono += "^" + std::to_string(m[v]);
    }
    if (mono.empty())
      out += mag.get_str();
    else
      out += (mag == 1 ? "" : mag.get_str() + "*") + mono;
  }
  return out;
}

}  // namespace nssigma
