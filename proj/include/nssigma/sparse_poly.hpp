#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "monomial.hpp"
#include "rational.hpp"

namespace nssigma {

template <class C>
class SparsePoly;
template <class C>
bool is_zero(const SparsePoly<C>& p);

// Polynomial with coefficients in C over variables indexed 0..Monomial::kCapacity-1.
// Terms are kept sorted by monomial with no zero coefficients, so equality is
// structural.
template <class C>
class SparsePoly {
 public:
  using Coeff = C;
  using Term = std::pair<Monomial, C>;

  SparsePoly() = default;
  SparsePoly(const C& c) {
    if (!nssigma::is_zero(c)) terms_.emplace_back(Monomial{}, c);
  }

  static SparsePoly variable(std::size_t index, const C& coeff = C(1)) {
    return monomial(Monomial::variable(index), coeff);
  }
  static SparsePoly monomial(const Monomial& m, const C& coeff) {
    SparsePoly p;
    if (!nssigma::is_zero(coeff)) p.terms_.emplace_back(m, coeff);
    return p;
  }
  static SparsePoly from_terms(std::vector<Term> terms) {
    SparsePoly p;
    p.terms_ = std::move(terms);
    p.normalize();
    return p;
  }

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }

  C coefficient(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& k) { return t.first < k; });
    if (it != terms_.end() && it->first == m) return it->second;
    return C();
  }
  C constant_term() const { return coefficient(Monomial{}); }

  SparsePoly operator-() const {
    SparsePoly r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }

  SparsePoly& operator+=(const SparsePoly& o) { return *this = merge(*this, o, false); }
  SparsePoly& operator-=(const SparsePoly& o) { return *this = merge(*this, o, true); }
  SparsePoly& operator*=(const SparsePoly& o) { return *this = *this * o; }

  friend SparsePoly operator+(const SparsePoly& a, const SparsePoly& b) { return merge(a, b, false); }
  friend SparsePoly operator-(const SparsePoly& a, const SparsePoly& b) { return merge(a, b, true); }

  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.is_constant()) return b.scaled(a.terms_[0].second);
    if (b.is_constant()) return a.scaled(b.terms_[0].second);
    std::vector<Term> out;
    out.reserve(a.size() * b.size());
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.emplace_back(ma * mb, ca * cb);
    return from_terms(std::move(out));
  }

  SparsePoly scaled(const C& c) const {
    if (nssigma::is_zero(c)) return {};
    SparsePoly r = *this;
    for (auto& t : r.terms_) t.second *= c;
    r.drop_zeros();
    return r;
  }

  SparsePoly times_monomial(const Monomial& m) const {
    SparsePoly r = *this;
    for (auto& t : r.terms_) t.first *= m;
    return r;
  }

  bool operator==(const SparsePoly& o) const { return terms_ == o.terms_; }

  SparsePoly derivative(std::size_t var) const {
    std::vector<Term> out;
    for (const auto& [m, c] : terms_) {
      int e = m[var];
      if (e == 0) continue;
      Monomial d = m;
      d.set(var, e - 1);
      out.emplace_back(d, c * C(e));
    }
    return from_terms(std::move(out));
  }

  // Weighted degree if all terms share one; nullopt for mixed or zero input.
  std::optional<int> homogeneous_degree(std::span<const int> weights) const {
    if (terms_.empty()) return std::nullopt;
    int d = terms_[0].first.degree(weights);
    for (const auto& t : terms_)
      if (t.first.degree(weights) != d) return std::nullopt;
    return d;
  }

  bool is_homogeneous(std::span<const int> weights, int target) const {
    for (const auto& t : terms_)
      if (t.first.degree(weights) != target) return false;
    return true;
  }

  // Largest exponent of var over all terms (0 for the zero polynomial).
  int max_exponent(std::size_t var) const {
    int e = 0;
    for (const auto& t : terms_) e = std::max(e, t.first[var]);
    return e;
  }

  template <class F>
  auto map_coefficients(F&& f) const {
    using D = std::decay_t<decltype(f(std::declval<const C&>()))>;
    std::vector<typename SparsePoly<D>::Term> out;
    for (const auto& [m, c] : terms_) out.emplace_back(m, f(c));
    return SparsePoly<D>::from_terms(std::move(out));
  }

  // Replaces variable i by images[i] (variables past images.size() are kept
  // only if their exponent is zero). lift embeds a coefficient into the
  // target ring.
  template <class D, class Lift>
  D substitute(const std::vector<D>& images, Lift&& lift, const D& one) const {
    std::vector<std::vector<D>> powers(images.size(), std::vector<D>{one});
    auto power = [&](std::size_t i, int e) -> const D& {
      auto& p = powers[i];
      while (static_cast<int>(p.size()) <= e) p.push_back(p.back() * images[i]);
      return p[e];
    };
    D acc = one - one;
    for (const auto& [m, c] : terms_) {
      if (m.has_negative()) throw std::domain_error("substitution into negative exponent");
      if (m.span() > images.size()) throw std::out_of_range("substitution misses a variable");
      D term = lift(c);
      for (std::size_t i = 0; i < m.span(); ++i)
        if (m[i] > 0) term = term * power(i, m[i]);
      acc = acc + term;
    }
    return acc;
  }

  // Exact division by a nonzero divisor using the leading (largest) monomial.
  // Throws if the division leaves a remainder.
  SparsePoly exact_divide(const SparsePoly& divisor) const {
    if (divisor.is_zero()) throw std::domain_error("division by zero polynomial");
    const auto& [lm, lc] = divisor.terms_.back();
    std::map<Monomial, C> rem;
    for (const auto& t : terms_) rem.emplace(t.first, t.second);
    std::vector<Term> quotient;
    while (!rem.empty()) {
      auto top = std::prev(rem.end());
      if (!lm.divides(top->first)) throw std::domain_error("inexact polynomial division");
      Monomial qm = top->first / lm;
      C qc = top->second / lc;
      quotient.emplace_back(qm, qc);
      for (const auto& [dm, dc] : divisor.terms_) {
        Monomial m = dm * qm;
        auto it = rem.find(m);
        C delta = dc * qc;
        if (it == rem.end()) {
          rem.emplace(m, -delta);
        } else {
          it->second -= delta;
          if (nssigma::is_zero(it->second)) rem.erase(it);
        }
      }
    }
    return from_terms(std::move(quotient));
  }

 private:
  static SparsePoly merge(const SparsePoly& a, const SparsePoly& b, bool subtract) {
    SparsePoly r;
    r.terms_.reserve(a.size() + b.size());
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    while (ia != a.terms_.end() || ib != b.terms_.end()) {
      if (ib == b.terms_.end() || (ia != a.terms_.end() && ia->first < ib->first)) {
        r.terms_.push_back(*ia++);
      } else if (ia == a.terms_.end() || ib->first < ia->first) {
        r.terms_.emplace_back(ib->first, subtract ? C(-ib->second) : ib->second);
        ++ib;
      } else {
        C c = subtract ? C(ia->second - ib->second) : C(ia->second + ib->second);
        if (!nssigma::is_zero(c)) r.terms_.emplace_back(ia->first, std::move(c));
        ++ia;
        ++ib;
      }
    }
    return r;
  }

  void normalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().first == t.first)
        out.back().second += t.second;
      else
        out.push_back(std::move(t));
    }
    terms_.clear();
    for (auto& t : out)
      if (!nssigma::is_zero(t.second)) terms_.push_back(std::move(t));
  }

  void drop_zeros() {
    std::erase_if(terms_, [](const Term& t) { return nssigma::is_zero(t.second); });
  }

  std::vector<Term> terms_;
};

template <class C>
bool is_zero(const SparsePoly<C>& p) {
  return p.is_zero();
}

// Polynomial in the formal curve coefficients; variable k is the k-th
// symbolic coefficient of a CurveSpec.
using LambdaPoly = SparsePoly<Rational>;

}  // namespace nssigma
