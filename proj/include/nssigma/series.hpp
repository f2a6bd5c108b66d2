#pragma once

#include <concepts>
#include <algorithm>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "monomial.hpp"
#include "rational.hpp"
#include "sparse_poly.hpp"

namespace nssigma {

class VarSet {
 public:
  VarSet(std::vector<std::string> names, std::vector<int> weights)
      : names_(std::move(names)), weights_(std::move(weights)) {
    if (names_.size() != weights_.size()) throw std::invalid_argument("variable names and weights differ in length");
    if (names_.size() > Monomial::kCapacity) throw std::invalid_argument("too many series variables");
    for (int w : weights_)
      if (w <= 0) throw std::invalid_argument("variable weights must be positive");
  }

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  int weight(std::size_t i) const { return weights_.at(i); }
  std::span<const int> weights() const { return weights_; }

  bool operator==(const VarSet&) const = default;

 private:
  std::vector<std::string> names_;
  std::vector<int> weights_;
};

using VarSetPtr = std::shared_ptr<const VarSet>;

inline VarSetPtr make_vars(std::vector<std::string> names, std::vector<int> weights) {
  return std::make_shared<const VarSet>(std::move(names), std::move(weights));
}

// stem1..stemN with the given common weight, or weights 1..N when graded.
inline VarSetPtr indexed_vars(const std::string& stem, std::size_t count, bool graded = false) {
  std::vector<std::string> names;
  std::vector<int> weights;
  for (std::size_t i = 1; i <= count; ++i) {
    names.push_back(stem + std::to_string(i));
    weights.push_back(graded ? static_cast<int>(i) : 1);
  }
  return make_vars(std::move(names), std::move(weights));
}

inline std::optional<Rational> as_rational(const Rational& c) { return c; }
inline std::optional<Rational> as_rational(const LambdaPoly& c) {
  if (!c.is_constant()) return std::nullopt;
  return c.constant_term();
}

// Truncated power series in a weighted variable set. Every stored term has
// weighted degree <= cutoff; terms are ordered by (degree, monomial).
template <class C>
class TruncSeries {
 public:
  struct Term {
    int degree;
    Monomial mono;
    C coeff;
    bool operator==(const Term&) const = default;
  };

  TruncSeries(VarSetPtr vars, int cutoff) : vars_(std::move(vars)), cutoff_(cutoff) {
    if (!vars_) throw std::invalid_argument("series without variables");
  }

  static TruncSeries constant(VarSetPtr vars, int cutoff, const C& c) {
    return monomial(std::move(vars), cutoff, Monomial{}, c);
  }
  static TruncSeries monomial(VarSetPtr vars, int cutoff, const Monomial& m, const C& c) {
    TruncSeries s(std::move(vars), cutoff);
    int d = m.degree(s.vars_->weights());
    if (d <= cutoff && !nssigma::is_zero(c)) s.terms_.push_back({d, m, c});
    return s;
  }
  static TruncSeries variable(VarSetPtr vars, int cutoff, std::size_t index) {
    return monomial(std::move(vars), cutoff, Monomial::variable(index), C(1));
  }
  static TruncSeries from_terms(VarSetPtr vars, int cutoff, std::vector<std::pair<Monomial, C>> terms) {
    TruncSeries s(std::move(vars), cutoff);
    std::unordered_map<Monomial, C, MonomialHash> acc;
    for (auto& [m, c] : terms) acc[m] += c;
    s.absorb(acc);
    return s;
  }
  // Exact type only: SparsePoly<Rational> would otherwise convert into a
  // constant SparsePoly<LambdaPoly>.
  template <class P>
    requires std::same_as<P, SparsePoly<C>>
  static TruncSeries from_poly(VarSetPtr vars, int cutoff, const P& p) {
    std::vector<std::pair<Monomial, C>> terms(p.terms().begin(), p.terms().end());
    return from_terms(std::move(vars), cutoff, std::move(terms));
  }
  // Rational polynomial in the series variables, coefficients lifted into C.
  static TruncSeries from_rational_poly(VarSetPtr vars, int cutoff, const SparsePoly<Rational>& p) {
    std::vector<std::pair<Monomial, C>> terms;
    for (const auto& [m, c] : p.terms()) terms.emplace_back(m, C(c));
    return from_terms(std::move(vars), cutoff, std::move(terms));
  }

  const VarSet& vars() const { return *vars_; }
  const VarSetPtr& vars_ptr() const { return vars_; }
  int cutoff() const { return cutoff_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  int degree_of(const Monomial& m) const { return m.degree(vars_->weights()); }

  C coefficient(const Monomial& m) const {
    Term key{degree_of(m), m, C()};
    auto it = std::lower_bound(terms_.begin(), terms_.end(), key, order);
    if (it != terms_.end() && it->mono == m) return it->coeff;
    return C();
  }
  // Univariate convenience: coefficient of var0^k.
  C coefficient(int k) const { return coefficient(Monomial::variable(0, k)); }
  C constant_term() const { return coefficient(Monomial{}); }

  // Lowest weighted degree among stored terms.
  std::optional<int> valuation() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.front().degree;
  }

  TruncSeries truncated(int cutoff) const {
    TruncSeries r(vars_, std::min(cutoff, cutoff_));
    for (const auto& t : terms_)
      if (t.degree <= r.cutoff_) r.terms_.push_back(t);
    return r;
  }

  // Same terms, declared known through the given cutoff. Raising the cutoff
  // asserts that the missing coefficients are zero.
  TruncSeries with_cutoff(int cutoff) const {
    TruncSeries r = truncated(cutoff);
    r.cutoff_ = cutoff;
    return r;
  }

  TruncSeries homogeneous_part(int degree) const {
    TruncSeries r(vars_, cutoff_);
    for (const auto& t : terms_)
      if (t.degree == degree) r.terms_.push_back(t);
    return r;
  }

  TruncSeries operator-() const {
    TruncSeries r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }

  friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) { return combine(a, b, false); }
  friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) { return combine(a, b, true); }
  TruncSeries& operator+=(const TruncSeries& o) { return *this = *this + o; }
  TruncSeries& operator-=(const TruncSeries& o) { return *this = *this - o; }
  TruncSeries& operator*=(const TruncSeries& o) { return *this = *this * o; }

  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    a.require_same_vars(b);
    int va = a.valuation().value_or(0), vb = b.valuation().value_or(0);
    int cut = std::min(a.cutoff_ + std::min(0, vb), b.cutoff_ + std::min(0, va));
    TruncSeries r(a.vars_, cut);
    if (a.is_zero() || b.is_zero()) return r;
    if (a.terms_.size() == 1 && a.terms_[0].mono.is_one()) return b.scaled(a.terms_[0].coeff).truncated(cut);
    if (b.terms_.size() == 1 && b.terms_[0].mono.is_one()) return a.scaled(b.terms_[0].coeff).truncated(cut);
    std::unordered_map<Monomial, C, MonomialHash> acc;
    acc.reserve(std::min<std::size_t>(a.size() * b.size(), 1u << 16));
    for (const auto& ta : a.terms_) {
      if (ta.degree + vb > cut) break;
      for (const auto& tb : b.terms_) {
        if (ta.degree + tb.degree > cut) break;
        acc[ta.mono * tb.mono] += ta.coeff * tb.coeff;
      }
    }
    r.absorb(acc);
    return r;
  }

  TruncSeries scaled(const C& c) const {
    TruncSeries r(vars_, cutoff_);
    if (nssigma::is_zero(c)) return r;
    for (const auto& t : terms_) {
      C v = t.coeff * c;
      if (!nssigma::is_zero(v)) r.terms_.push_back({t.degree, t.mono, std::move(v)});
    }
    return r;
  }

  // Multiplication by a monomial; the cutoff moves with it.
  TruncSeries times_monomial(const Monomial& m) const {
    int d = degree_of(m);
    TruncSeries r(vars_, cutoff_ + d);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.degree + d, t.mono * m, t.coeff});
    return r;
  }

  template <class F>
  TruncSeries map_coefficients(F&& f) const {
    TruncSeries r(vars_, cutoff_);
    for (const auto& t : terms_) {
      C v = f(t.coeff);
      if (!nssigma::is_zero(v)) r.terms_.push_back({t.degree, t.mono, std::move(v)});
    }
    return r;
  }

  bool operator==(const TruncSeries& o) const {
    return *vars_ == *o.vars_ && cutoff_ == o.cutoff_ && terms_ == o.terms_;
  }

  // Equality of the retained terms after truncating both sides to the smaller cutoff.
  bool agrees_with(const TruncSeries& o) const {
    int c = std::min(cutoff_, o.cutoff_);
    return (truncated(c) - o.truncated(c)).is_zero();
  }

  void require_same_vars(const TruncSeries& o) const {
    if (vars_ != o.vars_ && !(*vars_ == *o.vars_)) throw std::invalid_argument("variable-set mismatch");
  }

 private:
  static bool order(const Term& x, const Term& y) {
    return x.degree != y.degree ? x.degree < y.degree : x.mono < y.mono;
  }

  static TruncSeries combine(const TruncSeries& a, const TruncSeries& b, bool subtract) {
    a.require_same_vars(b);
    TruncSeries r(a.vars_, std::min(a.cutoff_, b.cutoff_));
    r.terms_.reserve(a.size() + b.size());
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    auto ea = a.terms_.end(), eb = b.terms_.end();
    while (ia != ea || ib != eb) {
      if (ib == eb || (ia != ea && order(*ia, *ib))) {
        if (ia->degree <= r.cutoff_) r.terms_.push_back(*ia);
        ++ia;
      } else if (ia == ea || order(*ib, *ia)) {
        if (ib->degree <= r.cutoff_)
          r.terms_.push_back({ib->degree, ib->mono, subtract ? C(-ib->coeff) : ib->coeff});
        ++ib;
      } else {
        if (ia->degree <= r.cutoff_) {
          C c = subtract ? C(ia->coeff - ib->coeff) : C(ia->coeff + ib->coeff);
          if (!nssigma::is_zero(c)) r.terms_.push_back({ia->degree, ia->mono, std::move(c)});
        }
        ++ia;
        ++ib;
      }
    }
    return r;
  }

  void absorb(std::unordered_map<Monomial, C, MonomialHash>& acc) {
    terms_.clear();
    terms_.reserve(acc.size());
    for (auto& [m, c] : acc) {
      int d = degree_of(m);
      if (d <= cutoff_ && !nssigma::is_zero(c)) terms_.push_back({d, m, std::move(c)});
    }
    std::sort(terms_.begin(), terms_.end(), order);
  }

  VarSetPtr vars_;
  int cutoff_;
  std::vector<Term> terms_;
};

template <class C>
bool is_zero(const TruncSeries<C>& s) {
  return s.is_zero();
}

namespace detail {

template <class C>
void require_regular(const TruncSeries<C>& a, const char* op) {
  for (const auto& t : a.terms())
    if (t.mono.has_negative()) throw std::domain_error(std::string(op) + ": negative exponents not allowed");
}

template <class C>
TruncSeries<C> one_like(const TruncSeries<C>& a) {
  return TruncSeries<C>::constant(a.vars_ptr(), a.cutoff(), C(1));
}

// Lowest exponent of a univariate Laurent series.
template <class C>
int lowest_exponent(const TruncSeries<C>& a) {
  int e = a.terms().front().mono[0];
  for (const auto& t : a.terms()) e = std::min(e, static_cast<int>(t.mono[0]));
  return e;
}

}  // namespace detail

// Multiplicative inverse. A univariate Laurent series is handled by factoring
// out its leading power; otherwise the constant term must be a nonzero rational.
template <class C>
TruncSeries<C> series_inverse(const TruncSeries<C>& a) {
  if (a.is_zero()) throw std::domain_error("series_inverse: zero series");
  if (a.vars().size() == 1) {
    int k = detail::lowest_exponent(a);
    if (k != 0) {
      Monomial shift = Monomial::variable(0, -k);
      return series_inverse(a.times_monomial(shift)).times_monomial(shift);
    }
  }
  detail::require_regular(a, "series_inverse");
  auto c0 = as_rational(a.constant_term());
  if (!c0 || sgn(*c0) == 0) throw std::domain_error("series_inverse: constant term is zero or lambda-dependent");
  auto b = TruncSeries<C>::constant(a.vars_ptr(), a.cutoff(), C(Rational(1 / *c0)));
  auto two = TruncSeries<C>::constant(a.vars_ptr(), a.cutoff(), C(2));
  for (int iter = 0; iter < 64; ++iter) {
    auto next = b * (two - a * b);
    if (next == b) return b;
    b = std::move(next);
  }
  throw std::runtime_error("series_inverse: Newton iteration did not converge");
}

template <class C>
TruncSeries<C> series_pow(const TruncSeries<C>& a, int k) {
  if (k < 0) return series_pow(series_inverse(a), -k);
  if (k == 0) return detail::one_like(a);
  std::optional<TruncSeries<C>> result;
  auto base = a;
  while (k > 0) {
    if (k & 1) result = result ? *result * base : base;
    k >>= 1;
    if (k) base = base * base;
  }
  return *result;
}

namespace detail {

// Number of powers of r that can contribute below the cutoff.
template <class C>
int horner_length(const TruncSeries<C>& r) {
  if (r.is_zero()) return 0;
  int v = *r.valuation();
  return v <= 0 ? 0 : r.cutoff() / v;
}

// Sum_k coeffs[k] r^k for a series r without constant term.
template <class C>
TruncSeries<C> horner(const TruncSeries<C>& r, const std::vector<Rational>& coeffs) {
  auto acc = TruncSeries<C>::constant(r.vars_ptr(), r.cutoff(), C(coeffs.back()));
  for (std::size_t k = coeffs.size() - 1; k-- > 0;)
    acc = TruncSeries<C>::constant(r.vars_ptr(), r.cutoff(), C(coeffs[k])) + r * acc;
  return acc;
}

template <class C>
void require_no_constant(const TruncSeries<C>& a, const char* op) {
  require_regular(a, op);
  if (!is_zero(a.constant_term())) throw std::domain_error(std::string(op) + ": nonzero constant term");
}

}  // namespace detail

template <class C>
TruncSeries<C> series_exp(const TruncSeries<C>& a) {
  detail::require_no_constant(a, "series_exp");
  int len = detail::horner_length(a);
  std::vector<Rational> coeffs{Rational(1)};
  Rational f = 1;
  for (int k = 1; k <= len; ++k) {
    f /= k;
    coeffs.push_back(f);
  }
  return detail::horner(a, coeffs);
}

// log of a series with constant term 1.
template <class C>
TruncSeries<C> series_log(const TruncSeries<C>& a) {
  detail::require_regular(a, "series_log");
  auto c0 = as_rational(a.constant_term());
  if (!c0 || *c0 != 1) throw std::domain_error("series_log: constant term must be 1");
  auto r = a - detail::one_like(a);
  int len = detail::horner_length(r);
  std::vector<Rational> coeffs{Rational(0)};
  for (int k = 1; k <= len; ++k) coeffs.push_back(make_rational(k % 2 ? 1 : -1, k));
  return detail::horner(r, coeffs);
}

// n-th root of a series with constant term 1, normalized to constant term 1.
template <class C>
TruncSeries<C> series_root(const TruncSeries<C>& a, int n) {
  if (n < 1) throw std::invalid_argument("series_root: n must be positive");
  detail::require_regular(a, "series_root");
  auto c0 = as_rational(a.constant_term());
  if (!c0 || *c0 != 1) throw std::domain_error("series_root: constant term must be 1");
  auto r = a - detail::one_like(a);
  int len = detail::horner_length(r);
  std::vector<Rational> coeffs{Rational(1)};
  Rational binom = 1, e = make_rational(1, n);
  for (int k = 1; k <= len; ++k) {
    binom *= (e - (k - 1));
    binom /= k;
    coeffs.push_back(binom);
  }
  return detail::horner(r, coeffs);
}

template <class C>
TruncSeries<C> series_sqrt(const TruncSeries<C>& a) {
  return series_root(a, 2);
}

// Termwise integration in one variable; a term with exponent -1 is a residue
// and is rejected.
template <class C>
TruncSeries<C> series_antiderivative(const TruncSeries<C>& a, std::size_t var = 0) {
  if (var >= a.vars().size()) throw std::out_of_range("series_antiderivative: no such variable");
  std::vector<std::pair<Monomial, C>> terms;
  for (const auto& t : a.terms()) {
    int e = t.mono[var];
    if (e == -1) throw std::domain_error("series_antiderivative: nonzero residue term");
    Monomial m = t.mono;
    m.set(var, e + 1);
    terms.emplace_back(m, t.coeff * C(make_rational(1, e + 1)));
  }
  return TruncSeries<C>::from_terms(a.vars_ptr(), a.cutoff() + a.vars().weight(var), std::move(terms));
}

template <class C>
TruncSeries<C> series_derivative(const TruncSeries<C>& a, std::size_t var = 0) {
  std::vector<std::pair<Monomial, C>> terms;
  for (const auto& t : a.terms()) {
    int e = t.mono[var];
    if (e == 0) continue;
    Monomial m = t.mono;
    m.set(var, e - 1);
    terms.emplace_back(m, t.coeff * C(e));
  }
  return TruncSeries<C>::from_terms(a.vars_ptr(), a.cutoff() - a.vars().weight(var), std::move(terms));
}

// Coefficient of var^-1 in a univariate series; requires the cutoff to reach -1.
template <class C>
C series_residue(const TruncSeries<C>& a) {
  if (a.vars().size() != 1) throw std::invalid_argument("series_residue: univariate series expected");
  if (a.cutoff() < -a.vars().weight(0)) throw std::domain_error("series_residue: insufficient cutoff");
  return a.coefficient(-1);
}

// Renames variables: source variable i becomes target variable mapping[i].
template <class C>
TruncSeries<C> series_embed(const TruncSeries<C>& a, VarSetPtr target, std::span<const std::size_t> mapping) {
  if (mapping.size() != a.vars().size()) throw std::invalid_argument("series_embed: mapping size mismatch");
  for (std::size_t i = 0; i < mapping.size(); ++i)
    if (target->weight(mapping[i]) != a.vars().weight(i))
      throw std::invalid_argument("series_embed: weight mismatch");
  std::vector<std::pair<Monomial, C>> terms;
  terms.reserve(a.size());
  for (const auto& t : a.terms()) {
    Monomial m;
    for (std::size_t i = 0; i < mapping.size(); ++i)
      if (t.mono[i] != 0) m.set(mapping[i], m[mapping[i]] + t.mono[i]);
    terms.emplace_back(m, t.coeff);
  }
  return TruncSeries<C>::from_terms(std::move(target), a.cutoff(), std::move(terms));
}

// Exchanges two variables of the same weight.
template <class C>
TruncSeries<C> series_swap(const TruncSeries<C>& a, std::size_t i, std::size_t j) {
  std::vector<std::size_t> mapping(a.vars().size());
  for (std::size_t k = 0; k < mapping.size(); ++k) mapping[k] = k;
  std::swap(mapping[i], mapping[j]);
  return series_embed(a, a.vars_ptr(), mapping);
}

// True when every term is homogeneous of weight `target` in the combined
// grading: series variables contribute sign * (their weighted degree), and
// coefficient variable k contributes coeff_weights[k].
inline bool is_graded_homogeneous(const TruncSeries<LambdaPoly>& s, std::span<const int> coeff_weights, int sign,
                                  int target) {
  for (const auto& t : s.terms())
    if (!t.coeff.is_homogeneous(coeff_weights, target - sign * t.degree)) return false;
  return true;
}

}  // namespace nssigma
