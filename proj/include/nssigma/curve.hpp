#pragma once

#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "partition.hpp"
#include "series.hpp"

namespace nssigma {

// Bad user input (invalid (n,s), malformed curve data, ...).
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

using LSeries = TruncSeries<LambdaPoly>;

struct LambdaIndex {
  int i = 0;
  int j = 0;
  auto operator<=>(const LambdaIndex&) const = default;
};

// Throws InputError unless 2 <= n < s and gcd(n,s) = 1.
void validate_ns(int n, int s);

int genus_of(int n, int s);

// y^n - x^s - sum lambda_ij x^i y^j over ni+sj < ns, j <= n-1. Each lambda
// is either a formal variable or a fixed rational; formal ones are numbered
// in support order and carry weight ns-ni-sj.
class CurveSpec {
 public:
  static CurveSpec symbolic(int n, int s);
  // Listed coefficients are fixed; the rest stay formal.
  static CurveSpec with_values(int n, int s, const std::map<LambdaIndex, Rational>& fixed);
  // Listed coefficients are fixed; the rest are zero.
  static CurveSpec numeric(int n, int s, const std::map<LambdaIndex, Rational>& values);
  // y^2 = x^(2g+1) + sum lambda_{i,0} x^i, the y-linear terms set to zero.
  static CurveSpec hyperelliptic(int g);

  int n() const { return n_; }
  int s() const { return s_; }
  int genus() const { return genus_of(n_, s_); }

  const std::vector<LambdaIndex>& support() const { return support_; }
  bool in_support(LambdaIndex ij) const;
  int weight(LambdaIndex ij) const { return n_ * s_ - n_ * ij.i - s_ * ij.j; }

  // Value of lambda_ij; zero outside the support.
  LambdaPoly lambda(LambdaIndex ij) const;
  bool is_symbolic(LambdaIndex ij) const { return variable_of(ij).has_value(); }

  std::size_t variable_count() const { return variables_.size(); }
  LambdaIndex variable(std::size_t v) const { return variables_.at(v); }
  std::optional<std::size_t> variable_of(LambdaIndex ij) const;
  const std::vector<int>& variable_weights() const { return weights_; }
  // Formal variable for lambda_ij (throws if that coefficient is fixed).
  LambdaPoly lambda_variable(LambdaIndex ij) const;

  // Canonical text: terms in ascending exponent order, "p/q" coefficients,
  // factors "l[i,j]^e".
  std::string format(const LambdaPoly& p) const;
  LambdaPoly parse(std::string_view text) const;

  bool is_homogeneous(const LambdaPoly& p, int weight) const { return p.is_homogeneous(weights_, weight); }

  // Replaces formal coefficients by the given rationals.
  LambdaPoly specialize(const LambdaPoly& p, const std::map<LambdaIndex, Rational>& values) const;

  bool operator==(const CurveSpec& o) const { return n_ == o.n_ && s_ == o.s_ && values_ == o.values_; }

 private:
  CurveSpec(int n, int s, const std::map<LambdaIndex, std::optional<Rational>>& values);

  int n_ = 0, s_ = 0;
  std::vector<LambdaIndex> support_;
  std::map<LambdaIndex, std::optional<Rational>> values_;
  std::vector<LambdaIndex> variables_;
  std::vector<int> weights_;
};

struct GapData {
  int n = 0, s = 0, genus = 0;
  std::vector<int> w;
  std::vector<int> w_star;
  Partition partition;
};

struct MonomialBasisEntry {
  int i = 0;
  int j = 0;
  int order = 0;
  bool operator==(const MonomialBasisEntry&) const = default;
};

GapData gap_sequence(int n, int s);
Partition partition_of_curve(const GapData& gaps);

std::vector<MonomialBasisEntry> monomial_basis(int n, int s, std::size_t count);
inline std::vector<MonomialBasisEntry> monomial_basis(const CurveSpec& spec, std::size_t count) {
  return monomial_basis(spec.n(), spec.s(), count);
}

// (a_i, b_i), i = 1..g, with 1 <= b <= n-1, 1 <= a <= (sb-1)/n, ordered so
// that sb - na runs through the gaps increasingly.
std::vector<std::pair<int, int>> holomorphic_index_pairs(int n, int s);

// The single local parameter t at infinity (weight 1).
const VarSetPtr& t_vars();

// Series expansions at infinity with x = t^-n, y = t^-s Y(t), Y(0) = 1.
// Unit series are known through t^precision; everything else takes an
// absolute cutoff for the returned series.
class LocalExpansion {
 public:
  LocalExpansion(const CurveSpec& spec, int precision);

  const CurveSpec& spec() const { return spec_; }
  int precision() const { return precision_; }

  const LSeries& Y() const { return y_unit_; }
  // dx/f_y = -t^(2g-2) U(t) dt.
  const LSeries& U() const { return u_unit_; }
  const LSeries& Y_power(int j) const;

  // x^i y^j as a Laurent series.
  LSeries monomial(int i, int j, int cutoff) const;
  // coefficient series of x^i y^j dx/f_y.
  LSeries differential(int i, int j, int cutoff) const;

 private:
  void require(int unit_precision) const;

  CurveSpec spec_;
  int precision_;
  LSeries y_unit_;
  LSeries u_unit_;
  std::vector<LSeries> y_powers_;
};

// Y(t) through t^precision by fixed-point iteration on
// Y = (1 + sum lambda_ij t^(ns-ni-sj) Y^j)^(1/n).
LSeries puiseux_unit(const CurveSpec& spec, int precision);
LSeries puiseux_y(const CurveSpec& spec, int cutoff);
LSeries dx_over_fy(const CurveSpec& spec, int cutoff);
LSeries expand_monomial(const CurveSpec& spec, const MonomialBasisEntry& entry, int cutoff);
// du_1..du_g; du_i = (t^(w_i - 1) + ...) dt.
std::vector<LSeries> holomorphic_differentials(const CurveSpec& spec, int cutoff);

// f(x(t), y(t)) for the given expansion of y; zero through its cutoff when y is right.
LSeries curve_residual(const CurveSpec& spec, const LSeries& y);

}  // namespace nssigma
