#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>

#include "nssigma/curve.hpp"

using namespace nssigma;

namespace {

// Gaps from the full semigroup <n,s> (no reduction j < n).
std::vector<int> brute_force_gaps(int n, int s) {
  int bound = n * s;
  std::set<int> semigroup;
  for (int i = 0; n * i <= bound; ++i)
    for (int j = 0; n * i + s * j <= bound; ++j) semigroup.insert(n * i + s * j);
  std::vector<int> gaps;
  for (int k = 0; k <= bound; ++k)
    if (!semigroup.count(k)) gaps.push_back(k);
  return gaps;
}

std::vector<std::pair<int, int>> coprime_pairs(int max_s) {
  std::vector<std::pair<int, int>> out;
  for (int s = 3; s <= max_s; ++s)
    for (int n = 2; n < s; ++n)
      if (std::gcd(n, s) == 1) out.emplace_back(n, s);
  return out;
}

std::vector<std::pair<int, int>> basis_ij(const std::vector<MonomialBasisEntry>& b) {
  std::vector<std::pair<int, int>> out;
  for (const auto& e : b) out.emplace_back(e.i, e.j);
  return out;
}

CurveSpec weierstrass_curve() { return CurveSpec::with_values(2, 3, {{{2, 0}, 0}, {{0, 1}, 0}, {{1, 1}, 0}}); }

}  // namespace

TEST(GapSequence, Examples) {
  auto d34 = gap_sequence(3, 4);
  EXPECT_EQ(d34.w, (std::vector<int>{1, 2, 5}));
  EXPECT_EQ(d34.w_star, (std::vector<int>{0, 3, 4}));
  EXPECT_EQ(gap_sequence(3, 5).w, (std::vector<int>{1, 2, 4, 7}));
  auto d45 = gap_sequence(4, 5);
  EXPECT_EQ(d45.w, (std::vector<int>{1, 2, 3, 6, 7, 11}));
  EXPECT_EQ(d45.w_star, (std::vector<int>{0, 4, 5, 8, 9, 10}));
  EXPECT_THROW(gap_sequence(4, 6), InputError);
  EXPECT_THROW(gap_sequence(3, 2), InputError);
}

TEST(GapSequence, ThreeSeven) {
  // 10 = 3 + 7 lies in the semigroup, so the last gap is 2g - 1 = 11
  auto d = gap_sequence(3, 7);
  EXPECT_EQ(d.w, (std::vector<int>{1, 2, 4, 5, 8, 11}));
  EXPECT_EQ(d.w_star, (std::vector<int>{0, 3, 6, 7, 9, 10}));
  EXPECT_EQ(basis_ij(monomial_basis(3, 7, 9)),
            (std::vector<std::pair<int, int>>{{0, 0}, {1, 0}, {2, 0}, {0, 1}, {3, 0}, {1, 1}, {4, 0}, {2, 1}, {0, 2}}));
}

TEST(GapSequence, MatchesBruteForceAndLemmaShape) {
  for (auto [n, s] : coprime_pairs(11)) {
    auto d = gap_sequence(n, s);
    int g = genus_of(n, s);
    EXPECT_EQ(d.w, brute_force_gaps(n, s)) << n << "," << s;
    ASSERT_EQ(static_cast<int>(d.w.size()), g);
    ASSERT_EQ(static_cast<int>(d.w_star.size()), g);
    EXPECT_EQ(d.w.front(), 1);
    EXPECT_EQ(d.w.back(), 2 * g - 1);
    EXPECT_EQ(d.w_star.front(), 0);
    std::vector<int> dual;
    for (int v : d.w_star) dual.push_back(2 * g - 1 - v);
    std::sort(dual.begin(), dual.end());
    EXPECT_EQ(dual, d.w);
  }
}

TEST(PartitionOfCurve, Examples) {
  EXPECT_EQ(gap_sequence(2, 5).partition, Partition({2, 1}));
  EXPECT_EQ(gap_sequence(3, 4).partition, Partition({3, 1, 1}));
  EXPECT_EQ(gap_sequence(2, 3).partition, Partition({1}));
}

TEST(PartitionOfCurve, WeightAndSelfConjugacy) {
  for (auto [n, s] : coprime_pairs(9)) {
    auto p = gap_sequence(n, s).partition;
    EXPECT_EQ(24 * p.weight(), (n * n - 1) * (s * s - 1)) << n << "," << s;
    EXPECT_EQ(p.conjugate(), p) << n << "," << s;
  }
}

TEST(MonomialBasis, Examples) {
  using P = std::vector<std::pair<int, int>>;
  EXPECT_EQ(basis_ij(monomial_basis(3, 4, 9)),
            (P{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}, {3, 0}, {2, 1}, {1, 2}}));
  EXPECT_EQ(basis_ij(monomial_basis(3, 5, 11)),
            (P{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {3, 0}, {0, 2}, {2, 1}, {4, 0}, {1, 2}, {3, 1}}));
  for (int g = 1; g <= 5; ++g) {
    auto b = basis_ij(monomial_basis(2, 2 * g + 1, g + 4));
    P expected;
    for (int i = 0; i <= g; ++i) expected.emplace_back(i, 0);
    expected.insert(expected.end(), {{0, 1}, {g + 1, 0}, {1, 1}});
    EXPECT_EQ(b, expected) << "g=" << g;
  }
}

TEST(MonomialBasis, OrdersFollowNonGapsThenConsecutive) {
  for (auto [n, s] : coprime_pairs(9)) {
    auto d = gap_sequence(n, s);
    int g = d.genus;
    auto b = monomial_basis(n, s, 2 * g + 3);
    for (int i = 0; i < static_cast<int>(b.size()); ++i) {
      int expected = i < g ? d.w_star[i] : g - 1 + (i + 1);
      EXPECT_EQ(b[i].order, expected);
      EXPECT_EQ(b[i].order, n * b[i].i + s * b[i].j);
      EXPECT_LT(b[i].j, n);
    }
    EXPECT_EQ(b[g - 1].order, 2 * g - 2);
  }
}

TEST(HolomorphicPairs, MatchBasisAndGaps) {
  for (auto [n, s] : coprime_pairs(9)) {
    auto d = gap_sequence(n, s);
    int g = d.genus;
    auto pairs = holomorphic_index_pairs(n, s);
    auto basis = monomial_basis(n, s, g);
    ASSERT_EQ(static_cast<int>(pairs.size()), g);
    for (int i = 0; i < g; ++i) {
      auto [a, b] = pairs[i];
      EXPECT_EQ(s * b - n * a, d.w[i]);
      EXPECT_EQ(basis[g - 1 - i].i, a - 1);
      EXPECT_EQ(basis[g - 1 - i].j, n - 1 - b);
    }
  }
}

TEST(Puiseux, GenusOneMatchesBinomialOracle) {
  auto spec = weierstrass_curve();
  const int cutoff = 14;
  auto y = puiseux_y(spec, cutoff);
  // Oracle: t^-3 * sum_k binom(1/2,k) (l10 t^4 + l00 t^6)^k with t as polynomial variable 2.
  auto l10 = spec.lambda_variable({1, 0}), l00 = spec.lambda_variable({0, 0});
  auto tt = LambdaPoly::variable(2);
  auto z = l10 * tt * tt * tt * tt + l00 * tt * tt * tt * tt * tt * tt;
  LambdaPoly sum(Rational(1)), zk(Rational(1));
  Rational binom = 1;
  for (int k = 1; k <= 5; ++k) {
    binom *= (make_rational(1, 2) - (k - 1)) / k;
    zk = zk * z;
    sum += zk.scaled(binom);
  }
  for (int e = 0; e <= cutoff + 3; ++e) {
    LambdaPoly expected;
    for (const auto& [m, c] : sum.terms())
      if (m[2] == e) {
        Monomial mm = m;
        mm.set(2, 0);
        expected += LambdaPoly::monomial(mm, c);
      }
    EXPECT_EQ(y.coefficient(e - 3), expected) << "t^" << e - 3;
  }
  EXPECT_EQ(y.coefficient(1), l10.scaled(make_rational(1, 2)));
  EXPECT_EQ(y.coefficient(3), l00.scaled(make_rational(1, 2)));
  EXPECT_EQ(y.coefficient(5), (l10 * l10).scaled(make_rational(-1, 8)));
}

TEST(Puiseux, MonomialCurveIsExact) {
  for (auto [n, s] : coprime_pairs(7)) {
    auto spec = CurveSpec::numeric(n, s, {});
    auto y = puiseux_y(spec, 10);
    EXPECT_EQ(y.size(), 1u);
    EXPECT_EQ(y.coefficient(-s), LambdaPoly(Rational(1)));
  }
}

TEST(Puiseux, ResidualVanishesForRandomRationalCurve) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> num(-7, 7), den(1, 4);
  std::map<LambdaIndex, Rational> values;
  auto sym = CurveSpec::symbolic(3, 4);
  for (const auto& ij : sym.support()) values[ij] = make_rational(num(rng), den(rng));
  auto spec = CurveSpec::numeric(3, 4, values);
  auto y = puiseux_y(spec, 16);
  auto f = curve_residual(spec, y);
  EXPECT_TRUE(f.is_zero());
  EXPECT_EQ(f.cutoff(), 16 - 2 * 4);
}

TEST(Puiseux, SymbolicResidualAndHomogeneity) {
  for (auto [n, s] : std::vector<std::pair<int, int>>{{2, 3}, {3, 4}, {2, 5}, {3, 5}}) {
    auto spec = CurveSpec::symbolic(n, s);
    auto y = puiseux_y(spec, 10);
    EXPECT_TRUE(curve_residual(spec, y).is_zero()) << n << "," << s;
    EXPECT_TRUE(is_graded_homogeneous(y, spec.variable_weights(), -1, s));
    EXPECT_EQ(y.coefficient(-s), LambdaPoly(Rational(1)));
  }
}

TEST(DxOverFy, Examples) {
  for (auto [n, s] : coprime_pairs(7)) {
    auto spec = CurveSpec::numeric(n, s, {});
    int g = spec.genus();
    auto h = dx_over_fy(spec, 2 * g + 6);
    EXPECT_EQ(h.size(), 1u);
    EXPECT_EQ(h.coefficient(2 * g - 2), LambdaPoly(Rational(-1)));
  }
  auto spec = weierstrass_curve();
  auto h = dx_over_fy(spec, 8);
  auto l10 = spec.lambda_variable({1, 0}), l00 = spec.lambda_variable({0, 0});
  // -2 t^-3 / (2 y) = -1/Y with Y = (1 + l10 t^4 + l00 t^6)^(1/2)
  EXPECT_EQ(h.coefficient(0), LambdaPoly(Rational(-1)));
  EXPECT_EQ(h.coefficient(4), l10.scaled(make_rational(1, 2)));
  EXPECT_EQ(h.coefficient(6), l00.scaled(make_rational(1, 2)));
  EXPECT_EQ(h.coefficient(8), (l10 * l10).scaled(make_rational(-3, 8)));
  for (auto [n, s] : std::vector<std::pair<int, int>>{{3, 4}, {2, 5}, {3, 5}}) {
    auto sym = CurveSpec::symbolic(n, s);
    int g = sym.genus();
    auto d = dx_over_fy(sym, 2 * g + 8);
    EXPECT_EQ(d.coefficient(2 * g - 2), LambdaPoly(Rational(-1)));
    EXPECT_EQ(*d.valuation(), 2 * g - 2);
    EXPECT_TRUE(is_graded_homogeneous(d, sym.variable_weights(), -1, -(2 * g - 2)));
  }
}

TEST(ExpandMonomial, Examples) {
  auto spec = CurveSpec::symbolic(3, 4);
  auto b = monomial_basis(spec, 3);
  auto f1 = expand_monomial(spec, b[0], 6);
  EXPECT_EQ(f1.size(), 1u);
  EXPECT_EQ(f1.constant_term(), LambdaPoly(Rational(1)));
  auto f2 = expand_monomial(spec, b[1], 6);
  EXPECT_EQ(f2.size(), 1u);
  EXPECT_EQ(f2.coefficient(-3), LambdaPoly(Rational(1)));
  auto f3 = expand_monomial(spec, b[2], 6);
  EXPECT_EQ(f3.coefficient(-4), LambdaPoly(Rational(1)));
  EXPECT_EQ(*f3.valuation(), -4);
  EXPECT_TRUE(is_graded_homogeneous(f3, spec.variable_weights(), -1, 4));
  EXPECT_EQ(f3, puiseux_y(spec, 6));
}

TEST(HolomorphicDifferentials, LeadingTermsAndKnownForms) {
  for (auto [n, s] : std::vector<std::pair<int, int>>{{2, 3}, {3, 4}, {2, 5}, {3, 5}, {2, 7}}) {
    auto spec = CurveSpec::symbolic(n, s);
    auto d = gap_sequence(n, s);
    int g = d.genus;
    auto du = holomorphic_differentials(spec, 12);
    ASSERT_EQ(static_cast<int>(du.size()), g);
    for (int i = 0; i < g; ++i) {
      EXPECT_EQ(*du[i].valuation(), d.w[i] - 1);
      EXPECT_EQ(du[i].coefficient(d.w[i] - 1), LambdaPoly(Rational(1)));
      EXPECT_TRUE(is_graded_homogeneous(du[i], spec.variable_weights(), -1, -(d.w[i] - 1)));
    }
    EXPECT_EQ(du[g - 1], -dx_over_fy(spec, 12));
    if (g >= 2) {
      LocalExpansion local(spec, 12);
      EXPECT_EQ(du[g - 2], -local.differential(1, 0, 12));
    }
  }
  auto spec = weierstrass_curve();
  auto du = holomorphic_differentials(spec, 6);
  EXPECT_EQ(du[0].coefficient(4), spec.lambda_variable({1, 0}).scaled(make_rational(-1, 2)));
}

TEST(CurveSpec, CanonicalStringsRoundTrip) {
  auto spec = CurveSpec::symbolic(2, 3);
  auto l10 = spec.lambda_variable({1, 0}), l00 = spec.lambda_variable({0, 0});
  EXPECT_EQ(spec.format(l10.scaled(make_rational(1, 60))), "1/60*l[1,0]");
  EXPECT_EQ(spec.format(LambdaPoly()), "0");
  std::vector<LambdaPoly> samples{l10 * l10 * l00 - l00.scaled(3) + LambdaPoly(make_rational(-5, 7)),
                                  -l10, l00 * l00 * l00.scaled(make_rational(2, 9)), LambdaPoly(Rational(4))};
  for (const auto& p : samples) EXPECT_EQ(spec.parse(spec.format(p)), p) << spec.format(p);
  EXPECT_THROW(spec.parse("l[5,5]"), InputError);
  EXPECT_THROW(spec.parse("1/2*"), InputError);
}

TEST(CurveSpec, SpecializeAndSupport) {
  auto spec = CurveSpec::symbolic(3, 4);
  EXPECT_EQ(spec.support().size(), 9u);
  EXPECT_EQ(spec.weight({1, 2}), 1);
  EXPECT_THROW(CurveSpec::with_values(3, 4, {{{4, 0}, 1}}), InputError);
  auto p = spec.lambda_variable({1, 2}) * spec.lambda_variable({0, 0});
  EXPECT_EQ(spec.specialize(p, {{{1, 2}, 2}}), spec.lambda_variable({0, 0}).scaled(2));
  auto hyp = CurveSpec::hyperelliptic(2);
  EXPECT_FALSE(hyp.is_symbolic({0, 1}));
  EXPECT_TRUE(hyp.lambda({1, 1}).is_zero());
  EXPECT_TRUE(hyp.is_symbolic({4, 0}));
}
