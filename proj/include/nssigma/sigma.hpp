#pragma once

#include <complex>
#include <map>
#include <vector>

#include "fundform.hpp"
#include "schur.hpp"

namespace nssigma {

struct SigmaResidualError : InvariantViolation {
  explicit SigmaResidualError(int degree);
  int degree;
};

// sum_{i=1}^{n-1} eps_n^(-ik) = n-1 if n | k, else -1.
int conjugate_sum_collapse(int n, int k);

// t1, t2 (weight 1 each).
const VarSetPtr& t_pair_vars();
// t1..tN (weight 1 each).
VarSetPtr t_point_vars(int count);
// T_1..T_N, T_k of weight k.
VarSetPtr power_sum_vars(int count);

struct PrimeSeries {
  int genus = 0;
  // E(p1,p2) / ((t1-t2)(t1 t2)^(g-1)) in t1, t2; constant term 1.
  LSeries core;
  LSeries full() const;
};

// Needs omega-hat coefficients through i + j <= cutoff - 2.
PrimeSeries prime_function_series(const CurveSpec& spec, const OmegaHatTable& omega, int cutoff);
PrimeSeries prime_function_series(const CurveSpec& spec, int cutoff);

// E(inf, p) = t^g (1 + sum c_0j t^j).
LSeries prime_function_at_infinity(const PrimeSeries& prime);

// Right-hand side of the N-point formula as a symmetric series in t1..tN.
LSeries assemble_F(const CurveSpec& spec, const PrimeSeries& prime, int points, int cutoff);

// Symmetric series in t1..tN rewritten in T_1..T_N, T_k = (t1^k + ... + tN^k)/k.
LSeries power_sum_rewrite(const LSeries& symmetric);

// u_i = sum_k int_inf^{p_k} du_i in T_1..T_N, through weight cutoff.
std::vector<LSeries> u_from_t(const CurveSpec& spec, int points, int cutoff);

// The same series as power_sum_rewrite(assemble_F(...)), built directly in
// power sums: G as a combination of Schur polynomials S_mu(T), the prime
// factors through their logarithms, then reduced from T_1, T_2, ... to
// T_1..T_N.
LSeries F_in_power_sums(const CurveSpec& spec, const PrimeSeries& prime, int points, int cutoff);

using Alpha = std::vector<int>;

struct SigmaExpansion {
  int n = 0, s = 0, genus = 0;
  int points = 0;
  int degree = 0;
  std::vector<int> w;
  Partition partition;
  // a_alpha for |alpha| = sum w_i alpha_i <= degree; zero entries omitted
  std::map<Alpha, LambdaPoly> coeffs;

  int weight(const Alpha& a) const;
};

int default_points(int genus);

// sigma(u) through weighted degree D; points = 0 selects max(1, 2g-1).
SigmaExpansion sigma_expansion(const CurveSpec& spec, int degree, int points = 0);
// Same, from a given omega-hat table (known through i + j <= degree - 2).
SigmaExpansion sigma_expansion(const CurveSpec& spec, const OmegaHatTable& omega, int degree, int points = 0);

std::complex<double> constant_CN(int n, int s, int N);

// (-1)^(sum alpha_i) = (-1)^|lambda(n,s)| for every nonzero coefficient.
bool parity_check(const SigmaExpansion& e);

}  // namespace nssigma
