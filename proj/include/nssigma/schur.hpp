#pragma once

#include <string>
#include <vector>

#include "partition.hpp"
#include "sparse_poly.hpp"

namespace nssigma {

// Polynomial in T_1, T_2, ...; variable k-1 holds T_k and has weight k.
using PowerSumPoly = SparsePoly<Rational>;
// Polynomial in t_1, ..., t_l; variable j-1 holds t_j.
using SymPoly = SparsePoly<Rational>;

PowerSumPoly power_sum_variable(int k);
std::vector<int> power_sum_weights(std::size_t count = Monomial::kCapacity);

// p_0..p_max_n from exp(sum T_n k^n) = sum p_n k^n.
std::vector<PowerSumPoly> p_polynomials(int max_n);

// det(p_{lambda_i - i + j}), one row per listed part (zeros included).
PowerSumPoly schur_S(const Partition& lambda);

// Alternant det(t_j^(lambda_i + l - i)) divided exactly by prod_{i<j}(t_i - t_j).
SymPoly schur_s(const Partition& lambda, int l);

// T_i -> -T_i.
PowerSumPoly negate_vars(const PowerSumPoly& p);

// T_k -> (t_1^k + ... + t_l^k) / k.
SymPoly power_sums_in_t(const PowerSumPoly& p, int l);

std::string format_power_sum(const PowerSumPoly& p, const std::string& stem = "T");

}  // namespace nssigma
