#pragma once

#include <compare>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "curve.hpp"

namespace nssigma {

// A computed object failed an identity that holds for every valid curve.
struct InvariantViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OmegaHatAsymmetry : InvariantViolation {
  OmegaHatAsymmetry(int i, int j);
  int i, j;
};

// Exponents of x1^i1 y1^j1 x2^i2 y2^j2.
struct BiIndex {
  int i1 = 0, j1 = 0, i2 = 0, j2 = 0;
  auto operator<=>(const BiIndex&) const = default;
  BiIndex swapped() const { return {i2, j2, i1, j1}; }
};

using BiTable = std::map<BiIndex, LambdaPoly>;
using PairTable = std::map<std::pair<int, int>, LambdaPoly>;

inline LambdaPoly table_at(const BiTable& t, const BiIndex& k) {
  auto it = t.find(k);
  return it == t.end() ? LambdaPoly() : it->second;
}
inline LambdaPoly table_at(const PairTable& t, int i, int j) {
  auto it = t.find({i, j});
  return it == t.end() ? LambdaPoly() : it->second;
}

// Weight of a numerator entry: 2(n-1)s - n(i1+i2) - s(j1+j2).
int numerator_weight(const CurveSpec& spec, const BiIndex& k);
// Weight of a c entry: 2ns - n(i1+i2+2) - s(j1+j2+2).
int c_weight(const CurveSpec& spec, const BiIndex& k);

// (a_k - 1, n - 1 - b_k) for k = 1..g, so that du_k = -x^(a_k-1) y^(n-1-b_k) dx/f_y.
std::vector<std::pair<int, int>> holomorphic_monomials(const CurveSpec& spec);

// Numerator of d_{p2} Omega over (x1-x2)^2 f_y(p1) f_y(p2), with both
// y-degrees reduced below n.
BiTable omega_one_form_coeffs(const CurveSpec& spec);

// Numerator of omega-hat: the table above plus (x1-x2)^2 sum c x1^i1 y1^j1 x2^i2 y2^j2.
BiTable total_numerator(const CurveSpec& spec, const BiTable& numerator, const BiTable& c);

// Solves the symmetry equations block by weight block. Unknowns are ordered
// lexicographically; pivots are taken leftmost and free unknowns are zero.
BiTable solve_c(const CurveSpec& spec, const BiTable& numerator);
inline BiTable solve_c(const CurveSpec& spec) { return solve_c(spec, omega_one_form_coeffs(spec)); }

// dr_1..dr_g as series at infinity, known through t^cutoff; each is checked
// to have zero residue.
std::vector<LSeries> dr_differentials(const CurveSpec& spec, const BiTable& c, int cutoff);

// a_ij for i + j <= cutoff, where
// omega-hat = (1/(t1-t2)^2 + sum a_ij t1^i t2^j) dt1 dt2.
struct OmegaHatTable {
  int cutoff = -1;
  PairTable a;
  LambdaPoly at(int i, int j) const { return table_at(a, i, j); }
};

OmegaHatTable omega_hat_series(const CurveSpec& spec, const BiTable& numerator, const BiTable& c, int cutoff);
inline OmegaHatTable omega_hat_series(const CurveSpec& spec, const BiTable& c, int cutoff) {
  return omega_hat_series(spec, omega_one_form_coeffs(spec), c, cutoff);
}

// Res_{t=0} (integral of eta) * eta2. Rejects a residue in eta and series too
// short to determine the answer.
LambdaPoly residue_pairing(const LSeries& eta, const LSeries& eta2);

struct FundFormData {
  BiTable numerator;
  BiTable c_table;
  std::vector<LSeries> dr;
  OmegaHatTable a_table;
};

// Everything above, with a_ij through i + j <= cutoff and dr through t^cutoff.
FundFormData fundamental_form(const CurveSpec& spec, int cutoff);

}  // namespace nssigma
