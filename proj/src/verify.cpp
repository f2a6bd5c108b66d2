#include "nssigma/verify.hpp"

#include <optional>

namespace nssigma {

namespace {

using Status = CheckResult::Status;

CheckResult pass(std::string name, std::string detail = "") { return {std::move(name), Status::pass, std::move(detail)}; }
CheckResult fail(std::string name, std::string detail) { return {std::move(name), Status::fail, std::move(detail)}; }
CheckResult skip(std::string name, std::string detail) { return {std::move(name), Status::skipped, std::move(detail)}; }

std::string pair_text(int i, int j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

CheckResult check_pairing(const CurveSpec& spec, const BiTable& c) {
  const int g = spec.genus();
  const int cutoff = 4 * g + 2;
  auto du = holomorphic_differentials(spec, cutoff);
  auto dr = dr_differentials(spec, c, cutoff);
  const LambdaPoly one(Rational(1));
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      if (!residue_pairing(du[i], du[j]).is_zero()) return fail("symplectic pairing", "du" + pair_text(i + 1, j + 1) + " != 0");
      if (residue_pairing(du[i], dr[j]) != (i == j ? one : LambdaPoly()))
        return fail("symplectic pairing", "du.dr" + pair_text(i + 1, j + 1) + " != delta");
      if (!residue_pairing(dr[i], dr[j]).is_zero()) return fail("symplectic pairing", "dr" + pair_text(i + 1, j + 1) + " != 0");
    }
  return pass("symplectic pairing", std::to_string(g) + "x" + std::to_string(g) + " through t^" + std::to_string(cutoff));
}

CheckResult check_leading_layer(const SigmaExpansion& e) {
  const int weight = e.partition.weight();
  PowerSumPoly layer;
  for (const auto& [alpha, c] : e.coeffs) {
    if (e.weight(alpha) != weight) continue;
    if (!c.is_constant()) return fail("schur leading layer", "non-rational coefficient at weight " + std::to_string(weight));
    Monomial m;
    for (std::size_t i = 0; i < alpha.size(); ++i) m.set(static_cast<std::size_t>(e.w[i] - 1), alpha[i]);
    layer = layer + PowerSumPoly::monomial(m, c.constant_term());
  }
  PowerSumPoly expected = schur_S(e.partition);
  if (!(layer == expected))
    return fail("schur leading layer", "got " + format_power_sum(layer) + ", expected " + format_power_sum(expected));
  for (const auto& [alpha, c] : e.coeffs)
    if (e.weight(alpha) < weight) return fail("schur leading layer", "nonzero coefficient below weight " + std::to_string(weight));
  return pass("schur leading layer", "S" + e.partition.to_string());
}

bool fixed_values_vanish(const CurveSpec& spec) {
  for (const auto& ij : spec.support())
    if (!spec.is_symbolic(ij) && !spec.lambda(ij).is_zero()) return false;
  return true;
}

CheckResult check_homogeneity(const CurveSpec& spec, const SigmaExpansion& e) {
  if (!fixed_values_vanish(spec)) return skip("homogeneity", "curve has nonzero fixed coefficients");
  for (const auto& [alpha, c] : e.coeffs)
    if (!spec.is_homogeneous(c, e.weight(alpha) - e.partition.weight()))
      return fail("homogeneity", "a_alpha of weight " + std::to_string(e.weight(alpha)) + " is not homogeneous of degree " +
                                     std::to_string(e.weight(alpha) - e.partition.weight()));
  return pass("homogeneity", std::to_string(e.coeffs.size()) + " coefficients");
}

}  // namespace

BiTable with_injected_fault(const CurveSpec& spec, BiTable c) {
  auto h = holomorphic_monomials(spec).front();
  auto f = monomial_basis(spec, static_cast<std::size_t>(spec.genus()) + 1).back();
  c[{h.first, h.second, f.i, f.j}] += LambdaPoly(Rational(1));
  return c;
}

std::vector<CheckResult> run_verification(const CurveSpec& spec, const VerifyOptions& options) {
  const int weight = gap_sequence(spec.n(), spec.s()).partition.weight();
  const int degree = options.degree == 0 ? weight + 2 : options.degree;
  std::vector<CheckResult> out;

  BiTable numerator = omega_one_form_coeffs(spec);
  BiTable c = solve_c(spec, numerator);
  if (options.corrupt_c_table) c = with_injected_fault(spec, std::move(c));

  std::optional<OmegaHatTable> omega;
  try {
    omega = omega_hat_series(spec, numerator, c, std::max(degree - 2, 2));
    out.push_back(pass("omega-hat symmetry", "a_ij = a_ji for i + j <= " + std::to_string(omega->cutoff)));
  } catch (const InvariantViolation& e) {
    out.push_back(fail("omega-hat symmetry", e.what()));
  }

  try {
    out.push_back(check_pairing(spec, c));
  } catch (const std::exception& e) {
    out.push_back(fail("symplectic pairing", e.what()));
  }

  const char* later[] = {"schur leading layer", "homogeneity", "parity"};
  if (!omega) {
    out.push_back(skip("sigma residual", "needs omega-hat"));
    for (const char* name : later) out.push_back(skip(name, "needs omega-hat"));
    return out;
  }
  std::optional<SigmaExpansion> e;
  try {
    e = sigma_expansion(spec, *omega, degree, options.points);
    out.push_back(pass("sigma residual", "zero through degree " + std::to_string(degree)));
  } catch (const InvariantViolation& err) {
    out.push_back(fail("sigma residual", err.what()));
    for (const char* name : later) out.push_back(skip(name, "needs the sigma expansion"));
    return out;
  }
  out.push_back(check_leading_layer(*e));
  out.push_back(check_homogeneity(spec, *e));
  out.push_back(parity_check(*e) ? pass("parity", "(-1)^|lambda| = " + std::to_string(weight % 2 ? -1 : 1))
                                 : fail("parity", "coefficient with the wrong parity"));
  return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (r.status == Status::fail) return false;
  return true;
}

std::string format_results(const std::vector<CheckResult>& results) {
  std::string out;
  for (const auto& r : results) {
    const char* tag = r.status == Status::pass ? "ok  " : r.status == Status::fail ? "FAIL" : "skip";
    out += std::string(tag) + "  " + r.name;
    if (!r.detail.empty()) out += ": " + r.detail;
    out += "\n";
  }
  return out;
}

}  // namespace nssigma
