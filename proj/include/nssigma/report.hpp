#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sigma.hpp"

namespace nssigma {

// {"n": 3, "s": 4, "mode": "symbolic", "lambda": {"1,0": "1/2", "0,0": "symbolic"}}
//
// symbolic mode: unlisted coefficients and "symbolic" entries stay formal.
// numeric mode: every listed value must be rational; unlisted ones are zero.
struct CurveFile {
  enum class Mode { symbolic, numeric };

  int n = 0, s = 0;
  Mode mode = Mode::symbolic;
  std::map<LambdaIndex, std::optional<Rational>> lambda;

  CurveSpec to_spec() const;
  bool operator==(const CurveFile&) const = default;
};

// Throws InputError on malformed JSON, unknown keys or indices, and inexact values.
CurveFile parse_curve_file(std::string_view json_text);
std::string format_curve_file(const CurveFile& file);
CurveFile read_curve_file(const std::string& path);

struct ReportCoefficient {
  Alpha alpha;
  int weight = 0;
  // canonical polynomial in the lambda_ij
  std::string value;
  bool operator==(const ReportCoefficient&) const = default;
};

struct CoefficientReport {
  int n = 0, s = 0, genus = 0;
  std::vector<int> gaps;
  std::vector<int> partition;
  int degree = 0;
  int points = 0;
  // sorted by (weight, alpha)
  std::vector<ReportCoefficient> coefficients;
  bool operator==(const CoefficientReport&) const = default;
};

CoefficientReport make_report(const CurveSpec& spec, const SigmaExpansion& e);
std::string report_to_json(const CoefficientReport& r);
CoefficientReport report_from_json(std::string_view json_text);
std::string report_to_text(const CoefficientReport& r);

enum class Format { json, text };

std::string render_gaps(const GapData& gaps, Format f);
std::string render_basis(int n, int s, const std::vector<MonomialBasisEntry>& basis, Format f);
std::string render_schur(const Partition& lambda, const PowerSumPoly& S, Format f);
std::string render_omega_hat(const CurveSpec& spec, const OmegaHatTable& table, Format f);
std::string render_prime(const CurveSpec& spec, const PrimeSeries& prime, Format f);
std::string render_cn(int n, int s, int N, std::complex<double> c, Format f);

}  // namespace nssigma
