#pragma once

#include <string>
#include <vector>

#include "sigma.hpp"

namespace nssigma {

struct CheckResult {
  enum class Status { pass, fail, skipped };
  std::string name;
  Status status = Status::pass;
  std::string detail;
};

struct VerifyOptions {
  int degree = 0;  // 0 selects |lambda(n,s)| + 2
  int points = 0;
  // Test hook: perturbs one c-table entry before omega-hat is built.
  bool corrupt_c_table = false;
};

// Adds 1 to c_{h1;f_(g+1)}; used to exercise the failure paths.
BiTable with_injected_fault(const CurveSpec& spec, BiTable c);

// omega-hat symmetry, symplectic pairing, sigma residual, Schur leading layer,
// homogeneity and parity, in that order.
std::vector<CheckResult> run_verification(const CurveSpec& spec, const VerifyOptions& options);
bool all_passed(const std::vector<CheckResult>& results);
std::string format_results(const std::vector<CheckResult>& results);

}  // namespace nssigma
