#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "nssigma/report.hpp"
#include "nssigma/verify.hpp"

using namespace nssigma;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kInputError = 2, kTheoremViolation = 3 };

struct Common {
  int n = 0, s = 0;
  std::string curve;
  std::string format = "text";
  std::string out;
};

void add_curve_options(CLI::App* cmd, Common& c, bool allow_file) {
  cmd->add_option("--n", c.n, "first exponent of y^n = x^s + ...");
  cmd->add_option("--s", c.s, "second exponent");
  if (allow_file) cmd->add_option("--curve", c.curve, "curve file (JSON)");
}

void add_output_options(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "text"}));
  cmd->add_option("--out", c.out, "write output to this file instead of stdout");
}

Format format_of(const Common& c) { return c.format == "json" ? Format::json : Format::text; }

std::pair<int, int> ns_of(const Common& c) {
  if (c.n == 0 || c.s == 0) throw InputError("--n and --s are required");
  validate_ns(c.n, c.s);
  return {c.n, c.s};
}

CurveSpec spec_of(const Common& c) {
  if (!c.curve.empty()) {
    if (c.n != 0 || c.s != 0) throw InputError("give either --curve or --n/--s, not both");
    return read_curve_file(c.curve).to_spec();
  }
  auto [n, s] = ns_of(c);
  return CurveSpec::symbolic(n, s);
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(c.out);
  if (!file) throw InputError("cannot write " + c.out);
  file << text;
}

Partition parse_partition(const std::string& text) {
  std::vector<int> parts;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      int p = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      parts.push_back(p);
    } catch (const std::logic_error&) {
      throw InputError("bad partition \"" + text + "\"; expected e.g. 3,1,1");
    }
  }
  try {
    return Partition(parts);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sigma functions of (n,s) curves as exact power series"};
  app.require_subcommand(1);

  Common gaps_o, basis_o, schur_o, omega_o, prime_o, sigma_o, cn_o, verify_o;
  int basis_count = 0, omega_cutoff = 8, prime_cutoff = 8, sigma_degree = 0, sigma_points = 0, cn_points = 1;
  int verify_degree = 0, verify_points = 0;
  bool inject_fault = false;
  std::string partition_text;

  auto* gaps = app.add_subcommand("gaps", "gap sequence, nongaps and partition");
  add_curve_options(gaps, gaps_o, false);
  add_output_options(gaps, gaps_o);

  auto* basis = app.add_subcommand("basis", "monomial basis x^i y^j by pole order");
  add_curve_options(basis, basis_o, false);
  basis->add_option("--count", basis_count, "number of entries (default 2g+2)");
  add_output_options(basis, basis_o);

  auto* schur = app.add_subcommand("schur", "Schur polynomial S_lambda(T)");
  schur->add_option("--partition", partition_text, "parts, e.g. 3,1,1");
  schur->add_option("--n", schur_o.n, "use lambda(n,s) of this curve");
  schur->add_option("--s", schur_o.s);
  add_output_options(schur, schur_o);

  auto* omega = app.add_subcommand("omega-hat", "coefficients a_ij of the fundamental form at infinity");
  add_curve_options(omega, omega_o, true);
  omega->add_option("--cutoff", omega_cutoff, "largest i + j");
  add_output_options(omega, omega_o);

  auto* prime = app.add_subcommand("prime", "prime function series E(t1,t2)");
  add_curve_options(prime, prime_o, true);
  prime->add_option("--cutoff", prime_cutoff, "largest i + j");
  add_output_options(prime, prime_o);

  auto* sigma = app.add_subcommand("sigma", "sigma function expansion");
  add_curve_options(sigma, sigma_o, true);
  sigma->add_option("--degree", sigma_degree, "largest weight |alpha| (default |lambda(n,s)| + 4)");
  sigma->add_option("--n-points", sigma_points, "number of points N (default max(1, 2g-1))");
  bool sigma_fault = false;
  sigma->add_flag("--inject-c-fault", sigma_fault)->group("");
  add_output_options(sigma, sigma_o);

  auto* cn = app.add_subcommand("cn", "the constant C_N (floating point)");
  add_curve_options(cn, cn_o, false);
  cn->add_option("--n-points", cn_points, "N");
  add_output_options(cn, cn_o);

  auto* verify = app.add_subcommand("verify", "run the invariant checks");
  add_curve_options(verify, verify_o, true);
  verify->add_option("--degree", verify_degree, "sigma degree (default |lambda(n,s)| + 2)");
  verify->add_option("--n-points", verify_points, "number of points N");
  verify->add_flag("--inject-c-fault", inject_fault)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (gaps->parsed()) {
      auto [n, s] = ns_of(gaps_o);
      emit(gaps_o, render_gaps(gap_sequence(n, s), format_of(gaps_o)));
    } else if (basis->parsed()) {
      auto [n, s] = ns_of(basis_o);
      int count = basis_count > 0 ? basis_count : 2 * genus_of(n, s) + 2;
      emit(basis_o, render_basis(n, s, monomial_basis(n, s, static_cast<std::size_t>(count)), format_of(basis_o)));
    } else if (schur->parsed()) {
      Partition lambda;
      if (!partition_text.empty()) {
        if (schur_o.n || schur_o.s) throw InputError("give either --partition or --n/--s");
        lambda = parse_partition(partition_text);
      } else {
        auto [n, s] = ns_of(schur_o);
        lambda = gap_sequence(n, s).partition;
      }
      emit(schur_o, render_schur(lambda, schur_S(lambda), format_of(schur_o)));
    } else if (omega->parsed()) {
      if (omega_cutoff < 0) throw InputError("--cutoff must be nonnegative");
      CurveSpec spec = spec_of(omega_o);
      emit(omega_o, render_omega_hat(spec, fundamental_form(spec, omega_cutoff).a_table, format_of(omega_o)));
    } else if (prime->parsed()) {
      if (prime_cutoff < 0) throw InputError("--cutoff must be nonnegative");
      CurveSpec spec = spec_of(prime_o);
      emit(prime_o, render_prime(spec, prime_function_series(spec, prime_cutoff), format_of(prime_o)));
    } else if (sigma->parsed()) {
      CurveSpec spec = spec_of(sigma_o);
      int degree = sigma_degree > 0 ? sigma_degree : gap_sequence(spec.n(), spec.s()).partition.weight() + 4;
      SigmaExpansion e;
      if (sigma_fault) {
        BiTable num = omega_one_form_coeffs(spec);
        BiTable c = with_injected_fault(spec, solve_c(spec, num));
        e = sigma_expansion(spec, omega_hat_series(spec, num, c, std::max(degree - 2, 0)), degree, sigma_points);
      } else {
        e = sigma_expansion(spec, degree, sigma_points);
      }
      CoefficientReport report = make_report(spec, e);
      emit(sigma_o, format_of(sigma_o) == Format::json ? report_to_json(report) : report_to_text(report));
    } else if (cn->parsed()) {
      auto [n, s] = ns_of(cn_o);
      if (cn_points < 1) throw InputError("--n-points must be positive");
      emit(cn_o, render_cn(n, s, cn_points, constant_CN(n, s, cn_points), format_of(cn_o)));
    } else if (verify->parsed()) {
      CurveSpec spec = spec_of(verify_o);
      auto results = run_verification(spec, {verify_degree, verify_points, inject_fault});
      std::cout << format_results(results);
      return all_passed(results) ? kOk : kVerifyFailed;
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const InvariantViolation& e) {
    std::cerr << "theorem violation: " << e.what() << "\n";
    return kTheoremViolation;
  }
  return kOk;
}
