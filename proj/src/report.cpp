#include "nssigma/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace nssigma {

using Json = nlohmann::ordered_json;

namespace {

LambdaIndex parse_index(const std::string& key) {
  auto comma = key.find(',');
  auto number = [&](std::string_view part) {
    if (part.empty() || part.size() > 4 || !std::all_of(part.begin(), part.end(), ::isdigit))
      throw InputError("bad lambda index \"" + key + "\"; expected \"i,j\"");
    return std::stoi(std::string(part));
  };
  if (comma == std::string::npos) throw InputError("bad lambda index \"" + key + "\"; expected \"i,j\"");
  std::string_view view(key);
  return {number(view.substr(0, comma)), number(view.substr(comma + 1))};
}

std::string index_key(LambdaIndex ij) { return std::to_string(ij.i) + "," + std::to_string(ij.j); }

int require_int(const Json& j, const char* field) {
  if (!j.contains(field)) throw InputError(std::string("missing field \"") + field + "\"");
  const Json& v = j.at(field);
  if (!v.is_number_integer()) throw InputError(std::string("field \"") + field + "\" must be an integer");
  return v.get<int>();
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
}

std::string join(const std::vector<int>& v, const char* sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + std::to_string(v[i]);
  return out;
}

std::string alpha_monomial(const Alpha& alpha) {
  std::string out;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += "u" + std::to_string(i + 1);
    if (alpha[i] != 1) out += "^" + std::to_string(alpha[i]);
  }
  return out.empty() ? "1" : out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

CurveSpec CurveFile::to_spec() const {
  validate_ns(n, s);
  std::map<LambdaIndex, Rational> fixed;
  for (const auto& [ij, v] : lambda) {
    if (v) fixed[ij] = *v;
    else if (mode == Mode::numeric)
      throw InputError("numeric curve file lists lambda[" + index_key(ij) + "] as symbolic");
  }
  return mode == Mode::numeric ? CurveSpec::numeric(n, s, fixed) : CurveSpec::with_values(n, s, fixed);
}

CurveFile parse_curve_file(std::string_view json_text) {
  Json j = parse_json(json_text);
  if (!j.is_object()) throw InputError("curve file must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (key != "n" && key != "s" && key != "mode" && key != "lambda") throw InputError("unknown field \"" + key + "\"");
  CurveFile file;
  file.n = require_int(j, "n");
  file.s = require_int(j, "s");
  if (j.contains("mode")) {
    const Json& m = j.at("mode");
    if (m == "symbolic") file.mode = CurveFile::Mode::symbolic;
    else if (m == "numeric") file.mode = CurveFile::Mode::numeric;
    else throw InputError("mode must be \"symbolic\" or \"numeric\"");
  }
  if (j.contains("lambda")) {
    const Json& table = j.at("lambda");
    if (!table.is_object()) throw InputError("\"lambda\" must be an object");
    for (const auto& [key, value] : table.items()) {
      LambdaIndex ij = parse_index(key);
      if (!value.is_string()) throw InputError("lambda[" + key + "] must be a string such as \"3/2\" or \"symbolic\"");
      std::string text = value.get<std::string>();
      if (text == "symbolic") {
        file.lambda[ij] = std::nullopt;
        continue;
      }
      try {
        file.lambda[ij] = parse_rational(text);
      } catch (const std::invalid_argument& e) {
        throw InputError("lambda[" + key + "]: " + e.what());
      }
    }
  }
  file.to_spec();
  return file;
}

std::string format_curve_file(const CurveFile& file) {
  Json j;
  j["n"] = file.n;
  j["s"] = file.s;
  j["mode"] = file.mode == CurveFile::Mode::numeric ? "numeric" : "symbolic";
  Json table = Json::object();
  for (const auto& [ij, v] : file.lambda) table[index_key(ij)] = v ? v->get_str() : "symbolic";
  j["lambda"] = table;
  return dump(j);
}

CurveFile read_curve_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open curve file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_curve_file(buffer.str());
}

CoefficientReport make_report(const CurveSpec& spec, const SigmaExpansion& e) {
  CoefficientReport r;
  r.n = e.n;
  r.s = e.s;
  r.genus = e.genus;
  r.gaps = e.w;
  r.partition = e.partition.trimmed();
  r.degree = e.degree;
  r.points = e.points;
  for (const auto& [alpha, c] : e.coeffs) r.coefficients.push_back({alpha, e.weight(alpha), spec.format(c)});
  std::stable_sort(r.coefficients.begin(), r.coefficients.end(), [](const auto& a, const auto& b) {
    return std::tie(a.weight, a.alpha) < std::tie(b.weight, b.alpha);
  });
  return r;
}

std::string report_to_json(const CoefficientReport& r) {
  Json j;
  j["n"] = r.n;
  j["s"] = r.s;
  j["genus"] = r.genus;
  j["gaps"] = r.gaps;
  j["partition"] = r.partition;
  j["degree"] = r.degree;
  j["points"] = r.points;
  Json list = Json::array();
  for (const auto& c : r.coefficients) {
    Json entry;
    entry["alpha"] = c.alpha;
    entry["weight"] = c.weight;
    entry["value"] = c.value;
    list.push_back(std::move(entry));
  }
  j["coefficients"] = std::move(list);
  return dump(j);
}

CoefficientReport report_from_json(std::string_view json_text) {
  Json j = parse_json(json_text);
  try {
    CoefficientReport r;
    r.n = j.at("n").get<int>();
    r.s = j.at("s").get<int>();
    r.genus = j.at("genus").get<int>();
    r.gaps = j.at("gaps").get<std::vector<int>>();
    r.partition = j.at("partition").get<std::vector<int>>();
    r.degree = j.at("degree").get<int>();
    r.points = j.at("points").get<int>();
    for (const auto& entry : j.at("coefficients"))
      r.coefficients.push_back(
          {entry.at("alpha").get<Alpha>(), entry.at("weight").get<int>(), entry.at("value").get<std::string>()});
    return r;
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed report: ") + e.what());
  }
}

std::string report_to_text(const CoefficientReport& r) {
  std::ostringstream out;
  out << "sigma expansion for (n,s) = (" << r.n << "," << r.s << "), genus " << r.genus << "\n";
  out << "  gaps w = (" << join(r.gaps) << "), lambda(n,s) = (" << join(r.partition) << ")\n";
  out << "  u_i has weight w_i; coefficients through weight " << r.degree << ", N = " << r.points << "\n\n";
  std::size_t width = 8;
  for (const auto& c : r.coefficients) width = std::max(width, alpha_monomial(c.alpha).size());
  out << std::setw(6) << "weight" << "  " << std::left << std::setw(static_cast<int>(width)) << "monomial"
      << "  coefficient\n"
      << std::right;
  for (const auto& c : r.coefficients)
    out << std::setw(6) << c.weight << "  " << std::left << std::setw(static_cast<int>(width))
        << alpha_monomial(c.alpha) << "  " << c.value << "\n"
        << std::right;
  return out.str();
}

std::string render_gaps(const GapData& gaps, Format f) {
  auto lambda = gaps.partition.trimmed();
  int weight = gaps.partition.weight();
  if (f == Format::json) {
    Json j;
    j["n"] = gaps.n;
    j["s"] = gaps.s;
    j["genus"] = gaps.genus;
    j["gaps"] = gaps.w;
    j["nongaps"] = gaps.w_star;
    j["partition"] = lambda;
    j["partition_weight"] = weight;
    return dump(j);
  }
  std::ostringstream out;
  out << "(n,s) = (" << gaps.n << "," << gaps.s << "), genus " << gaps.genus << "\n"
      << "w      = (" << join(gaps.w) << ")\n"
      << "w*     = (" << join(gaps.w_star) << ")\n"
      << "lambda = (" << join(lambda) << "), |lambda| = " << weight << "\n";
  return out.str();
}

std::string render_basis(int n, int s, const std::vector<MonomialBasisEntry>& basis, Format f) {
  if (f == Format::json) {
    Json j;
    j["n"] = n;
    j["s"] = s;
    Json list = Json::array();
    for (const auto& b : basis) list.push_back(Json{{"i", b.i}, {"j", b.j}, {"order", b.order}});
    j["basis"] = std::move(list);
    return dump(j);
  }
  std::ostringstream out;
  out << "monomial basis for (n,s) = (" << n << "," << s << ")\n";
  for (std::size_t k = 0; k < basis.size(); ++k)
    out << std::setw(4) << k + 1 << "  x^" << basis[k].i << " y^" << basis[k].j << "  pole order " << basis[k].order
        << "\n";
  return out.str();
}

std::string render_schur(const Partition& lambda, const PowerSumPoly& S, Format f) {
  std::string text = format_power_sum(S);
  if (f == Format::json) {
    Json j;
    j["partition"] = lambda.trimmed();
    j["schur"] = text;
    return dump(j);
  }
  return "S" + lambda.to_string() + " = " + text + "\n";
}

std::string render_omega_hat(const CurveSpec& spec, const OmegaHatTable& table, Format f) {
  Json list = Json::array();
  std::ostringstream out;
  out << "omega-hat = (1/(t1-t2)^2 + sum a_ij t1^i t2^j) dt1 dt2, for (n,s) = (" << spec.n() << "," << spec.s()
      << "), i + j <= " << table.cutoff << "\n";
  for (int d = 0; d <= table.cutoff; ++d)
    for (int i = 0; i <= d; ++i) {
      LambdaPoly a = table.at(i, d - i);
      if (a.is_zero()) continue;
      list.push_back(Json{{"i", i}, {"j", d - i}, {"value", spec.format(a)}});
      out << "  a[" << i << "," << d - i << "] = " << spec.format(a) << "\n";
    }
  if (f == Format::text) return out.str();
  Json j;
  j["n"] = spec.n();
  j["s"] = spec.s();
  j["cutoff"] = table.cutoff;
  j["coefficients"] = std::move(list);
  return dump(j);
}

std::string render_prime(const CurveSpec& spec, const PrimeSeries& prime, Format f) {
  Json list = Json::array();
  std::ostringstream out;
  out << "E(t1,t2) = (t1-t2)(t1 t2)^" << prime.genus - 1 << " (1 + sum c_ij t1^i t2^j), for (n,s) = (" << spec.n()
      << "," << spec.s() << "), i + j <= " << prime.core.cutoff() << "\n";
  for (const auto& t : prime.core.terms()) {
    if (t.degree == 0) continue;
    std::string v = spec.format(t.coeff);
    list.push_back(Json{{"i", t.mono[0]}, {"j", t.mono[1]}, {"value", v}});
    out << "  c[" << t.mono[0] << "," << t.mono[1] << "] = " << v << "\n";
  }
  if (f == Format::text) return out.str();
  Json j;
  j["n"] = spec.n();
  j["s"] = spec.s();
  j["genus"] = prime.genus;
  j["cutoff"] = prime.core.cutoff();
  j["coefficients"] = std::move(list);
  return dump(j);
}

std::string render_cn(int n, int s, int N, std::complex<double> c, Format f) {
  if (f == Format::json) {
    Json j;
    j["n"] = n;
    j["s"] = s;
    j["points"] = N;
    j["re"] = c.real();
    j["im"] = c.imag();
    return dump(j);
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "C_%d = %.12f %+.12f i  for (n,s) = (%d,%d)\n", N, c.real(), c.imag(), n, s);
  return buf;
}

}  // namespace nssigma
