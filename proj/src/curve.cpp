#include "nssigma/curve.hpp"

#include <cctype>
#include <numeric>

namespace nssigma {

void validate_ns(int n, int s) {
  if (n < 2) throw InputError("n must be at least 2");
  if (s <= n) throw InputError("s must exceed n");
  if (std::gcd(n, s) != 1) throw InputError("gcd(n,s) must be 1");
}

int genus_of(int n, int s) { return (n - 1) * (s - 1) / 2; }

CurveSpec::CurveSpec(int n, int s, const std::map<LambdaIndex, std::optional<Rational>>& values) : n_(n), s_(s) {
  validate_ns(n, s);
  for (int i = 0; n * i < n * s; ++i)
    for (int j = 0; j < n; ++j)
      if (n * i + s * j < n * s) support_.push_back({i, j});
  for (const auto& [ij, v] : values)
    if (!in_support(ij))
      throw InputError("lambda index (" + std::to_string(ij.i) + "," + std::to_string(ij.j) + ") outside the support");
  for (const auto& ij : support_) {
    auto it = values.find(ij);
    std::optional<Rational> v = it == values.end() ? std::nullopt : it->second;
    values_[ij] = v;
    if (!v) {
      variables_.push_back(ij);
      weights_.push_back(weight(ij));
    }
  }
  if (variables_.size() > Monomial::kCapacity) throw InputError("too many formal curve coefficients");
}

CurveSpec CurveSpec::symbolic(int n, int s) { return CurveSpec(n, s, {}); }

CurveSpec CurveSpec::with_values(int n, int s, const std::map<LambdaIndex, Rational>& fixed) {
  std::map<LambdaIndex, std::optional<Rational>> values(fixed.begin(), fixed.end());
  return CurveSpec(n, s, values);
}

CurveSpec CurveSpec::numeric(int n, int s, const std::map<LambdaIndex, Rational>& values) {
  validate_ns(n, s);
  std::map<LambdaIndex, std::optional<Rational>> all;
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < n; ++j)
      if (n * i + s * j < n * s) all[{i, j}] = Rational(0);
  for (const auto& [ij, v] : values) all[ij] = v;
  return CurveSpec(n, s, all);
}

CurveSpec CurveSpec::hyperelliptic(int g) {
  if (g < 1) throw InputError("genus must be positive");
  std::map<LambdaIndex, Rational> fixed;
  for (int i = 0; 2 * i + 2 * g + 1 < 2 * (2 * g + 1); ++i) fixed[{i, 1}] = 0;
  return with_values(2, 2 * g + 1, fixed);
}

bool CurveSpec::in_support(LambdaIndex ij) const {
  return ij.i >= 0 && ij.j >= 0 && ij.j < n_ && n_ * ij.i + s_ * ij.j < n_ * s_;
}

LambdaPoly CurveSpec::lambda(LambdaIndex ij) const {
  auto it = values_.find(ij);
  if (it == values_.end()) return {};
  if (it->second) return LambdaPoly(*it->second);
  return LambdaPoly::variable(*variable_of(ij));
}

std::optional<std::size_t> CurveSpec::variable_of(LambdaIndex ij) const {
  for (std::size_t v = 0; v < variables_.size(); ++v)
    if (variables_[v] == ij) return v;
  return std::nullopt;
}

LambdaPoly CurveSpec::lambda_variable(LambdaIndex ij) const {
  auto v = variable_of(ij);
  if (!v) throw std::invalid_argument("coefficient is not formal");
  return LambdaPoly::variable(*v);
}

std::string CurveSpec::format(const LambdaPoly& p) const {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    Rational mag = abs(c);
    bool negative = sgn(c) < 0;
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    std::string mono;
    for (std::size_t v = 0; v < m.span(); ++v) {
      if (m[v] == 0) continue;
      if (!mono.empty()) mono += "*";
      auto ij = variables_.at(v);
      mono += "l[" + std::to_string(ij.i) + "," + std::to_string(ij.j) + "]";
      if (m[v] != 1) mono += "^" + std::to_string(m[v]);
    }
    if (mono.empty())
      out += mag.get_str();
    else if (mag == 1)
      out += mono;
    else
      out += mag.get_str() + "*" + mono;
  }
  return out;
}

namespace {

class PolyParser {
 public:
  PolyParser(const CurveSpec& spec, std::string_view text) : spec_(spec), text_(text) {}

  LambdaPoly parse() {
    LambdaPoly acc;
    skip();
    bool negative = false;
    if (peek() == '-') {
      negative = true;
      ++pos_;
    }
    for (;;) {
      LambdaPoly term = parse_term();
      acc += negative ? -term : term;
      skip();
      if (pos_ == text_.size()) break;
      char op = text_[pos_++];
      if (op != '+' && op != '-') fail("expected '+' or '-'");
      negative = op == '-';
    }
    return acc;
  }

 private:
  LambdaPoly parse_term() {
    LambdaPoly term(Rational(1));
    for (;;) {
      skip();
      term = term * parse_factor();
      skip();
      if (peek() != '*') return term;
      ++pos_;
    }
  }

  LambdaPoly parse_factor() {
    if (peek() == 'l') {
      ++pos_;
      expect('[');
      int i = parse_int();
      expect(',');
      int j = parse_int();
      expect(']');
      int e = 1;
      if (peek() == '^') {
        ++pos_;
        e = parse_int();
      }
      LambdaIndex ij{i, j};
      if (!spec_.in_support(ij)) fail("lambda index outside the support");
      LambdaPoly base = spec_.lambda(ij), r(Rational(1));
      for (int k = 0; k < e; ++k) r = r * base;
      return r;
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/')) ++pos_;
    if (start == pos_) fail("expected a factor");
    return LambdaPoly(parse_rational(text_.substr(start, pos_ - start)));
  }

  int parse_int() {
    std::size_t start = pos_;
    if (peek() == '-') ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return std::stoi(std::string(text_.substr(start, pos_ - start)));
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip() {
    while (pos_ < text_.size() && text_[pos_] == ' ') ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("cannot parse polynomial '" + std::string(text_) + "': " + what);
  }

  const CurveSpec& spec_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

LambdaPoly CurveSpec::parse(std::string_view text) const { return PolyParser(*this, text).parse(); }

LambdaPoly CurveSpec::specialize(const LambdaPoly& p, const std::map<LambdaIndex, Rational>& values) const {
  std::vector<LambdaPoly> images;
  for (std::size_t v = 0; v < variables_.size(); ++v) {
    auto it = values.find(variables_[v]);
    images.push_back(it == values.end() ? LambdaPoly::variable(v) : LambdaPoly(it->second));
  }
  return p.substitute(images, [](const Rational& c) { return LambdaPoly(c); }, LambdaPoly(Rational(1)));
}

namespace {

bool representable(int k, int n, int s) {
  for (int j = 0; j < n && s * j <= k; ++j)
    if ((k - s * j) % n == 0) return true;
  return false;
}

}  // namespace

GapData gap_sequence(int n, int s) {
  validate_ns(n, s);
  GapData d;
  d.n = n;
  d.s = s;
  d.genus = genus_of(n, s);
  for (int k = 0; k < 2 * d.genus; ++k) (representable(k, n, s) ? d.w_star : d.w).push_back(k);
  d.partition = partition_of_curve(d);
  return d;
}

Partition partition_of_curve(const GapData& gaps) {
  int g = static_cast<int>(gaps.w.size());
  std::vector<int> parts;
  for (int k = 0; k < g; ++k) parts.push_back(gaps.w[g - 1 - k] - (g - 1 - k));
  return Partition(std::move(parts));
}

std::vector<MonomialBasisEntry> monomial_basis(int n, int s, std::size_t count) {
  validate_ns(n, s);
  std::vector<MonomialBasisEntry> out;
  for (int k = 0; out.size() < count; ++k) {
    for (int j = 0; j < n && s * j <= k; ++j)
      if ((k - s * j) % n == 0) {
        out.push_back({(k - s * j) / n, j, k});
        break;
      }
  }
  return out;
}

std::vector<std::pair<int, int>> holomorphic_index_pairs(int n, int s) {
  validate_ns(n, s);
  std::vector<std::pair<int, int>> pairs;
  for (int b = 1; b <= n - 1; ++b)
    for (int a = 1; a <= (s * b - 1) / n; ++a) pairs.emplace_back(a, b);
  std::sort(pairs.begin(), pairs.end(), [&](auto p, auto q) {
    return s * p.second - n * p.first < s * q.second - n * q.first;
  });
  return pairs;
}

const VarSetPtr& t_vars() {
  static const VarSetPtr vars = make_vars({"t"}, {1});
  return vars;
}

namespace {

LSeries t_power(int k, int cutoff, const LambdaPoly& c = LambdaPoly(Rational(1))) {
  return LSeries::monomial(t_vars(), cutoff, Monomial::variable(0, k), c);
}

}  // namespace

LSeries puiseux_unit(const CurveSpec& spec, int precision) {
  precision = std::max(precision, 0);
  struct Piece {
    int weight;
    int j;
    LambdaPoly lambda;
  };
  std::vector<Piece> pieces;
  int wmin = spec.n() * spec.s();
  for (const auto& ij : spec.support()) {
    LambdaPoly l = spec.lambda(ij);
    if (l.is_zero()) continue;
    pieces.push_back({spec.weight(ij), ij.j, l});
    wmin = std::min(wmin, spec.weight(ij));
  }
  LSeries y = LSeries::constant(t_vars(), 0, LambdaPoly(Rational(1)));
  if (pieces.empty()) return LSeries::constant(t_vars(), precision, LambdaPoly(Rational(1)));
  // Y = 1 mod t^wmin; each pass gains wmin correct coefficients.
  int known = wmin - 1;
  for (int pass = 0; pass <= precision + 2; ++pass) {
    int work = std::min(precision, known + wmin);
    LSeries yw = y.with_cutoff(work);
    std::vector<LSeries> powers{LSeries::constant(t_vars(), work, LambdaPoly(Rational(1)))};
    LSeries rhs = powers[0];
    for (const auto& p : pieces) {
      while (static_cast<int>(powers.size()) <= p.j) powers.push_back(powers.back() * yw);
      if (p.weight <= work) rhs += (powers[p.j] * t_power(p.weight, work, p.lambda)).truncated(work);
    }
    LSeries next = series_root(rhs, spec.n());
    bool stable = work == precision && y.cutoff() == precision && next == y;
    y = std::move(next);
    known = work;
    if (stable) return y;
  }
  throw std::runtime_error("puiseux iteration did not converge");
}

LocalExpansion::LocalExpansion(const CurveSpec& spec, int precision)
    : spec_(spec),
      precision_(std::max(precision, 0)),
      y_unit_(puiseux_unit(spec, precision_)),
      u_unit_(t_vars(), precision_) {
  const int n = spec.n();
  y_powers_.push_back(LSeries::constant(t_vars(), precision_, LambdaPoly(Rational(1))));
  for (int j = 1; j <= n; ++j) y_powers_.push_back(y_powers_.back() * y_unit_);
  // f_y = t^(-s(n-1)) V(t)
  LSeries v = y_powers_[n - 1].scaled(LambdaPoly(Rational(n)));
  for (const auto& ij : spec.support()) {
    if (ij.j == 0) continue;
    LambdaPoly l = spec.lambda(ij);
    if (l.is_zero()) continue;
    v -= (y_powers_[ij.j - 1] * t_power(spec.weight(ij), precision_, l.scaled(Rational(ij.j)))).truncated(precision_);
  }
  u_unit_ = series_inverse(v).scaled(LambdaPoly(Rational(n)));
}

const LSeries& LocalExpansion::Y_power(int j) const { return y_powers_.at(j); }

void LocalExpansion::require(int unit_precision) const {
  if (unit_precision > precision_) throw std::logic_error("local expansion precision too low");
}

LSeries LocalExpansion::monomial(int i, int j, int cutoff) const {
  int shift = -spec_.n() * i - spec_.s() * j;
  require(cutoff - shift);
  return y_powers_.at(j).truncated(cutoff - shift).times_monomial(Monomial::variable(0, shift));
}

LSeries LocalExpansion::differential(int i, int j, int cutoff) const {
  int g = spec_.genus();
  int shift = 2 * g - 2 - spec_.n() * i - spec_.s() * j;
  require(cutoff - shift);
  int p = cutoff - shift;
  return -(y_powers_.at(j).truncated(p) * u_unit_.truncated(p)).times_monomial(Monomial::variable(0, shift));
}

LSeries puiseux_y(const CurveSpec& spec, int cutoff) {
  return puiseux_unit(spec, cutoff + spec.s()).times_monomial(Monomial::variable(0, -spec.s()));
}

LSeries dx_over_fy(const CurveSpec& spec, int cutoff) {
  int shift = 2 * spec.genus() - 2;
  return LocalExpansion(spec, cutoff - shift).differential(0, 0, cutoff);
}

LSeries expand_monomial(const CurveSpec& spec, const MonomialBasisEntry& entry, int cutoff) {
  return LocalExpansion(spec, cutoff + entry.order).monomial(entry.i, entry.j, cutoff);
}

std::vector<LSeries> holomorphic_differentials(const CurveSpec& spec, int cutoff) {
  LocalExpansion local(spec, cutoff);
  std::vector<LSeries> out;
  for (auto [a, b] : holomorphic_index_pairs(spec.n(), spec.s()))
    out.push_back(-local.differential(a - 1, spec.n() - 1 - b, cutoff));
  return out;
}

LSeries curve_residual(const CurveSpec& spec, const LSeries& y) {
  const int big = y.cutoff() + spec.n() * spec.s() + 1;
  auto x_pow = [&](int i) { return t_power(-spec.n() * i, big); };
  LSeries f = series_pow(y, spec.n()) - x_pow(spec.s());
  for (const auto& ij : spec.support()) {
    LambdaPoly l = spec.lambda(ij);
    if (l.is_zero()) continue;
    f -= (ij.j == 0 ? x_pow(ij.i) : x_pow(ij.i) * series_pow(y, ij.j)).scaled(l);
  }
  return f;
}

}  // namespace nssigma
