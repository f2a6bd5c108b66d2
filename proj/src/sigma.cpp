#include "nssigma/sigma.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "nssigma/linalg.hpp"

namespace nssigma {

SigmaResidualError::SigmaResidualError(int d)
    : InvariantViolation("sigma residual nonzero at degree " + std::to_string(d)), degree(d) {}

int conjugate_sum_collapse(int n, int k) {
  if (n < 2) throw std::invalid_argument("conjugate_sum_collapse: n must be at least 2");
  return k % n == 0 ? n - 1 : -1;
}

const VarSetPtr& t_pair_vars() {
  static const VarSetPtr vars = make_vars({"t1", "t2"}, {1, 1});
  return vars;
}

VarSetPtr t_point_vars(int count) {
  if (count < 1) throw std::invalid_argument("need at least one point");
  return indexed_vars("t", static_cast<std::size_t>(count));
}

VarSetPtr power_sum_vars(int count) {
  if (count < 1) throw std::invalid_argument("need at least one power sum");
  return indexed_vars("T", static_cast<std::size_t>(count), true);
}

LSeries PrimeSeries::full() const {
  LSeries diff = LSeries::variable(core.vars_ptr(), core.cutoff() + 1, 0) -
                 LSeries::variable(core.vars_ptr(), core.cutoff() + 1, 1);
  Monomial shift;
  shift.set(0, genus - 1);
  shift.set(1, genus - 1);
  return (diff * core.with_cutoff(core.cutoff() + 1)).times_monomial(shift);
}

namespace {

LambdaPoly power_sum_count(const CurveSpec& spec, int k) { return LambdaPoly(Rational(conjugate_sum_collapse(spec.n(), k))); }

// Coefficients of t1^0 in a two-variable series, as a series in t.
LSeries restrict_first_zero(const LSeries& two) {
  std::vector<std::pair<Monomial, LambdaPoly>> terms;
  for (const auto& t : two.terms())
    if (t.mono[0] == 0) terms.emplace_back(Monomial::variable(0, t.mono[1]), t.coeff);
  return LSeries::from_terms(t_vars(), two.cutoff(), std::move(terms));
}

// Coefficients H[i][k] of h_i(t) = t^(N+g-1) f_i(t), for k <= top.
std::vector<std::vector<LambdaPoly>> scaled_basis_coefficients(const CurveSpec& spec, int points, int top) {
  const int g = spec.genus();
  LocalExpansion local(spec, top + 1);
  std::vector<std::vector<LambdaPoly>> h;
  for (const auto& f : monomial_basis(spec, static_cast<std::size_t>(points))) {
    int shift = points + g - 1 - f.order;
    const LSeries& y = local.Y_power(f.j);
    std::vector<LambdaPoly> row(static_cast<std::size_t>(top) + 1);
    for (int k = shift; k <= top; ++k) row[static_cast<std::size_t>(k)] = y.coefficient(k - shift);
    h.push_back(std::move(row));
  }
  return h;
}

// det(H[i][mu_m + N - m]); zero when some column index runs past the table.
LambdaPoly basis_minor(const std::vector<std::vector<LambdaPoly>>& h, const Partition& mu) {
  const std::size_t N = h.size();
  std::vector<std::vector<LambdaPoly>> m(N, std::vector<LambdaPoly>(N));
  for (std::size_t c = 0; c < N; ++c) {
    std::size_t col = static_cast<std::size_t>(mu[c]) + N - 1 - c;
    if (col >= h[0].size()) return LambdaPoly();
    for (std::size_t r = 0; r < N; ++r) m[r][c] = h[r][col];
  }
  return laplace_determinant(m, LambdaPoly(Rational(1)));
}

// Partitions mu with |mu| <= top and at most N parts.
std::vector<Partition> small_partitions(int top, int N) {
  std::vector<Partition> out;
  for (int d = 0; d <= top; ++d)
    for (auto& p : partitions_of(d, N)) out.push_back(p.padded(static_cast<std::size_t>(N)));
  return out;
}

void require_symmetric(const LSeries& s, const char* what) {
  for (std::size_t i = 0; i + 1 < s.vars().size(); ++i)
    if (!(series_swap(s, i, i + 1) == s)) throw InvariantViolation(std::string(what) + ": result is not symmetric");
}

// Series substitution T_k -> images[k-1], with cached powers.
class Substitution {
 public:
  Substitution(std::vector<LSeries> images, VarSetPtr target, int cutoff)
      : images_(std::move(images)), target_(std::move(target)), cutoff_(cutoff), powers_(images_.size()) {}

  LSeries operator()(const LSeries& s) const {
    LSeries out(target_, std::min(cutoff_, s.cutoff()));
    for (const auto& t : s.terms()) {
      LSeries term = LSeries::constant(target_, out.cutoff(), t.coeff);
      for (std::size_t k = 0; k < images_.size(); ++k)
        if (int e = t.mono[k]; e != 0) term *= power(k, e);
      out += term;
    }
    return out;
  }

 private:
  const LSeries& power(std::size_t k, int e) const {
    auto& cache = powers_[k];
    if (cache.empty()) cache.push_back(LSeries::constant(target_, cutoff_, LambdaPoly(Rational(1))));
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * images_[k]);
    return cache[static_cast<std::size_t>(e)];
  }

  std::vector<LSeries> images_;
  VarSetPtr target_;
  int cutoff_;
  mutable std::vector<std::vector<LSeries>> powers_;
};

// Restriction of T_1..T_K (free power sums) to N points: T_k for k > N is
// eliminated with Newton's identities and e_k = 0 for k > N.
Substitution restrict_to_points(int K, int N, int cutoff) {
  VarSetPtr target = power_sum_vars(N);
  auto T = [&](int k) { return LSeries::variable(target, cutoff, static_cast<std::size_t>(k - 1)); };
  std::vector<LSeries> p(static_cast<std::size_t>(std::max(K, N)) + 1, LSeries(target, cutoff));
  std::vector<LSeries> e(static_cast<std::size_t>(N) + 1, LSeries(target, cutoff));
  e[0] = LSeries::constant(target, cutoff, LambdaPoly(Rational(1)));
  for (int k = 1; k <= N; ++k) {
    p[k] = T(k).scaled(LambdaPoly(Rational(k)));
    LSeries acc(target, cutoff);
    for (int i = 1; i <= k; ++i) {
      LSeries term = e[k - i] * p[i];
      acc = i % 2 ? acc + term : acc - term;
    }
    e[k] = acc.scaled(LambdaPoly(make_rational(1, k)));
  }
  for (int k = N + 1; k <= K; ++k) {
    LSeries acc(target, cutoff);
    for (int i = 1; i <= N; ++i) {
      LSeries term = e[i] * p[k - i];
      acc = i % 2 ? acc + term : acc - term;
    }
    p[k] = acc;
  }
  std::vector<LSeries> images;
  for (int k = 1; k <= K; ++k) images.push_back(p[k].scaled(LambdaPoly(make_rational(1, k))));
  return Substitution(std::move(images), target, cutoff);
}

int free_rank(int cutoff, int N) { return std::max({cutoff, N, 1}); }

}  // namespace

PrimeSeries prime_function_series(const CurveSpec& spec, const OmegaHatTable& omega, int cutoff) {
  if (cutoff < 0) throw std::invalid_argument("prime_function_series: negative cutoff");
  if (omega.cutoff < cutoff - 2) throw std::invalid_argument("prime_function_series: omega-hat table too short");
  const VarSetPtr& vars = t_pair_vars();
  LocalExpansion local(spec, cutoff);
  const std::size_t first[] = {0}, second[] = {1};
  LSeries unit = local.U().truncated(cutoff);
  LSeries u1 = series_embed(unit, vars, first), u2 = series_embed(unit, vars, second);

  std::vector<std::pair<Monomial, LambdaPoly>> terms;
  auto t1 = [](int e) { return Monomial::variable(0, e); };
  auto t2 = [](int e) { return Monomial::variable(1, e); };
  for (const auto& [kl, a] : omega.a) {
    auto [k, l] = kl;
    if (k + l + 2 > cutoff) continue;
    LambdaPoly c = a * power_sum_count(spec, k + 1) * LambdaPoly(make_rational(1, (k + 1) * (l + 1)));
    // (t2^(k+1) - t1^(k+1)) (t2^(l+1) - t1^(l+1))
    terms.emplace_back(t2(k + l + 2), c);
    terms.emplace_back(t2(k + 1) * t1(l + 1), -c);
    terms.emplace_back(t1(k + 1) * t2(l + 1), -c);
    terms.emplace_back(t1(k + l + 2), c);
  }
  LSeries R = LSeries::from_terms(vars, cutoff, std::move(terms));
  LSeries square = u1 * u2 * series_exp(R);
  if (square.constant_term() != LambdaPoly(Rational(1)))
    throw InvariantViolation("prime function: unit constant term is not 1");
  return PrimeSeries{spec.genus(), series_sqrt(square)};
}

PrimeSeries prime_function_series(const CurveSpec& spec, int cutoff) {
  return prime_function_series(spec, fundamental_form(spec, std::max(cutoff - 2, 0)).a_table, cutoff);
}

LSeries prime_function_at_infinity(const PrimeSeries& prime) {
  return restrict_first_zero(prime.core).times_monomial(Monomial::variable(0, prime.genus));
}

LSeries assemble_F(const CurveSpec& spec, const PrimeSeries& prime, int points, int cutoff) {
  const int N = points;
  if (N < std::max(spec.genus(), 1)) throw InputError("number of points must be at least the genus");
  if (prime.core.cutoff() < cutoff) throw std::invalid_argument("assemble_F: prime series too short");
  VarSetPtr vars = t_point_vars(N);

  auto h = scaled_basis_coefficients(spec, N, cutoff + N - 1);
  LSeries G(vars, cutoff);
  for (const auto& mu : small_partitions(cutoff, N)) {
    LambdaPoly minor = basis_minor(h, mu);
    if (minor.is_zero()) continue;
    G += LSeries::from_rational_poly(vars, cutoff, schur_s(mu, N)).scaled(minor);
  }

  LSeries e0 = series_pow(restrict_first_zero(prime.core).truncated(cutoff), N);
  LSeries unit = LSeries::constant(vars, cutoff, LambdaPoly(Rational(1)));
  for (std::size_t i = 0; i < static_cast<std::size_t>(N); ++i) {
    const std::size_t at[] = {i};
    unit *= series_embed(e0, vars, at);
  }
  LSeries core = prime.core.truncated(cutoff);
  LSeries pairs = LSeries::constant(vars, cutoff, LambdaPoly(Rational(1)));
  for (std::size_t i = 0; i < static_cast<std::size_t>(N); ++i)
    for (std::size_t j = i + 1; j < static_cast<std::size_t>(N); ++j) {
      const std::size_t at[] = {i, j};
      pairs *= series_embed(core, vars, at);
    }
  LSeries F = G * unit * series_inverse(pairs);
  require_symmetric(F, "assemble_F");
  return F;
}

LSeries power_sum_rewrite(const LSeries& symmetric) {
  const int N = static_cast<int>(symmetric.vars().size());
  const int cutoff = symmetric.cutoff();
  for (const auto& w : symmetric.vars().weights())
    if (w != 1) throw std::invalid_argument("power_sum_rewrite: expected t-variables of weight 1");
  for (std::size_t i = 0; i + 1 < static_cast<std::size_t>(N); ++i)
    if (!(series_swap(symmetric, i, i + 1) == symmetric))
      throw std::invalid_argument("power_sum_rewrite: input is not symmetric");

  VarSetPtr tv = symmetric.vars_ptr();
  VarSetPtr Tv = power_sum_vars(N);
  // Elementary symmetric functions on both sides.
  std::vector<LSeries> e_t, e_T;
  e_t.push_back(LSeries::constant(tv, cutoff, LambdaPoly(Rational(1))));
  e_T.push_back(LSeries::constant(Tv, cutoff, LambdaPoly(Rational(1))));
  std::vector<LSeries> p_T;
  p_T.push_back(LSeries(Tv, cutoff));
  for (int k = 1; k <= N; ++k) {
    p_T.push_back(LSeries::variable(Tv, cutoff, static_cast<std::size_t>(k - 1)).scaled(LambdaPoly(Rational(k))));
    LSeries acc(Tv, cutoff);
    for (int i = 1; i <= k; ++i) {
      LSeries term = e_T[k - i] * p_T[i];
      acc = i % 2 ? acc + term : acc - term;
    }
    e_T.push_back(acc.scaled(LambdaPoly(make_rational(1, k))));
    // e_k(t) from the generating product prod (1 + t_i z)
    std::vector<std::pair<Monomial, LambdaPoly>> terms;
    std::vector<int> pick(static_cast<std::size_t>(N), 0);
    std::fill(pick.end() - k, pick.end(), 1);
    do {
      Monomial m;
      for (std::size_t v = 0; v < pick.size(); ++v)
        if (pick[v]) m.set(v, 1);
      terms.emplace_back(m, LambdaPoly(Rational(1)));
    } while (std::next_permutation(pick.begin(), pick.end()));
    e_t.push_back(LSeries::from_terms(tv, cutoff, std::move(terms)));
  }

  LSeries rest = symmetric, out(Tv, cutoff);
  while (!rest.is_zero()) {
    // lex-largest monomial in the lowest layer
    int layer = rest.terms().front().degree;
    const auto* lead = &rest.terms().front();
    for (const auto& t : rest.terms())
      if (t.degree == layer) lead = &t;
    Monomial m = lead->mono;
    LambdaPoly c = lead->coeff;
    LSeries pt = LSeries::constant(tv, cutoff, c), pT = LSeries::constant(Tv, cutoff, c);
    for (int k = 1; k <= N; ++k) {
      int e = m[k - 1] - (k < N ? m[k] : 0);
      if (e < 0) throw std::invalid_argument("power_sum_rewrite: input is not symmetric");
      if (e == 0) continue;
      pt *= series_pow(e_t[k], e);
      pT *= series_pow(e_T[k], e);
    }
    rest -= pt;
    out += pT;
  }
  return out;
}

std::vector<LSeries> u_from_t(const CurveSpec& spec, int points, int cutoff) {
  const int K = free_rank(cutoff, points);
  Substitution restrict = restrict_to_points(K, points, cutoff);
  VarSetPtr free = power_sum_vars(K);
  std::vector<LSeries> out;
  for (const auto& du : holomorphic_differentials(spec, std::max(cutoff - 1, 0))) {
    LSeries u = series_antiderivative(du);
    std::vector<std::pair<Monomial, LambdaPoly>> terms;
    for (const auto& t : u.terms()) {
      int m = t.mono[0];
      if (m > cutoff) continue;
      terms.emplace_back(Monomial::variable(static_cast<std::size_t>(m - 1)), t.coeff * LambdaPoly(Rational(m)));
    }
    out.push_back(restrict(LSeries::from_terms(free, cutoff, std::move(terms))));
  }
  return out;
}

LSeries F_in_power_sums(const CurveSpec& spec, const PrimeSeries& prime, int points, int cutoff) {
  const int N = points;
  if (N < std::max(spec.genus(), 1)) throw InputError("number of points must be at least the genus");
  if (prime.core.cutoff() < cutoff) throw std::invalid_argument("F_in_power_sums: prime series too short");
  const int K = free_rank(cutoff, N);
  VarSetPtr free = power_sum_vars(K);
  auto T = [&](int k) { return Monomial::variable(static_cast<std::size_t>(k - 1)); };

  auto h = scaled_basis_coefficients(spec, N, cutoff + N - 1);
  LSeries G(free, cutoff);
  for (const auto& mu : small_partitions(cutoff, N)) {
    LambdaPoly minor = basis_minor(h, mu);
    if (minor.is_zero()) continue;
    G += LSeries::from_rational_poly(free, cutoff, schur_S(mu)).scaled(minor);
  }

  // sum_i log e0(t_i)^N - sum_{i<j} log core(t_i, t_j), in power sums.
  // With p_0 = N and p_a = a T_a:
  //   sum_i l(t_i)            = sum_k l_k p_k
  //   sum_{i<j} g(t_i, t_j)  = (sum_ab g_ab p_a p_b - sum_k (sum_{a+b=k} g_ab) p_k) / 2.
  LSeries log_core = series_log(prime.core.truncated(cutoff));
  LSeries log_e0 = series_log(restrict_first_zero(prime.core).truncated(cutoff));
  std::vector<std::pair<Monomial, LambdaPoly>> terms;
  const LambdaPoly half(make_rational(1, 2));
  for (const auto& t : log_e0.terms()) {
    int k = t.mono[0];
    terms.emplace_back(T(k), t.coeff * LambdaPoly(Rational(N * k)));
  }
  for (const auto& t : log_core.terms()) {
    int a = t.mono[0], b = t.mono[1];
    LambdaPoly c = t.coeff * half;
    // -(1/2) g_ab p_a p_b
    Monomial m;
    LambdaPoly scale(Rational(1));
    for (int x : {a, b}) {
      if (x == 0) scale *= LambdaPoly(Rational(N));
      else {
        m *= T(x);
        scale *= LambdaPoly(Rational(x));
      }
    }
    terms.emplace_back(m, -c * scale);
    // +(1/2) g_ab p_(a+b)
    terms.emplace_back(T(a + b), c * LambdaPoly(Rational(a + b)));
  }
  LSeries exponent = LSeries::from_terms(free, cutoff, std::move(terms));
  LSeries F = G * series_exp(exponent);
  return restrict_to_points(K, N, cutoff)(F);
}

int SigmaExpansion::weight(const Alpha& a) const {
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += w[i] * a[i];
  return d;
}

int default_points(int genus) { return std::max(1, 2 * genus - 1); }

namespace {

// All alpha with sum w_i alpha_i == d.
void alphas_of_weight(const std::vector<int>& w, int d, std::size_t i, Alpha& cur, std::vector<Alpha>& out) {
  if (i == w.size()) {
    if (d == 0) out.push_back(cur);
    return;
  }
  for (int k = 0; k * w[i] <= d; ++k) {
    cur[i] = k;
    alphas_of_weight(w, d - k * w[i], i + 1, cur, out);
  }
  cur[i] = 0;
}

void check_sigma_arguments(const CurveSpec& spec, int degree, int points) {
  const int g = spec.genus();
  if (points != 0 && points < default_points(g))
    throw InputError("number of points must be at least " + std::to_string(default_points(g)));
  int weight = gap_sequence(spec.n(), spec.s()).partition.weight();
  if (degree < weight) throw InputError("degree must be at least |lambda(n,s)| = " + std::to_string(weight));
}

}  // namespace

SigmaExpansion sigma_expansion(const CurveSpec& spec, int degree, int points) {
  check_sigma_arguments(spec, degree, points);
  return sigma_expansion(spec, fundamental_form(spec, std::max(degree - 2, 0)).a_table, degree, points);
}

SigmaExpansion sigma_expansion(const CurveSpec& spec, const OmegaHatTable& omega, int degree, int points) {
  GapData gaps = gap_sequence(spec.n(), spec.s());
  const int g = gaps.genus;
  check_sigma_arguments(spec, degree, points);
  const int N = points == 0 ? default_points(g) : points;

  PrimeSeries prime = prime_function_series(spec, omega, degree);
  LSeries residual = F_in_power_sums(spec, prime, N, degree);
  std::vector<LSeries> u = u_from_t(spec, N, degree);

  SigmaExpansion out;
  out.n = spec.n();
  out.s = spec.s();
  out.genus = g;
  out.points = N;
  out.degree = degree;
  out.w = gaps.w;
  out.partition = gaps.partition;

  std::vector<std::vector<LSeries>> powers(u.size());
  auto power = [&](std::size_t i, int e) -> const LSeries& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(LSeries::constant(residual.vars_ptr(), degree, LambdaPoly(Rational(1))));
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * u[i]);
    return cache[static_cast<std::size_t>(e)];
  };

  for (int d = 0; d <= degree; ++d) {
    std::vector<Alpha> layer;
    Alpha cur(static_cast<std::size_t>(g), 0);
    alphas_of_weight(gaps.w, d, 0, cur, layer);
    for (const auto& alpha : layer) {
      Monomial m;
      for (int i = 0; i < g; ++i) m.set(static_cast<std::size_t>(gaps.w[i] - 1), alpha[i]);
      LambdaPoly c = residual.coefficient(m);
      if (c.is_zero()) continue;
      LSeries term = LSeries::constant(residual.vars_ptr(), degree, c);
      for (std::size_t i = 0; i < alpha.size(); ++i)
        if (alpha[i]) term *= power(i, alpha[i]);
      residual -= term;
      out.coeffs.emplace(alpha, c);
    }
    if (!residual.homogeneous_part(d).is_zero()) throw SigmaResidualError(d);
  }
  return out;
}

std::complex<double> constant_CN(int n, int s, int N) {
  validate_ns(n, s);
  if (N < 1) throw std::invalid_argument("constant_CN: N must be positive");
  using cd = std::complex<double>;
  auto eps = [n](long k) { return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k % n) / n); };
  auto eps_r = [&](int r) {
    cd prod = 1.0;
    for (int i = 1; i < n; ++i)
      for (int j = i + 1; j < n; ++j) prod *= eps(static_cast<long>(r) * i) - eps(static_cast<long>(r) * j);
    return prod;
  };
  const long g = genus_of(n, s), M = N, nn = n;
  const long e = M * (M - 1) / 2 - M * (M - 1) * (nn - 1) * (nn - 2) / 4 + M * nn * (nn - 1) / 2 - g * M * nn * (nn - 3) / 2;
  const double sign = (nn * M * (M - 1) / 2) % 2 ? -1.0 : 1.0;
  return sign * std::pow(eps_r(s) / eps_r(1), N) * eps(((e % nn) + nn) % nn);
}

bool parity_check(const SigmaExpansion& e) {
  const int lam = e.partition.weight();
  for (const auto& [alpha, c] : e.coeffs) {
    int total = 0;
    for (int a : alpha) total += a;
    if ((total - lam) % 2 != 0) return false;
  }
  return true;
}

}  // namespace nssigma
