#include "nssigma/fundform.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "nssigma/linalg.hpp"

namespace nssigma {

OmegaHatAsymmetry::OmegaHatAsymmetry(int i_, int j_)
    : InvariantViolation("omega-hat asymmetric at (i,j)=(" + std::to_string(i_) + "," + std::to_string(j_) + ")"),
      i(i_),
      j(j_) {}

int numerator_weight(const CurveSpec& spec, const BiIndex& k) {
  return 2 * (spec.n() - 1) * spec.s() - spec.n() * (k.i1 + k.i2) - spec.s() * (k.j1 + k.j2);
}

int c_weight(const CurveSpec& spec, const BiIndex& k) {
  return 2 * spec.n() * spec.s() - spec.n() * (k.i1 + k.i2 + 2) - spec.s() * (k.j1 + k.j2 + 2);
}

std::vector<std::pair<int, int>> holomorphic_monomials(const CurveSpec& spec) {
  std::vector<std::pair<int, int>> out;
  for (auto [a, b] : holomorphic_index_pairs(spec.n(), spec.s())) out.emplace_back(a - 1, spec.n() - 1 - b);
  return out;
}

namespace {

// Polynomials in x1, y1, x2, y2 over the lambda ring.
using Poly4 = SparsePoly<LambdaPoly>;
constexpr std::size_t X1 = 0, Y1 = 1, X2 = 2, Y2 = 3;

Poly4 power(std::size_t var, int e, const LambdaPoly& c = LambdaPoly(Rational(1))) {
  return Poly4::monomial(Monomial::variable(var, e), c);
}

// f(x,y) = sum_j f_j(x) y^j with f_n = 1.
Poly4 f_coefficient(const CurveSpec& spec, int j, std::size_t xvar) {
  if (j == spec.n()) return power(xvar, 0);
  Poly4 out;
  if (j == 0) out -= power(xvar, spec.s());
  for (const auto& ij : spec.support()) {
    if (ij.j != j) continue;
    LambdaPoly l = spec.lambda(ij);
    if (!l.is_zero()) out -= power(xvar, ij.i, l);
  }
  return out;
}

// Lowers the y2-degree below n with y2^n = -sum_{j<n} f_j(x2) y2^j.
Poly4 reduce_y2(const CurveSpec& spec, Poly4 p) {
  const int n = spec.n();
  Poly4 tail;
  for (int j = 0; j < n; ++j) tail -= f_coefficient(spec, j, X2) * power(Y2, j);
  for (;;) {
    Poly4 low, high;
    for (const auto& [m, c] : p.terms()) {
      if (m[Y2] >= n) {
        Monomial q = m;
        q.set(Y2, m[Y2] - n);
        high += Poly4::monomial(q, c);
      } else {
        low += Poly4::monomial(m, c);
      }
    }
    if (high.is_zero()) return low;
    p = low + high * tail;
  }
}

BiIndex bi_index(const Monomial& m) { return {m[X1], m[Y1], m[X2], m[Y2]}; }

}  // namespace

BiTable omega_one_form_coeffs(const CurveSpec& spec) {
  const int n = spec.n();
  std::vector<Poly4> f;
  for (int j = 0; j <= n; ++j) f.push_back(f_coefficient(spec, j, X2));
  // A = sum_k y1^k [f(z,w)/w^(k+1)]_+ at (x2,y2)
  Poly4 a;
  for (int k = 0; k < n; ++k)
    for (int j = k + 1; j <= n; ++j) a += power(Y1, k) * f[j] * power(Y2, j - k - 1);
  Poly4 fy, fx;
  for (int j = 0; j <= n; ++j) {
    if (j > 0) fy += f[j].scaled(LambdaPoly(Rational(j))) * power(Y2, j - 1);
    fx += f[j].derivative(X2) * power(Y2, j);
  }
  Poly4 x1_minus_x2 = power(X1, 1) - power(X2, 1);
  Poly4 num = x1_minus_x2 * (a.derivative(X2) * fy - a.derivative(Y2) * fx) + a * fy;
  Poly4 reduced = reduce_y2(spec, num);
  BiTable out;
  for (const auto& [m, c] : reduced.terms()) out.emplace(bi_index(m), c);
  return out;
}

BiTable total_numerator(const CurveSpec&, const BiTable& numerator, const BiTable& c) {
  BiTable out = numerator;
  auto add = [&](BiIndex k, const LambdaPoly& v) {
    auto& slot = out[k];
    slot += v;
    if (slot.is_zero()) out.erase(k);
  };
  for (const auto& [k, v] : c) {
    add({k.i1 + 2, k.j1, k.i2, k.j2}, v);
    add({k.i1 + 1, k.j1, k.i2 + 1, k.j2}, v.scaled(Rational(-2)));
    add({k.i1, k.j1, k.i2 + 2, k.j2}, v);
  }
  return out;
}

BiTable solve_c(const CurveSpec& spec, const BiTable& numerator) {
  const int n = spec.n();
  std::map<int, std::vector<BiIndex>> unknowns;
  for (auto [p, q] : holomorphic_monomials(spec))
    for (int l = 0; l < n; ++l)
      for (int k = 0;; ++k) {
        BiIndex u{p, q, k, l};
        int w = c_weight(spec, u);
        if (w < 0) break;
        unknowns[w].push_back(u);
      }
  std::map<BiIndex, std::size_t> column;
  for (auto& [w, list] : unknowns) {
    std::sort(list.begin(), list.end());
    for (std::size_t k = 0; k < list.size(); ++k) column[list[k]] = k;
  }

  // One equation per unordered pair {m, swap(m)}, keyed by its smaller member.
  std::map<int, std::set<BiIndex>> equations;
  auto add_equation = [&](const BiIndex& m) {
    BiIndex s = m.swapped();
    if (m == s) return;
    const BiIndex& key = std::min(m, s);
    equations[numerator_weight(spec, key)].insert(key);
  };
  for (const auto& [m, v] : numerator) add_equation(m);
  for (const auto& [u, col] : column) {
    add_equation({u.i1 + 2, u.j1, u.i2, u.j2});
    add_equation({u.i1 + 1, u.j1, u.i2 + 1, u.j2});
    add_equation({u.i1, u.j1, u.i2 + 2, u.j2});
  }

  BiTable out;
  for (const auto& [w, rows] : equations) {
    const std::vector<BiIndex> empty;
    auto it = unknowns.find(w);
    const auto& cols = it == unknowns.end() ? empty : it->second;
    std::vector<std::vector<Rational>> matrix;
    std::vector<LambdaPoly> rhs;
    for (const auto& m : rows) {
      std::vector<Rational> row(cols.size());
      // coefficient of x1^i1 y1^j1 x2^i2 y2^j2 in (x1-x2)^2 sum c ...
      auto accumulate = [&](const BiIndex& e, int sign) {
        const std::pair<int, BiIndex> parts[] = {{1, {e.i1 - 2, e.j1, e.i2, e.j2}},
                                                 {-2, {e.i1 - 1, e.j1, e.i2 - 1, e.j2}},
                                                 {1, {e.i1, e.j1, e.i2 - 2, e.j2}}};
        for (const auto& [coef, idx] : parts) {
          auto c = column.find(idx);
          if (c != column.end()) row[c->second] += sign * coef;
        }
      };
      BiIndex s = m.swapped();
      accumulate(m, 1);
      accumulate(s, -1);
      matrix.push_back(std::move(row));
      rhs.push_back(table_at(numerator, s) - table_at(numerator, m));
    }
    std::vector<LambdaPoly> x;
    try {
      x = solve_rref(std::move(matrix), std::move(rhs), cols.size());
    } catch (const InconsistentSystem&) {
      throw InvariantViolation("symmetry equations for c are inconsistent at weight " + std::to_string(w));
    }
    for (std::size_t k = 0; k < cols.size(); ++k)
      if (!x[k].is_zero()) out.emplace(cols[k], std::move(x[k]));
  }
  return out;
}

std::vector<LSeries> dr_differentials(const CurveSpec& spec, const BiTable& c, int cutoff) {
  const int g = spec.genus();
  const int work = std::max(cutoff, -1);
  int precision = 0;
  for (const auto& [k, v] : c)
    precision = std::max(precision, work - (2 * g - 2 - spec.n() * k.i2 - spec.s() * k.j2));
  LocalExpansion local(spec, precision);
  std::vector<LSeries> out;
  int index = 0;
  for (auto [p, q] : holomorphic_monomials(spec)) {
    ++index;
    LSeries dr(t_vars(), work);
    for (auto it = c.lower_bound({p, q, 0, 0}); it != c.end() && it->first.i1 == p && it->first.j1 == q; ++it)
      dr -= local.differential(it->first.i2, it->first.j2, work).scaled(it->second);
    if (!dr.coefficient(-1).is_zero())
      throw InvariantViolation("dr_" + std::to_string(index) + " has a nonzero residue at infinity");
    out.push_back(dr.truncated(cutoff));
  }
  return out;
}

OmegaHatTable omega_hat_series(const CurveSpec& spec, const BiTable& numerator, const BiTable& c, int cutoff) {
  if (cutoff < 0) throw std::invalid_argument("omega_hat_series: cutoff must be nonnegative");
  const int n = spec.n(), s = spec.s(), g = spec.genus();
  const int top = cutoff + 2 * n;
  // Each x^i y^j dx/f_y contributes t^(2n+2g-2-ni-sj) Y^j U after clearing
  // (x1-x2)^2 = (t2^n - t1^n)^2 / (t1 t2)^(2n); an entry of weight w needs
  // the units only through t^(cutoff+2-w).
  const int unit_precision = cutoff + 2;
  LocalExpansion local(spec, unit_precision);
  std::vector<LSeries> units;
  for (int j = 0; j < n; ++j) units.push_back(local.Y_power(j) * local.U());

  std::map<std::pair<int, int>, LambdaPoly> acc;
  for (const auto& [m, coeff] : total_numerator(spec, numerator, c)) {
    const int budget = unit_precision - numerator_weight(spec, m);
    if (budget < 0) continue;
    const int v1 = 2 * n + 2 * g - 2 - n * m.i1 - s * m.j1;
    const int v2 = 2 * n + 2 * g - 2 - n * m.i2 - s * m.j2;
    for (const auto& t1 : units[m.j1].terms()) {
      if (t1.degree > budget) break;
      LambdaPoly partial = coeff * t1.coeff;
      for (const auto& t2 : units[m.j2].terms()) {
        if (t1.degree + t2.degree > budget) break;
        acc[{v1 + t1.degree, v2 + t2.degree}] += partial * t2.coeff;
      }
    }
  }
  // subtract ((t1^n - t2^n)/(t1 - t2))^2
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) acc[{2 * n - 2 - a - b, a + b}] -= LambdaPoly(Rational(1));
  std::erase_if(acc, [](const auto& kv) { return kv.second.is_zero(); });

  auto at = [&](int i, int j) {
    auto it = acc.find({i, j});
    return it == acc.end() ? LambdaPoly() : it->second;
  };
  for (int d = 0; d <= top; ++d)
    for (int i = 0; i <= d; ++i)
      if (!(at(i, d - i) == at(d - i, i))) throw OmegaHatAsymmetry(i, d - i);
  for (const auto& [k, v] : acc)
    if (k.first < 0 || k.second < 0) throw InvariantViolation("omega-hat has a pole at infinity");

  // a_ij = C_{i+2n,j} + 2 a_{i+n,j-n} - a_{i+2n,j-2n}, by total degree then j
  OmegaHatTable out;
  out.cutoff = cutoff;
  auto a = [&](int i, int j) { return j < 0 ? LambdaPoly() : out.at(i, j); };
  for (int d = 0; d <= cutoff; ++d)
    for (int j = 0; j <= d; ++j) {
      int i = d - j;
      LambdaPoly v = at(i + 2 * n, j) + a(i + n, j - n).scaled(Rational(2)) - a(i + 2 * n, j - 2 * n);
      if (!v.is_zero()) out.a.emplace(std::make_pair(i, j), std::move(v));
    }
  for (int d = 0; d <= top; ++d)
    for (int k = 0; k < std::min(2 * n, d + 1); ++k) {
      int l = d - k;
      LambdaPoly expected = a(k, l - 2 * n) - a(k - n, l - n).scaled(Rational(2));
      if (!(at(k, l) == expected))
        throw InvariantViolation("omega-hat is not regular after removing the double pole");
    }
  for (const auto& [ij, v] : out.a)
    if (!(out.at(ij.second, ij.first) == v)) throw OmegaHatAsymmetry(ij.first, ij.second);
  return out;
}

LambdaPoly residue_pairing(const LSeries& eta, const LSeries& eta2) {
  if (eta.cutoff() >= -1 && !eta.coefficient(-1).is_zero())
    throw std::domain_error("residue_pairing: first differential has a residue");
  LSeries product = series_antiderivative(eta) * eta2;
  if (product.cutoff() < -1) throw std::domain_error("residue_pairing: series too short to determine the residue");
  return product.coefficient(-1);
}

FundFormData fundamental_form(const CurveSpec& spec, int cutoff) {
  FundFormData out;
  out.numerator = omega_one_form_coeffs(spec);
  out.c_table = solve_c(spec, out.numerator);
  out.dr = dr_differentials(spec, out.c_table, cutoff);
  out.a_table = omega_hat_series(spec, out.numerator, out.c_table, cutoff);
  return out;
}

}  // namespace nssigma
