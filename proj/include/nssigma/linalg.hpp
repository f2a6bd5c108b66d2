#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rational.hpp"
#include "series.hpp"

namespace nssigma {

// Cofactor expansion along rows, memoized over the set of unused columns.
// Works over any commutative ring R with +, -, * and a free is_zero(R).
template <class R>
R laplace_determinant(const std::vector<std::vector<R>>& m, const R& one) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw std::invalid_argument("determinant of a non-square matrix");
  if (n == 0) return one;
  if (n > 20) throw std::invalid_argument("determinant: matrix too large for cofactor expansion");
  std::vector<std::optional<R>> memo(std::size_t{1} << n);
  // minor over the last popcount(mask) rows restricted to the columns in mask
  auto minor = [&](auto&& self, std::uint32_t mask) -> R {
    if (mask == 0) return one;
    auto& slot = memo[mask];
    if (slot) return *slot;
    std::size_t row = n - static_cast<std::size_t>(std::popcount(mask));
    R acc = one - one;
    int position = 0;
    for (std::size_t col = 0; col < n; ++col) {
      if (!(mask & (1u << col))) continue;
      const R& entry = m[row][col];
      if (!is_zero(entry)) {
        R term = entry * self(self, mask & ~(1u << col));
        if (position % 2)
          acc = acc - term;
        else
          acc = acc + term;
      }
      ++position;
    }
    slot = acc;
    return acc;
  };
  return minor(minor, static_cast<std::uint32_t>((std::uint64_t{1} << n) - 1));
}

inline Rational rational_determinant(const std::vector<std::vector<Rational>>& m) {
  return laplace_determinant(m, Rational(1));
}

template <class C>
TruncSeries<C> series_determinant(const std::vector<std::vector<TruncSeries<C>>>& m) {
  if (m.empty()) throw std::invalid_argument("determinant of an empty matrix");
  for (const auto& row : m)
    if (row.size() != m.size()) throw std::invalid_argument("determinant of a non-square matrix");
  int cutoff = m[0][0].cutoff();
  for (const auto& row : m)
    for (const auto& e : row) {
      e.require_same_vars(m[0][0]);
      cutoff = std::min(cutoff, e.cutoff());
    }
  return laplace_determinant(m, TruncSeries<C>::constant(m[0][0].vars_ptr(), cutoff, C(1)));
}

struct InconsistentSystem : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Solves A x = b by reduced row echelon form. Pivots are taken greedily from
// the left, so the pivot columns are the lexicographically smallest possible;
// free variables are set to zero. V must support V - V * V(Rational).
template <class V>
std::vector<V> solve_rref(std::vector<std::vector<Rational>> a, std::vector<V> b, std::size_t columns) {
  if (a.size() != b.size()) throw std::invalid_argument("solve_rref: row count mismatch");
  for (const auto& row : a)
    if (row.size() != columns) throw std::invalid_argument("solve_rref: ragged matrix");
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t col = 0; col < columns && rank < a.size(); ++col) {
    std::size_t p = rank;
    while (p < a.size() && sgn(a[p][col]) == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[rank]);
    std::swap(b[p], b[rank]);
    Rational inv = 1 / a[rank][col];
    for (auto& x : a[rank]) x *= inv;
    b[rank] = b[rank] * V(inv);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == rank || sgn(a[r][col]) == 0) continue;
      Rational f = a[r][col];
      for (std::size_t k = col; k < columns; ++k) a[r][k] -= f * a[rank][k];
      b[r] = b[r] - b[rank] * V(f);
    }
    pivots.push_back(col);
    ++rank;
  }
  for (std::size_t r = rank; r < a.size(); ++r)
    if (!is_zero(b[r])) throw InconsistentSystem("inconsistent linear system");
  std::vector<V> x(columns, V());
  for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = b[k];
  return x;
}

}  // namespace nssigma
