#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>

namespace nssigma {

// Exponent vector over at most kCapacity variables. Negative exponents are
// allowed so the same type serves Laurent series.
class Monomial {
 public:
  static constexpr std::size_t kCapacity = 32;

  Monomial() = default;

  static Monomial variable(std::size_t index, int power = 1) {
    Monomial m;
    m.set(index, power);
    return m;
  }

  int operator[](std::size_t i) const { return exps_[i]; }

  void set(std::size_t i, int e) {
    if (i >= kCapacity) throw std::out_of_range("monomial variable index exceeds capacity");
    if (e < -127 || e > 127) throw std::overflow_error("monomial exponent out of range");
    exps_[i] = static_cast<std::int8_t>(e);
  }

  Monomial& operator*=(const Monomial& o) {
    for (std::size_t i = 0; i < kCapacity; ++i) {
      int e = exps_[i] + o.exps_[i];
      if (e < -127 || e > 127) throw std::overflow_error("monomial exponent out of range");
      exps_[i] = static_cast<std::int8_t>(e);
    }
    return *this;
  }
  friend Monomial operator*(Monomial a, const Monomial& b) { return a *= b; }

  Monomial& operator/=(const Monomial& o) {
    for (std::size_t i = 0; i < kCapacity; ++i) {
      int e = exps_[i] - o.exps_[i];
      if (e < -127 || e > 127) throw std::overflow_error("monomial exponent out of range");
      exps_[i] = static_cast<std::int8_t>(e);
    }
    return *this;
  }
  friend Monomial operator/(Monomial a, const Monomial& b) { return a /= b; }

  // True when every exponent of this is <= the matching exponent of o.
  bool divides(const Monomial& o) const {
    for (std::size_t i = 0; i < kCapacity; ++i)
      if (exps_[i] > o.exps_[i]) return false;
    return true;
  }

  bool is_one() const {
    for (auto e : exps_)
      if (e != 0) return false;
    return true;
  }

  bool has_negative() const {
    for (auto e : exps_)
      if (e < 0) return true;
    return false;
  }

  int degree(std::span<const int> weights) const {
    int d = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) d += weights[i] * exps_[i];
    return d;
  }

  int total_degree() const {
    int d = 0;
    for (auto e : exps_) d += e;
    return d;
  }

  // One past the highest index with a nonzero exponent.
  std::size_t span() const {
    for (std::size_t i = kCapacity; i > 0; --i)
      if (exps_[i - 1] != 0) return i;
    return 0;
  }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ull;
    for (auto e : exps_) {
      h ^= static_cast<std::uint8_t>(e);
      h *= 1099511628211ull;
    }
    return h;
  }

  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;

 private:
  std::array<std::int8_t, kCapacity> exps_{};
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

}  // namespace nssigma
