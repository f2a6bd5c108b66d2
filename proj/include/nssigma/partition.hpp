#pragma once

#include <algorithm>
#include <climits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace nssigma {

// Weakly decreasing sequence of nonnegative integers. Trailing zeros are kept
// as given (they change the size of Jacobi-Trudi determinants) but are
// ignored by comparison.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] < 0) throw std::invalid_argument("partition parts must be nonnegative");
      if (i > 0 && parts_[i] > parts_[i - 1]) throw std::invalid_argument("partition parts must be weakly decreasing");
    }
  }

  const std::vector<int>& parts() const { return parts_; }

  std::vector<int> trimmed() const {
    std::vector<int> t = parts_;
    while (!t.empty() && t.back() == 0) t.pop_back();
    return t;
  }

  int length() const { return static_cast<int>(trimmed().size()); }
  int weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
  int operator[](std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }

  Partition conjugate() const {
    std::vector<int> c;
    int top = parts_.empty() ? 0 : parts_.front();
    for (int i = 1; i <= top; ++i)
      c.push_back(static_cast<int>(std::count_if(parts_.begin(), parts_.end(), [i](int p) { return p >= i; })));
    return Partition(std::move(c));
  }

  Partition padded(std::size_t length) const {
    std::vector<int> p = parts_;
    if (p.size() < length) p.resize(length, 0);
    return Partition(std::move(p));
  }

  bool operator==(const Partition& o) const { return trimmed() == o.trimmed(); }

  std::string to_string() const {
    std::string s = "(";
    auto t = trimmed();
    for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
    return s + ")";
  }

 private:
  std::vector<int> parts_;
};

// All partitions of n with at most max_parts nonzero parts, in reverse
// lexicographic order.
inline std::vector<Partition> partitions_of(int n, int max_parts = INT_MAX) {
  std::vector<Partition> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int remaining, int cap) -> void {
    if (remaining == 0) {
      out.emplace_back(cur);
      return;
    }
    if (static_cast<int>(cur.size()) == max_parts) return;
    for (int p = std::min(remaining, cap); p >= 1; --p) {
      cur.push_back(p);
      self(self, remaining - p, p);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

}  // namespace nssigma
