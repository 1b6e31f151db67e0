#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dstoch/error.hpp"

namespace dstoch {

/// 1-based multi-index (i_1, ..., i_d) with 1 <= i_j <= m_j.
using MultiIndex = std::vector<int>;

/// Index-set shape m = (m_1, ..., m_d) of a transformation matrix.
class Dims {
 public:
  Dims() = default;

  explicit Dims(std::vector<int> m) : m_(std::move(m)) {
    if (m_.size() < 2) throw StructuralError("Dims: dimension d must be >= 2");
    for (int mj : m_) {
      if (mj < 2) throw StructuralError("Dims: every m_j must be >= 2");
    }
  }

  /// (N, ..., N) with d components.
  static Dims cube(int d, int n) {
    if (d < 0) throw StructuralError("Dims: negative dimension");
    return Dims(std::vector<int>(static_cast<std::size_t>(d), n));
  }

  int d() const noexcept { return static_cast<int>(m_.size()); }
  int m(int j) const { return m_.at(static_cast<std::size_t>(j)); }
  const std::vector<int>& extents() const noexcept { return m_; }

  /// Number of multi-indices, prod_j m_j.
  std::uint64_t cardinality() const noexcept {
    std::uint64_t n = 1;
    for (int mj : m_) n *= static_cast<std::uint64_t>(mj);
    return n;
  }

  /// Common side length if all m_j are equal, otherwise 0.
  int cube_side() const noexcept {
    for (int mj : m_) {
      if (mj != m_.front()) return 0;
    }
    return m_.empty() ? 0 : m_.front();
  }

  bool contains(std::span<const int> i) const noexcept {
    if (i.size() != m_.size()) return false;
    for (std::size_t j = 0; j < m_.size(); ++j) {
      if (i[j] < 1 || i[j] > m_[j]) return false;
    }
    return true;
  }

  friend bool operator==(const Dims&, const Dims&) = default;

 private:
  std::vector<int> m_;
};

/// Advances `idx` to the lexicographic successor within [lo_j, hi_j] (inclusive)
/// with the last coordinate fastest. Returns false after the last element.
template <typename Int>
bool next_index(std::vector<Int>& idx, std::span<const Int> lo, std::span<const Int> hi) {
  for (std::size_t j = idx.size(); j-- > 0;) {
    if (idx[j] < hi[j]) {
      ++idx[j];
      return true;
    }
    idx[j] = lo[j];
  }
  return false;
}

/// Calls fn(i) for every multi-index of `dims` in lexicographic order.
template <typename Fn>
void for_each_index(const Dims& dims, Fn&& fn) {
  const std::vector<int> lo(static_cast<std::size_t>(dims.d()), 1);
  const std::vector<int>& hi = dims.extents();
  MultiIndex i = lo;
  do {
    fn(static_cast<const MultiIndex&>(i));
  } while (next_index<int>(i, lo, hi));
}

/// i with coordinate j removed.
template <typename Int>
std::vector<Int> drop_coordinate(std::span<const Int> i, int j) {
  std::vector<Int> out;
  out.reserve(i.size() - 1);
  for (std::size_t k = 0; k < i.size(); ++k) {
    if (static_cast<int>(k) != j) out.push_back(i[k]);
  }
  return out;
}

/// Human-readable "(1,2,3)"; a coordinate equal to `hole` prints as "·".
inline std::string format_index(std::span<const int> i, int hole_at = -1) {
  std::string s = "(";
  for (std::size_t k = 0; k < i.size(); ++k) {
    if (k > 0) s += ",";
    s += static_cast<int>(k) == hole_at ? std::string("·") : std::to_string(i[k]);
  }
  return s + ")";
}

}  // namespace dstoch
