#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "dstoch/error.hpp"
#include "dstoch/multi_index.hpp"
#include "dstoch/rational.hpp"

namespace dstoch {

/// 0-based cell coordinates (c_1, ..., c_d), 0 <= c_j < r_j.
using Cell = std::vector<std::int64_t>;

inline std::string format_cell(const Cell& c) {
  std::string s;
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (j > 0) s += ",";
    s += std::to_string(c[j]);
  }
  return s;
}

/*
 * Probability measure on [0,1]^d that is uniform inside each cell of the
 * product grid with r_j cells along axis j. Cell c covers
 * prod_j [c_j / r_j, (c_j + 1) / r_j]. Masses are exact, strictly positive and
 * sum to one; empty cells are not stored.
 */
class GridMeasure {
 public:
  using Masses = std::map<Cell, Rational>;

  GridMeasure() = default;

  GridMeasure(std::vector<std::int64_t> resolution, const Masses& masses)
      : resolution_(std::move(resolution)) {
    if (resolution_.empty()) throw StructuralError("grid measure: dimension must be positive");
    for (auto r : resolution_) {
      if (r < 1) throw StructuralError("grid measure: resolution components must be >= 1");
    }
    Rational total;
    for (const auto& [cell, mass] : masses) {
      check_cell(cell);
      if (mass.is_negative()) throw StructuralError("grid measure: negative mass at cell " + format_cell(cell));
      if (mass.is_positive()) {
        masses_.emplace(cell, mass);
        total += mass;
      }
    }
    if (total != Rational{1}) throw ValidationError("grid measure: total mass " + total.str() + " != 1");
  }

  int d() const noexcept { return static_cast<int>(resolution_.size()); }
  const std::vector<std::int64_t>& resolution() const noexcept { return resolution_; }
  std::int64_t resolution(int axis) const { return resolution_.at(static_cast<std::size_t>(axis - 1)); }
  const Masses& masses() const noexcept { return masses_; }
  std::size_t size() const noexcept { return masses_.size(); }

  Rational at(const Cell& c) const {
    const auto it = masses_.find(c);
    return it == masses_.end() ? Rational{} : it->second;
  }

  /// Same side r along every axis, or 0.
  std::int64_t uniform_resolution() const noexcept {
    for (auto r : resolution_) {
      if (r != resolution_.front()) return 0;
    }
    return resolution_.front();
  }

  std::uint64_t cell_count() const noexcept {
    std::uint64_t n = 1;
    for (auto r : resolution_) n *= static_cast<std::uint64_t>(r);
    return n;
  }

  Rational cell_volume() const {
    Rational v{1};
    for (auto r : resolution_) v *= Rational{1, r};
    return v;
  }

  /// Euclidean diameter of one cell.
  double cell_diameter() const {
    double s = 0.0;
    for (auto r : resolution_) s += 1.0 / (static_cast<double>(r) * static_cast<double>(r));
    return std::sqrt(s);
  }

  std::vector<double> center(const Cell& c) const {
    std::vector<double> x(c.size());
    for (std::size_t j = 0; j < c.size(); ++j) {
      x[j] = (static_cast<double>(c[j]) + 0.5) / static_cast<double>(resolution_[j]);
    }
    return x;
  }

  void check_cell(const Cell& c) const {
    if (c.size() != resolution_.size()) {
      throw StructuralError("grid measure: cell (" + format_cell(c) + ") has wrong dimension");
    }
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (c[j] < 0 || c[j] >= resolution_[j]) {
        throw StructuralError("grid measure: cell (" + format_cell(c) + ") outside resolution");
      }
    }
  }

  friend bool operator==(const GridMeasure&, const GridMeasure&) = default;

 private:
  std::vector<std::int64_t> resolution_;
  Masses masses_;
};

/// Index of the resolution-r cell containing x in [0,1]. A point on a cell
/// boundary k/r belongs to the lower cell k-1; 0 belongs to cell 0.
inline std::int64_t cell_coordinate(double x, std::int64_t r) {
  if (!(x > 0.0)) return 0;
  const auto c = static_cast<std::int64_t>(std::ceil(x * static_cast<double>(r))) - 1;
  return c < 0 ? 0 : (c >= r ? r - 1 : c);
}

/// Lebesgue measure lambda_d on the grid with the given resolution.
inline GridMeasure lebesgue(std::vector<std::int64_t> resolution) {
  std::uint64_t n = 1;
  for (auto r : resolution) {
    if (r < 1) throw StructuralError("lebesgue: resolution components must be >= 1");
    n *= static_cast<std::uint64_t>(r);
  }
  const Rational mass{1, static_cast<std::int64_t>(n)};
  GridMeasure::Masses m;
  const std::vector<std::int64_t> lo(resolution.size(), 0);
  std::vector<std::int64_t> hi(resolution.size());
  for (std::size_t j = 0; j < hi.size(); ++j) hi[j] = resolution[j] - 1;
  Cell c = lo;
  do {
    m.emplace(c, mass);
  } while (next_index<std::int64_t>(c, lo, hi));
  return {std::move(resolution), m};
}

inline GridMeasure lebesgue(int d, std::int64_t r = 1) {
  return lebesgue(std::vector<std::int64_t>(static_cast<std::size_t>(d), r));
}

/// Single cell of mass one.
inline GridMeasure cell_mass(std::vector<std::int64_t> resolution, const Cell& c) {
  return {std::move(resolution), {{c, Rational{1}}}};
}

/// True iff mu equals Lebesgue measure at its own resolution (every cell carries
/// exactly the cell volume).
inline bool is_uniform_grid(const GridMeasure& mu) {
  if (mu.size() != mu.cell_count()) return false;
  const Rational v = mu.cell_volume();
  for (const auto& [cell, mass] : mu.masses()) {
    if (mass != v) return false;
  }
  return true;
}

/// Re-expresses mu on a finer grid; each target resolution must be a multiple of
/// the current one. Mass is split evenly between the sub-cells.
inline GridMeasure refine(const GridMeasure& mu, const std::vector<std::int64_t>& target) {
  if (static_cast<int>(target.size()) != mu.d()) throw StructuralError("refine: dimension mismatch");
  std::vector<std::int64_t> factor(target.size());
  std::int64_t parts = 1;
  for (std::size_t j = 0; j < target.size(); ++j) {
    if (target[j] < mu.resolution()[j] || target[j] % mu.resolution()[j] != 0) {
      throw StructuralError("refine: target resolution " + std::to_string(target[j]) +
                            " is not a multiple of " + std::to_string(mu.resolution()[j]));
    }
    factor[j] = target[j] / mu.resolution()[j];
    parts *= factor[j];
  }
  if (parts == 1) return mu;
  GridMeasure::Masses out;
  const std::vector<std::int64_t> lo(target.size(), 0);
  std::vector<std::int64_t> hi(target.size());
  for (std::size_t j = 0; j < hi.size(); ++j) hi[j] = factor[j] - 1;
  for (const auto& [cell, mass] : mu.masses()) {
    const Rational share = mass / Rational{parts};
    Cell sub = lo;
    do {
      Cell fine(cell.size());
      for (std::size_t j = 0; j < cell.size(); ++j) fine[j] = cell[j] * factor[j] + sub[j];
      out.emplace(std::move(fine), share);
    } while (next_index<std::int64_t>(sub, lo, hi));
  }
  return {target, out};
}

/// Per-axis least common multiple of two resolutions.
inline std::vector<std::int64_t> common_resolution(const GridMeasure& a, const GridMeasure& b) {
  if (a.d() != b.d()) throw StructuralError("grid measures have different dimensions");
  std::vector<std::int64_t> r(a.resolution().size());
  for (std::size_t j = 0; j < r.size(); ++j) r[j] = std::lcm(a.resolution()[j], b.resolution()[j]);
  return r;
}

}  // namespace dstoch
