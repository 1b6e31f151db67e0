#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dstoch/error.hpp"
#include "dstoch/grid_measure.hpp"

namespace dstoch {

/// Push-forward of mu under the projection that drops axis j0 (1-based):
/// exact fiber sums over that axis.
inline GridMeasure marginal(const GridMeasure& mu, int drop) {
  if (mu.d() < 2) throw StructuralError("marginal: need a measure of dimension >= 2");
  if (drop < 1 || drop > mu.d()) throw StructuralError("marginal: axis " + std::to_string(drop) + " out of range");
  GridMeasure::Masses out;
  for (const auto& [cell, mass] : mu.masses()) {
    out[drop_coordinate<std::int64_t>(cell, drop - 1)] += mass;
  }
  return {drop_coordinate<std::int64_t>(mu.resolution(), drop - 1), out};
}

/// For every axis j, whether the marginal dropping j is exactly uniform.
inline std::vector<bool> uniform_marginals(const GridMeasure& mu) {
  std::vector<bool> out;
  for (int j = 1; j <= mu.d(); ++j) out.push_back(is_uniform_grid(marginal(mu, j)));
  return out;
}

/// First cell of the marginal dropping `drop` whose mass differs from the cell
/// volume, in lexicographic order; nullopt when the marginal is uniform.
inline std::optional<Cell> first_nonuniform_fiber(const GridMeasure& mu, int drop) {
  const GridMeasure m = marginal(mu, drop);
  const Rational v = m.cell_volume();
  const std::vector<std::int64_t> lo(m.resolution().size(), 0);
  std::vector<std::int64_t> hi(m.resolution().size());
  for (std::size_t j = 0; j < hi.size(); ++j) hi[j] = m.resolution()[j] - 1;
  Cell c = lo;
  do {
    if (m.at(c) != v) return c;
  } while (next_index<std::int64_t>(c, lo, hi));
  return std::nullopt;
}

}  // namespace dstoch
