#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dstoch/cell_set.hpp"
#include "dstoch/error.hpp"
#include "dstoch/grid_measure.hpp"
#include "dstoch/transformation_matrix.hpp"

namespace dstoch {

/*
 * Markov operator V_tau(mu) = sum_i tau(i) mu^{f_i} on grid measures.
 *
 * Exact mode needs tau in U_d^N: every f_i is then x |-> ((i - 1) + x) / N, which
 * maps cell c of a resolution-r grid onto cell (i - 1) r + c of the resolution
 * N r grid and carries a cellwise-uniform density to a cellwise-uniform density.
 * Images of distinct (i, c) pairs are distinct cells, so the output has exactly
 * |S| * |cells| entries.
 */
inline GridMeasure markov_step(const TransformationMatrix& t, const GridMeasure& mu,
                               std::size_t budget = kDefaultCellBudget) {
  const auto n = uniform_class_side(t);
  if (!n) {
    throw UnsupportedConfiguration(
        "markov_step: exact iteration needs a matrix in U_d^N; use chaos_game for general matrices");
  }
  if (mu.d() != t.d()) throw StructuralError("markov_step: measure dimension differs from matrix");
  const std::size_t needed = mu.size() * t.support_size();
  if (needed > budget) {
    throw BudgetExceeded("markov_step: next iterate needs " + std::to_string(needed) + " cells", budget);
  }

  std::vector<std::int64_t> res = mu.resolution();
  for (auto& r : res) r *= *n;

  GridMeasure::Masses out;
  for (const auto& [key, weight] : t.entries()) {
    for (const auto& [cell, mass] : mu.masses()) {
      Cell img(cell.size());
      for (std::size_t j = 0; j < cell.size(); ++j) {
        img[j] = static_cast<std::int64_t>(key[j] - 1) * mu.resolution()[j] + cell[j];
      }
      out.emplace(std::move(img), weight * mass);
    }
  }
  return {std::move(res), out};
}

/// [mu0, V(mu0), ..., V^n(mu0)].
inline std::vector<GridMeasure> iterate_markov(const TransformationMatrix& t, const GridMeasure& mu0, int n,
                                               std::size_t budget = kDefaultCellBudget) {
  if (n < 0) throw StructuralError("iterate_markov: negative iteration count");
  std::vector<GridMeasure> out{mu0};
  out.reserve(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k < n; ++k) out.push_back(markov_step(t, out.back(), budget));
  return out;
}

}  // namespace dstoch
