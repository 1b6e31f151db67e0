#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dstoch/error.hpp"
#include "dstoch/grid_measure.hpp"
#include "dstoch/rational.hpp"

namespace dstoch {

/// A_mu(x) = mu(prod_j [0, x_j]) with each cell's mass spread uniformly over the
/// cell, so the value is exact and multilinear inside every cell.
inline Rational copula_eval(const GridMeasure& mu, std::span<const Rational> x) {
  if (static_cast<int>(x.size()) != mu.d()) throw StructuralError("copula_eval: point has wrong dimension");
  for (const Rational& xj : x) {
    if (xj.is_negative() || xj > Rational{1}) throw StructuralError("copula_eval: point outside [0,1]^d");
  }
  Rational total;
  for (const auto& [cell, mass] : mu.masses()) {
    Rational share = mass;
    for (std::size_t j = 0; j < cell.size() && !share.is_zero(); ++j) {
      const Rational r{mu.resolution()[j]};
      // fraction of [c/r, (c+1)/r] below x_j
      const Rational t = x[j] * r - Rational{cell[j]};
      if (!t.is_positive()) {
        share = Rational{};
      } else if (t < Rational{1}) {
        share *= t;
      }
    }
    total += share;
  }
  return total;
}

struct SupDistance {
  Rational vertex_max;            // max |A_mu - A_nu| over the joint grid vertices
  double slack = 0.0;             // sum_j 1/(2 G_j), the Lipschitz allowance
  std::vector<std::int64_t> grid; // G_j
  double bound() const { return vertex_max.to_double() + slack; }
};

inline constexpr std::size_t kDefaultVertexBudget = 1U << 24;

/*
 * Certified upper bound on sup_x |A_mu(x) - A_nu(x)|. Both measures are refined
 * to the per-axis lcm grid G; there the copula difference at vertex v is the
 * prefix sum of the cell mass differences below v. Any x lies within
 * sum_j 1/(2 G_j) (l1) of a vertex and copulas are 1-Lipschitz in l1, which
 * gives the slack term.
 */
inline SupDistance copula_sup_distance(const GridMeasure& mu, const GridMeasure& nu,
                                       std::size_t budget = kDefaultVertexBudget) {
  const std::vector<std::int64_t> g = common_resolution(mu, nu);
  std::uint64_t cells = 1;
  for (auto gj : g) cells *= static_cast<std::uint64_t>(gj);
  if (cells > budget) throw BudgetExceeded("copula_sup_distance: joint grid has " + std::to_string(cells) + " cells", budget);

  const std::size_t d = g.size();
  std::vector<std::uint64_t> stride(d, 1);
  for (std::size_t j = d - 1; j-- > 0;) stride[j] = stride[j + 1] * static_cast<std::uint64_t>(g[j + 1]);

  std::vector<Rational> diff(cells);
  const auto scatter = [&](const GridMeasure& m, int sign) {
    std::vector<std::int64_t> factor(d);
    std::int64_t parts = 1;
    for (std::size_t j = 0; j < d; ++j) {
      factor[j] = g[j] / m.resolution()[j];
      parts *= factor[j];
    }
    const std::vector<std::int64_t> lo(d, 0);
    std::vector<std::int64_t> hi(d);
    for (std::size_t j = 0; j < d; ++j) hi[j] = factor[j] - 1;
    for (const auto& [cell, mass] : m.masses()) {
      const Rational share = Rational{sign} * mass / Rational{parts};
      Cell sub = lo;
      do {
        std::uint64_t at = 0;
        for (std::size_t j = 0; j < d; ++j) at += static_cast<std::uint64_t>(cell[j] * factor[j] + sub[j]) * stride[j];
        diff[at] += share;
      } while (next_index<std::int64_t>(sub, lo, hi));
    }
  };
  scatter(mu, 1);
  scatter(nu, -1);

  // in-place prefix sums along each axis turn cell differences into vertex differences
  for (std::size_t axis = 0; axis < d; ++axis) {
    for (std::uint64_t at = 0; at < cells; ++at) {
      const std::uint64_t coord = (at / stride[axis]) % static_cast<std::uint64_t>(g[axis]);
      if (coord > 0) diff[at] += diff[at - stride[axis]];
    }
  }
  SupDistance out;
  for (const Rational& v : diff) out.vertex_max = std::max(out.vertex_max, abs(v));
  for (auto gj : g) out.slack += 0.5 / static_cast<double>(gj);
  out.grid = g;
  return out;
}

}  // namespace dstoch
