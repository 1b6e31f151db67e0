#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "dstoch/analysis/marginal.hpp"
#include "dstoch/error.hpp"
#include "dstoch/grid_measure.hpp"
#include "dstoch/rational.hpp"

namespace dstoch {

/*
 * Markov kernel of a grid measure whose marginal on the first d-1 axes is
 * uniform: for an x-cell c (first d-1 coordinates), K(x, .) is the mixture of
 * uniform distributions on the y-cells of the fiber over c, with weights
 * mass(c, y) / vol(c). Rows are sorted by y-cell and sum to exactly one.
 */
struct GridKernel {
  std::vector<std::int64_t> x_resolution;
  std::int64_t y_resolution = 1;
  std::map<Cell, std::vector<std::pair<std::int64_t, Rational>>> rows;

  /// K(x, [0, y]) for x in x-cell `c`.
  double cdf(const Cell& c, double y) const {
    const auto it = rows.find(c);
    if (it == rows.end()) return 0.0;
    double s = 0.0;
    const double r = static_cast<double>(y_resolution);
    for (const auto& [cell, w] : it->second) {
      const double t = std::clamp(y * r - static_cast<double>(cell), 0.0, 1.0);
      s += w.to_double() * t;
    }
    return s;
  }
};

/// Throws ValidationError naming the first x-fiber whose mass differs from its
/// volume if the marginal on axes 1..d-1 is not uniform.
inline void require_uniform_base(const GridMeasure& mu) {
  if (mu.d() < 2) throw StructuralError("kernel: need a measure of dimension >= 2");
  if (const auto bad = first_nonuniform_fiber(mu, mu.d())) {
    const GridMeasure base = marginal(mu, mu.d());
    throw ValidationError("base marginal is not uniform: x-cell (" + format_cell(*bad) + ") has mass " +
                          base.at(*bad).str() + ", expected " + base.cell_volume().str());
  }
}

inline GridKernel grid_kernel(const GridMeasure& mu) {
  require_uniform_base(mu);
  GridKernel k;
  k.x_resolution = drop_coordinate<std::int64_t>(mu.resolution(), mu.d() - 1);
  k.y_resolution = mu.resolution().back();
  Rational base_volume{1};
  for (auto r : k.x_resolution) base_volume *= Rational{1, r};
  for (const auto& [cell, mass] : mu.masses()) {
    Cell x(cell.begin(), cell.end() - 1);
    k.rows[x].emplace_back(cell.back(), mass / base_volume);
  }
  return k;
}

namespace detail {

/// Integral over [y0, y1] of |g| for g linear with endpoint values g0, g1.
inline double abs_linear_integral(double g0, double g1, double width) {
  if ((g0 >= 0.0 && g1 >= 0.0) || (g0 <= 0.0 && g1 <= 0.0)) return 0.5 * (std::abs(g0) + std::abs(g1)) * width;
  return (g0 * g0 + g1 * g1) / (2.0 * (std::abs(g0) + std::abs(g1))) * width;
}

}  // namespace detail

inline constexpr std::size_t kDefaultD1Budget = 1U << 26;

/*
 * D_1(mu, nu) = int int |K_mu(x, [0,y]) - K_nu(x, [0,y])| dlambda_{d-1}(x) dy.
 *
 * Both kernels are constant in x on the cells of the joint (lcm) x-grid and
 * piecewise linear in y with breakpoints at cell edges, so the integral is a
 * finite sum of exact trapezoids (split at sign changes). Both measures must
 * have uniform marginal on the first d-1 axes.
 */
inline double d1_distance(const GridMeasure& mu, const GridMeasure& nu, std::size_t budget = kDefaultD1Budget) {
  if (mu.d() != nu.d()) throw StructuralError("d1_distance: measures have different dimensions");
  const GridKernel ka = grid_kernel(mu);
  const GridKernel kb = grid_kernel(nu);
  const std::size_t dx = ka.x_resolution.size();

  std::vector<std::int64_t> joint(dx);
  std::uint64_t cells = 1;
  for (std::size_t j = 0; j < dx; ++j) {
    joint[j] = std::lcm(ka.x_resolution[j], kb.x_resolution[j]);
    cells *= static_cast<std::uint64_t>(joint[j]);
  }
  if (cells > budget) throw BudgetExceeded("d1_distance: joint x-grid has " + std::to_string(cells) + " cells", budget);

  const auto row_breaks = [](const GridKernel& k, const Cell& c, std::vector<double>& out) {
    const auto it = k.rows.find(c);
    if (it == k.rows.end()) return;
    const double r = static_cast<double>(k.y_resolution);
    for (const auto& [cell, w] : it->second) {
      out.push_back(static_cast<double>(cell) / r);
      out.push_back(static_cast<double>(cell + 1) / r);
    }
  };

  // Kernel rows only change with the coarse cells, so integrate each distinct
  // (mu-cell, nu-cell) pair once and weight it by the number of joint cells.
  std::map<std::pair<Cell, Cell>, std::uint64_t> pairs;
  const std::vector<std::int64_t> lo(dx, 0);
  std::vector<std::int64_t> hi(dx);
  for (std::size_t j = 0; j < dx; ++j) hi[j] = joint[j] - 1;
  Cell x = lo;
  do {
    Cell ca(dx), cb(dx);
    for (std::size_t j = 0; j < dx; ++j) {
      ca[j] = x[j] / (joint[j] / ka.x_resolution[j]);
      cb[j] = x[j] / (joint[j] / kb.x_resolution[j]);
    }
    ++pairs[{std::move(ca), std::move(cb)}];
  } while (next_index<std::int64_t>(x, lo, hi));

  double total = 0.0;
  std::vector<double> breaks;
  for (const auto& [pair, count] : pairs) {
    breaks.assign({0.0, 1.0});
    row_breaks(ka, pair.first, breaks);
    row_breaks(kb, pair.second, breaks);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    double integral = 0.0;
    double g_prev = ka.cdf(pair.first, breaks[0]) - kb.cdf(pair.second, breaks[0]);
    for (std::size_t k = 1; k < breaks.size(); ++k) {
      const double g = ka.cdf(pair.first, breaks[k]) - kb.cdf(pair.second, breaks[k]);
      integral += detail::abs_linear_integral(g_prev, g, breaks[k] - breaks[k - 1]);
      g_prev = g;
    }
    total += integral * static_cast<double>(count) / static_cast<double>(cells);
  }
  return total;
}

}  // namespace dstoch
