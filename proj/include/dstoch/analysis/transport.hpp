#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "dstoch/error.hpp"
#include "dstoch/grid_measure.hpp"
#include "dstoch/rational.hpp"

namespace dstoch {

struct PlanEntry {
  Cell source;
  Cell target;
  Rational flow;
};

/// Coupling between two grid measures; row sums equal the source masses and
/// column sums the target masses, exactly.
struct TransportPlan {
  std::vector<PlanEntry> entries;
};

struct TransportResult {
  double distance = 0.0;
  TransportPlan plan;
  /// Largest cell diameter of either grid; bounds |W1(cell centers) - W1(measures)|.
  double discretization_bound = 0.0;
  /// Dual certificate: target_potential[j] - source_potential[i] <= cost(i, j),
  /// with equality on every arc that carries flow.
  std::vector<double> source_potential;
  std::vector<double> target_potential;
};

inline constexpr std::size_t kDefaultTransportBudget = 4000;

namespace detail {

inline std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
  const __int128 l = static_cast<__int128>(a / std::gcd(a, b)) * b;
  if (l > std::numeric_limits<std::int64_t>::max()) {
    throw std::overflow_error("wasserstein1: common mass denominator exceeds 64 bits");
  }
  return static_cast<std::int64_t>(l);
}

inline double euclidean(const double* a, const double* b, std::size_t d) {
  double s = 0.0;
  for (std::size_t j = 0; j < d; ++j) s += (a[j] - b[j]) * (a[j] - b[j]);
  return std::sqrt(s);
}

}  // namespace detail

/*
 * Exact Wasserstein-1 distance between the cell-center discretizations of two
 * grid measures under the Euclidean ground metric.
 *
 * Masses are scaled by the lcm of all denominators so that supplies are integers;
 * the transportation problem is then solved by successive shortest paths on the
 * complete bipartite graph (dense Dijkstra with Johnson potentials, cost matrix
 * evaluated on the fly). Flows stay integral, so the returned plan is exact and
 * the final potentials form the dual certificate.
 */
inline TransportResult wasserstein1(const GridMeasure& mu, const GridMeasure& nu,
                                    std::size_t budget = kDefaultTransportBudget) {
  if (mu.d() != nu.d()) throw StructuralError("wasserstein1: measures have different dimensions");
  if (mu.size() > budget || nu.size() > budget) {
    throw BudgetExceeded("wasserstein1: " + std::to_string(std::max(mu.size(), nu.size())) +
                             " cells on one side; coarsen the measures",
                         budget);
  }
  const std::size_t d = static_cast<std::size_t>(mu.d());
  const std::size_t ns = mu.size();
  const std::size_t nt = nu.size();

  std::vector<Cell> src_cells, dst_cells;
  std::vector<double> src_x, dst_x;
  std::int64_t scale = 1;
  for (const auto& [c, m] : mu.masses()) {
    src_cells.push_back(c);
    const auto x = mu.center(c);
    src_x.insert(src_x.end(), x.begin(), x.end());
    scale = detail::checked_lcm(scale, m.den());
  }
  for (const auto& [c, m] : nu.masses()) {
    dst_cells.push_back(c);
    const auto x = nu.center(c);
    dst_x.insert(dst_x.end(), x.begin(), x.end());
    scale = detail::checked_lcm(scale, m.den());
  }
  std::vector<std::int64_t> supply, demand;
  for (const auto& [c, m] : mu.masses()) supply.push_back(m.num() * (scale / m.den()));
  for (const auto& [c, m] : nu.masses()) demand.push_back(m.num() * (scale / m.den()));

  const auto cost = [&](std::size_t i, std::size_t j) {
    return detail::euclidean(&src_x[i * d], &dst_x[j * d], d);
  };

  constexpr double inf = std::numeric_limits<double>::infinity();
  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  std::vector<double> pot_s(ns, 0.0), pot_t(nt, 0.0);
  // flow_in[j]: source -> units shipped to target j
  std::vector<std::map<std::size_t, std::int64_t>> flow_in(nt);
  std::int64_t remaining = scale;

  std::vector<double> dist_s(ns), dist_t(nt);
  std::vector<char> done_s(ns), done_t(nt);
  std::vector<std::size_t> prev_t(nt), prev_s(ns);

  while (remaining > 0) {
    std::fill(done_s.begin(), done_s.end(), 0);
    std::fill(done_t.begin(), done_t.end(), 0);
    std::fill(dist_t.begin(), dist_t.end(), inf);
    std::fill(prev_s.begin(), prev_s.end(), none);
    for (std::size_t i = 0; i < ns; ++i) dist_s[i] = supply[i] > 0 ? 0.0 : inf;

    std::size_t sink = none;
    double reach = inf;
    for (;;) {
      double best = inf;
      std::size_t at = none;
      bool at_source = true;
      for (std::size_t i = 0; i < ns; ++i) {
        if (!done_s[i] && dist_s[i] < best) best = dist_s[i], at = i, at_source = true;
      }
      for (std::size_t j = 0; j < nt; ++j) {
        if (!done_t[j] && dist_t[j] < best) best = dist_t[j], at = j, at_source = false;
      }
      if (at == none) break;
      if (at_source) {
        done_s[at] = 1;
        for (std::size_t j = 0; j < nt; ++j) {
          if (done_t[j]) continue;
          const double nd = best + std::max(0.0, cost(at, j) + pot_s[at] - pot_t[j]);
          if (nd < dist_t[j]) dist_t[j] = nd, prev_t[j] = at;
        }
      } else {
        done_t[at] = 1;
        if (demand[at] > 0) {
          sink = at;
          reach = best;
          break;
        }
        for (const auto& [i, f] : flow_in[at]) {
          if (done_s[i]) continue;
          const double nd = best + std::max(0.0, -cost(i, at) + pot_t[at] - pot_s[i]);
          if (nd < dist_s[i]) dist_s[i] = nd, prev_s[i] = at;
        }
      }
    }
    if (sink == none) throw Error("wasserstein1: no augmenting path (inconsistent masses)");

    for (std::size_t i = 0; i < ns; ++i) pot_s[i] += std::min(dist_s[i], reach);
    for (std::size_t j = 0; j < nt; ++j) pot_t[j] += std::min(dist_t[j], reach);

    // bottleneck along sink <- source <- target <- ... <- root source
    std::int64_t delta = demand[sink];
    std::size_t j = sink;
    for (;;) {
      const std::size_t i = prev_t[j];
      if (prev_s[i] == none) {
        delta = std::min(delta, supply[i]);
        break;
      }
      const std::size_t back = prev_s[i];
      delta = std::min(delta, flow_in[back].at(i));
      j = back;
    }
    j = sink;
    for (;;) {
      const std::size_t i = prev_t[j];
      flow_in[j][i] += delta;
      if (prev_s[i] == none) {
        supply[i] -= delta;
        break;
      }
      const std::size_t back = prev_s[i];
      auto it = flow_in[back].find(i);
      it->second -= delta;
      if (it->second == 0) flow_in[back].erase(it);
      j = back;
    }
    demand[sink] -= delta;
    remaining -= delta;
  }

  TransportResult out;
  std::map<std::pair<std::size_t, std::size_t>, std::int64_t> by_source;
  for (std::size_t j = 0; j < nt; ++j) {
    for (const auto& [i, f] : flow_in[j]) by_source[{i, j}] = f;
  }
  for (const auto& [arc, f] : by_source) {
    out.distance += static_cast<double>(f) / static_cast<double>(scale) * cost(arc.first, arc.second);
    out.plan.entries.push_back({src_cells[arc.first], dst_cells[arc.second], Rational{f, scale}});
  }
  out.discretization_bound = std::max(mu.cell_diameter(), nu.cell_diameter());
  out.source_potential = std::move(pot_s);
  out.target_potential = std::move(pot_t);
  return out;
}

struct OptimalityCertificate {
  bool feasible = false;            // exact row/column sums
  double min_reduced_cost = 0.0;    // over all arcs; >= -tol for dual feasibility
  double max_slack_on_support = 0.0;// |reduced cost| on arcs carrying flow
  double dual_objective = 0.0;
  double primal_objective = 0.0;

  bool optimal(double tol) const {
    return feasible && min_reduced_cost >= -tol && max_slack_on_support <= tol &&
           std::abs(dual_objective - primal_objective) <= tol;
  }
};

/// Re-checks a transport result against the measures: exact marginal sums, dual
/// feasibility over every arc and complementary slackness on the support.
inline OptimalityCertificate certify_transport(const GridMeasure& mu, const GridMeasure& nu,
                                               const TransportResult& r) {
  OptimalityCertificate cert;
  std::map<Cell, std::size_t> src_index, dst_index;
  for (const auto& [c, m] : mu.masses()) src_index.emplace(c, src_index.size());
  for (const auto& [c, m] : nu.masses()) dst_index.emplace(c, dst_index.size());

  std::map<Cell, Rational> rows, cols;
  for (const auto& e : r.plan.entries) {
    if (e.flow.is_negative()) return cert;
    rows[e.source] += e.flow;
    cols[e.target] += e.flow;
  }
  cert.feasible = rows == mu.masses() && cols == nu.masses();

  std::vector<std::vector<double>> xs, xt;
  for (const auto& [c, m] : mu.masses()) xs.push_back(mu.center(c));
  for (const auto& [c, m] : nu.masses()) xt.push_back(nu.center(c));
  const std::size_t d = static_cast<std::size_t>(mu.d());

  cert.min_reduced_cost = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < xt.size(); ++j) {
      const double rc = detail::euclidean(xs[i].data(), xt[j].data(), d) + r.source_potential[i] - r.target_potential[j];
      cert.min_reduced_cost = std::min(cert.min_reduced_cost, rc);
    }
  }
  for (const auto& e : r.plan.entries) {
    const std::size_t i = src_index.at(e.source);
    const std::size_t j = dst_index.at(e.target);
    const double c = detail::euclidean(xs[i].data(), xt[j].data(), d);
    cert.primal_objective += e.flow.to_double() * c;
    cert.max_slack_on_support =
        std::max(cert.max_slack_on_support, std::abs(c + r.source_potential[i] - r.target_potential[j]));
  }
  std::size_t j = 0;
  for (const auto& [c, m] : nu.masses()) cert.dual_objective += m.to_double() * r.target_potential[j++];
  std::size_t i = 0;
  for (const auto& [c, m] : mu.masses()) cert.dual_objective -= m.to_double() * r.source_potential[i++];
  return cert;
}

}  // namespace dstoch
