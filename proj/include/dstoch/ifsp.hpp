#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dstoch/error.hpp"
#include "dstoch/multi_index.hpp"
#include "dstoch/rational.hpp"
#include "dstoch/transformation_matrix.hpp"

namespace dstoch {

/// Per-coordinate endpoints 0 = a^j_0 < a^j_1 < ... < a^j_{m_j} = 1.
struct Partition {
  std::vector<std::vector<Rational>> endpoints;

  /// E^j_k = [a^j_{k-1}, a^j_k]; j and k are 1-based.
  Rational lower(int j, int k) const { return endpoints[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(k - 1)]; }
  Rational upper(int j, int k) const { return endpoints[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(k)]; }
  Rational length(int j, int k) const { return upper(j, k) - lower(j, k); }
};

inline Partition induced_partition(const TransformationMatrix& t) {
  Partition p;
  for (int j = 1; j <= t.d(); ++j) p.endpoints.push_back(t.partition(j));
  return p;
}

/// x |-> offset + scale * x, coordinatewise.
struct AffineMap {
  std::vector<Rational> offset;
  std::vector<Rational> scale;

  template <typename T>
  std::vector<T> apply(std::span<const T> x) const {
    std::vector<T> y(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) y[j] = apply_axis(j, x[j]);
    return y;
  }

  Rational apply_axis(std::size_t j, const Rational& x) const { return offset[j] + scale[j] * x; }
  double apply_axis(std::size_t j, double x) const { return offset[j].to_double() + scale[j].to_double() * x; }

  /// Common scale if the map is a similarity, nullopt otherwise.
  std::optional<Rational> similarity_ratio() const {
    for (const Rational& s : scale) {
      if (s != scale.front()) return std::nullopt;
    }
    return scale.front();
  }
};

struct IfspMap {
  MultiIndex index;
  AffineMap map;
  Rational probability;
};

/// Iterated function system with probabilities induced by a transformation matrix.
/// The images R_i of distinct maps are distinct cells of a product partition, so
/// their interiors are disjoint and the open set condition holds by construction.
struct Ifsp {
  int d = 0;
  Partition partition;
  std::vector<IfspMap> maps;
};

inline Ifsp build_ifsp(const TransformationMatrix& t) {
  require_valid(t);
  Ifsp s{t.d(), induced_partition(t), {}};
  s.maps.reserve(t.support_size());
  for (const auto& [key, mass] : t.entries()) {
    AffineMap f;
    for (int j = 1; j <= t.d(); ++j) {
      const int k = key[static_cast<std::size_t>(j - 1)];
      f.offset.push_back(s.partition.lower(j, k));
      f.scale.push_back(s.partition.length(j, k));
    }
    s.maps.push_back({key, std::move(f), mass});
  }
  return s;
}

inline bool is_similarity_system(const Ifsp& s) {
  for (const auto& m : s.maps) {
    if (!m.map.similarity_ratio()) return false;
  }
  return true;
}

inline constexpr double kDefaultDimensionTol = 1e-12;

/// Unique s >= 0 with sum_i c_i^s = 1, by bisection. The bracket [0, upper] is
/// grown by doubling until the sum drops below one; the returned s satisfies
/// sum c^(s - tol) >= 1 >= sum c^(s + tol).
inline double similarity_dimension(std::span<const double> scales, double tol = kDefaultDimensionTol) {
  if (scales.empty()) throw StructuralError("similarity_dimension: empty scale list");
  if (!(tol > 0.0)) throw StructuralError("similarity_dimension: tolerance must be positive");
  for (double c : scales) {
    if (!(c > 0.0)) throw StructuralError("similarity_dimension: scale factors must be positive");
    if (c >= 1.0) throw ValidationError("similarity_dimension: scale " + std::to_string(c) + " is not a contraction");
  }
  const auto mass = [&](double s) {
    double sum = 0.0;
    for (double c : scales) sum += std::pow(c, s);
    return sum;
  };
  if (scales.size() == 1) return 0.0;

  double lo = 0.0;  // mass(lo) >= 1
  double hi = 1.0;
  while (mass(hi) >= 1.0) {
    lo = hi;
    hi *= 2.0;
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double m = mass(mid);
    if (m == 1.0) return mid;
    (m > 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

inline std::vector<double> similarity_ratios(const Ifsp& s) {
  std::vector<double> out;
  out.reserve(s.maps.size());
  for (const auto& m : s.maps) {
    const auto r = m.map.similarity_ratio();
    if (!r) {
      throw UnsupportedConfiguration("map " + format_index(m.index) +
                                     " is affine but not a similarity; similarity dimension undefined");
    }
    out.push_back(r->to_double());
  }
  return out;
}

/// Hausdorff dimension of the attractor. For t in U_d^N this is the closed form
/// log(#S)/log(N); otherwise the similarity-dimension equation is solved for the
/// induced IFSP (which requires every map to be a similarity).
inline double attractor_dimension(const TransformationMatrix& t, double tol = kDefaultDimensionTol) {
  if (const auto n = uniform_class_side(t)) {
    return std::log(static_cast<double>(t.support_size())) / std::log(static_cast<double>(*n));
  }
  return similarity_dimension(similarity_ratios(build_ifsp(t)), tol);
}

/// Largest q = prod_j lambda(E^j_{i_j}) over zero-mass indices i; the volume of
/// the depth-n Hutchinson iterate is at most (1 - q)^n. nullopt for full support.
inline std::optional<Rational> empty_cell_volume(const TransformationMatrix& t) {
  if (t.support_size() == t.dims().cardinality()) return std::nullopt;
  const Partition p = induced_partition(t);
  std::optional<Rational> best;
  for_each_index(t.dims(), [&](const MultiIndex& i) {
    if (t.entries().contains(i)) return;
    Rational q{1};
    for (int j = 1; j <= t.d(); ++j) q *= p.length(j, i[static_cast<std::size_t>(j - 1)]);
    if (!best || q > *best) best = q;
  });
  return best;
}

}  // namespace dstoch
