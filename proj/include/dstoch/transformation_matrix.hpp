#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "dstoch/error.hpp"
#include "dstoch/multi_index.hpp"
#include "dstoch/permutation.hpp"
#include "dstoch/rational.hpp"

namespace dstoch {

/*
 * Sparse probability distribution tau on the index set {1..m_1} x ... x {1..m_d}.
 *
 * Only positive entries are stored; keys are kept in lexicographic order.
 * Construction enforces the structural invariants (key shape, index bounds,
 * no negative masses) but not validity: a matrix whose mass is not 1 or which
 * has an empty coordinate slice can be built so that it can be reported on by
 * validate_transformation_matrix().
 *
 * Coordinates (axes) are numbered 1..d throughout the public API, matching the
 * 1-based multi-index levels.
 */
class TransformationMatrix {
 public:
  using Entries = std::map<MultiIndex, Rational>;

  TransformationMatrix() = default;

  TransformationMatrix(Dims dims, const Entries& entries) : dims_(std::move(dims)) {
    for (const auto& [key, mass] : entries) {
      if (static_cast<int>(key.size()) != dims_.d()) {
        throw StructuralError("transformation matrix: key " + format_index(key) + " has " +
                              std::to_string(key.size()) + " coordinates, expected " +
                              std::to_string(dims_.d()));
      }
      if (!dims_.contains(key)) {
        throw StructuralError("transformation matrix: key " + format_index(key) + " out of range");
      }
      if (mass.is_negative()) {
        throw StructuralError("transformation matrix: negative mass at " + format_index(key));
      }
      if (mass.is_positive()) entries_.emplace(key, mass);
    }
  }

  const Dims& dims() const noexcept { return dims_; }
  int d() const noexcept { return dims_.d(); }
  const Entries& entries() const noexcept { return entries_; }

  /// tau(i); zero outside the support.
  Rational at(const MultiIndex& i) const {
    const auto it = entries_.find(i);
    return it == entries_.end() ? Rational{} : it->second;
  }

  std::size_t support_size() const noexcept { return entries_.size(); }

  Rational total_mass() const {
    Rational s;
    for (const auto& [key, mass] : entries_) s += mass;
    return s;
  }

  /// Slice masses lambda(E^j_k) = sum_{i: i_j = k} tau(i) for k = 1..m_j (returned 0-based).
  std::vector<Rational> column_sums(int j) const {
    check_axis(j);
    std::vector<Rational> sums(static_cast<std::size_t>(dims_.m(j - 1)));
    for (const auto& [key, mass] : entries_) sums[static_cast<std::size_t>(key[j - 1] - 1)] += mass;
    return sums;
  }

  /// Endpoints a^j_0 = 0 < a^j_1 < ... < a^j_{m_j} (cumulative column sums).
  std::vector<Rational> partition(int j) const {
    const auto sums = column_sums(j);
    std::vector<Rational> a(sums.size() + 1);
    for (std::size_t k = 0; k < sums.size(); ++k) a[k + 1] = a[k] + sums[k];
    return a;
  }

  void check_axis(int j) const {
    if (j < 1 || j > dims_.d()) {
      throw StructuralError("coordinate " + std::to_string(j) + " outside 1.." + std::to_string(dims_.d()));
    }
  }

  friend bool operator==(const TransformationMatrix&, const TransformationMatrix&) = default;

 private:
  Dims dims_;
  Entries entries_;
};

struct EmptySlice {
  int coordinate;  // j, 1-based
  int level;       // k, 1-based
  friend bool operator==(const EmptySlice&, const EmptySlice&) = default;
};

struct ValidationReport {
  Rational total_mass;
  std::vector<EmptySlice> empty_slices;

  bool mass_ok() const { return total_mass == Rational{1}; }
  bool ok() const { return mass_ok() && empty_slices.empty(); }
  explicit operator bool() const { return ok(); }

  std::string describe() const {
    if (ok()) return "ok";
    std::ostringstream os;
    const char* sep = "";
    if (!mass_ok()) {
      os << "total mass " << total_mass << " != 1";
      sep = "; ";
    }
    for (const auto& s : empty_slices) {
      os << sep << "empty slice (j=" << s.coordinate << ", k=" << s.level << ")";
      sep = "; ";
    }
    return os.str();
  }
};

/// Checks that tau is a generalized transformation matrix: mass exactly one and
/// every coordinate slice {i : i_j = k} carries positive mass.
inline ValidationReport validate_transformation_matrix(const TransformationMatrix& t) {
  ValidationReport report{t.total_mass(), {}};
  for (int j = 1; j <= t.d(); ++j) {
    const auto sums = t.column_sums(j);
    for (std::size_t k = 0; k < sums.size(); ++k) {
      if (!sums[k].is_positive()) report.empty_slices.push_back({j, static_cast<int>(k) + 1});
    }
  }
  return report;
}

inline void require_valid(const TransformationMatrix& t) {
  const auto report = validate_transformation_matrix(t);
  if (!report.ok()) throw ValidationError("not a transformation matrix: " + report.describe());
}

struct UniformityResult {
  bool holds = true;
  /// First violating fiber in lexicographic order of i_{-j0}; the j0 slot holds 0.
  std::optional<MultiIndex> violating_fiber;
  Rational fiber_sum;
  Rational expected;

  explicit operator bool() const { return holds; }
};

/// Uniformity condition w.r.t. coordinate j0: for every reduced index i_{-j0},
/// sum_l tau(..., l, ...) equals prod_{j != j0} lambda(E^j_{i_j}).
inline UniformityResult uniformity_condition(const TransformationMatrix& t, int j0) {
  require_valid(t);
  t.check_axis(j0);
  const int d = t.d();
  const std::size_t hole = static_cast<std::size_t>(j0 - 1);

  std::map<MultiIndex, Rational> fiber;
  for (const auto& [key, mass] : t.entries()) {
    MultiIndex reduced = key;
    reduced[hole] = 0;
    fiber[reduced] += mass;
  }

  std::vector<std::vector<Rational>> lengths;
  for (int j = 1; j <= d; ++j) lengths.push_back(t.column_sums(j));

  std::vector<int> lo(static_cast<std::size_t>(d), 1);
  std::vector<int> hi = t.dims().extents();
  lo[hole] = 0;
  hi[hole] = 0;
  MultiIndex reduced = lo;
  do {
    Rational expected{1};
    for (std::size_t j = 0; j < reduced.size(); ++j) {
      if (j != hole) expected *= lengths[j][static_cast<std::size_t>(reduced[j] - 1)];
    }
    const auto it = fiber.find(reduced);
    const Rational got = it == fiber.end() ? Rational{} : it->second;
    if (got != expected) return {false, reduced, got, expected};
  } while (next_index<int>(reduced, lo, hi));
  return {};
}

/// Membership in U_d^N. Index set must be a cube of side N with slice masses
/// 1/N, and uniformity must hold in every coordinate.
inline bool is_uniform_class(const TransformationMatrix& t, int n) {
  if (!validate_transformation_matrix(t).ok()) return false;
  if (t.dims().cube_side() != n) return false;
  const Rational side{1, n};
  for (int j = 1; j <= t.d(); ++j) {
    for (const Rational& s : t.column_sums(j)) {
      if (s != side) return false;
    }
  }
  for (int j = 1; j <= t.d(); ++j) {
    if (!uniformity_condition(t, j)) return false;
  }
  return true;
}

/// The N for which t is in U_d^N, if any.
inline std::optional<int> uniform_class_side(const TransformationMatrix& t) {
  const int n = t.dims().cube_side();
  if (n >= 2 && is_uniform_class(t, n)) return n;
  return std::nullopt;
}

/// tau'(i_1..i_d) = tau(eps_1(i_1), ..., eps_d(i_d)).
inline TransformationMatrix permutation_action(const TransformationMatrix& t,
                                               std::span<const Permutation> eps) {
  if (static_cast<int>(eps.size()) != t.d()) {
    throw StructuralError("permutation_action: need one permutation per coordinate");
  }
  std::vector<Permutation> inverse;
  for (int j = 0; j < t.d(); ++j) {
    const Permutation& p = eps[static_cast<std::size_t>(j)];
    if (static_cast<int>(p.size()) != t.dims().m(j)) {
      throw StructuralError("permutation_action: permutation " + std::to_string(j + 1) +
                            " has length " + std::to_string(p.size()) + ", expected " +
                            std::to_string(t.dims().m(j)));
    }
    if (!is_bijection(p)) {
      throw StructuralError("permutation_action: " + format_permutation(p) + " is not a bijection");
    }
    Permutation inv(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) inv[static_cast<std::size_t>(p[k] - 1)] = static_cast<int>(k) + 1;
    inverse.push_back(std::move(inv));
  }
  TransformationMatrix::Entries out;
  for (const auto& [key, mass] : t.entries()) {
    MultiIndex i(key.size());
    for (std::size_t j = 0; j < key.size(); ++j) i[j] = permute(inverse[j], key[j]);
    out.emplace(std::move(i), mass);
  }
  return {t.dims(), out};
}

/// sum_k w_k tau_k; weights must be positive and sum to exactly one.
inline TransformationMatrix convex_combination(std::span<const TransformationMatrix> ts,
                                               std::span<const Rational> weights) {
  if (ts.empty()) throw StructuralError("convex_combination: no inputs");
  if (ts.size() != weights.size()) throw StructuralError("convex_combination: weight count mismatch");
  Rational total;
  for (const Rational& w : weights) {
    if (!w.is_positive()) throw ValidationError("convex_combination: weights must be positive");
    total += w;
  }
  if (total != Rational{1}) throw ValidationError("convex_combination: weights sum to " + total.str() + ", not 1");
  TransformationMatrix::Entries out;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    if (!(ts[k].dims() == ts.front().dims())) throw StructuralError("convex_combination: dims differ");
    for (const auto& [key, mass] : ts[k].entries()) out[key] += weights[k] * mass;
  }
  return {ts.front().dims(), out};
}

}  // namespace dstoch
