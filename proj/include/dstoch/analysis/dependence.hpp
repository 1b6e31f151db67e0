#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dstoch/chaos_game.hpp"
#include "dstoch/error.hpp"
#include "dstoch/grid_measure.hpp"
#include "dstoch/transformation_matrix.hpp"

namespace dstoch {

/// True iff every fiber along axis j0 (all indices agreeing off j0) holds exactly
/// one positive entry: matrix-level complete dependence of coordinate j0 on the rest.
inline bool fiber_uniqueness(const TransformationMatrix& t, int j0) {
  require_valid(t);
  t.check_axis(j0);
  std::map<MultiIndex, int> count;
  for (const auto& [key, mass] : t.entries()) {
    MultiIndex reduced = key;
    reduced[static_cast<std::size_t>(j0 - 1)] = 0;
    if (++count[reduced] > 1) return false;
  }
  std::uint64_t fibers = 1;
  for (int j = 0; j < t.d(); ++j) {
    if (j != j0 - 1) fibers *= static_cast<std::uint64_t>(t.dims().m(j));
  }
  return count.size() == fibers;
}

struct DependenceCheck {
  std::size_t samples = 0;
  std::size_t violations = 0;
  double fraction() const { return samples == 0 ? 0.0 : static_cast<double>(violations) / static_cast<double>(samples); }
};

/*
 * For t in U_d^N with unique fibers in every direction, the depth-k iterate
 * V^k(lambda_d) has, for each x-cell off axis j0, exactly one cell along j0;
 * its base-N digits are obtained level by level from the fiber of t. Counts the
 * samples whose depth-k cell along j0 differs from that predicted cell.
 */
inline DependenceCheck empirical_dependence_check(const SampleCloud& cloud, const TransformationMatrix& t, int depth,
                                                  int j0) {
  if (cloud.d != t.d()) throw StructuralError("empirical_dependence_check: cloud and matrix dimensions differ");
  if (depth < 1) throw StructuralError("empirical_dependence_check: depth must be >= 1");
  for (int j = 1; j <= t.d(); ++j) {
    if (!fiber_uniqueness(t, j)) {
      throw ValidationError("empirical_dependence_check: fibers along axis " + std::to_string(j) +
                            " are not unique; the matrix is not completely dependent");
    }
  }
  const auto n = uniform_class_side(t);
  if (!n) throw UnsupportedConfiguration("empirical_dependence_check: matrix must be in U_d^N");
  t.check_axis(j0);
  const std::size_t hole = static_cast<std::size_t>(j0 - 1);

  std::map<MultiIndex, int> level_of;  // reduced index (hole = 0) -> unique level along j0
  for (const auto& [key, mass] : t.entries()) {
    MultiIndex reduced = key;
    reduced[hole] = 0;
    level_of.emplace(std::move(reduced), key[hole]);
  }

  std::int64_t r = 1;
  for (int l = 0; l < depth; ++l) r *= *n;

  DependenceCheck out{cloud.size(), 0};
  const auto d = static_cast<std::size_t>(t.d());
  std::vector<std::int64_t> cell(d);
  MultiIndex digits(d);
  for (std::size_t s = 0; s < cloud.size(); ++s) {
    const auto x = cloud.point(s);
    for (std::size_t j = 0; j < d; ++j) cell[j] = cell_coordinate(x[j], r);
    std::int64_t predicted = 0;
    std::int64_t place = r;
    for (int l = 0; l < depth; ++l) {
      place /= *n;
      for (std::size_t j = 0; j < d; ++j) digits[j] = j == hole ? 0 : static_cast<int>((cell[j] / place) % *n) + 1;
      predicted = predicted * *n + (level_of.at(digits) - 1);
    }
    if (predicted != cell[hole]) ++out.violations;
  }
  return out;
}

}  // namespace dstoch
