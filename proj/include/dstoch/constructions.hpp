#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "dstoch/chaos_game.hpp"
#include "dstoch/error.hpp"
#include "dstoch/grid_measure.hpp"
#include "dstoch/multi_index.hpp"
#include "dstoch/permutation.hpp"
#include "dstoch/rational.hpp"
#include "dstoch/transformation_matrix.hpp"

namespace dstoch {

/// Product measure: mass 1/N^d on every index of {1..N}^d.
inline TransformationMatrix uniform_tau(int d, int n) {
  const Dims dims = Dims::cube(d, n);
  const Rational mass{1, static_cast<std::int64_t>(dims.cardinality())};
  TransformationMatrix::Entries e;
  for_each_index(dims, [&](const MultiIndex& i) { e.emplace(i, mass); });
  return {dims, e};
}

/// Mass 1/N^(d-1) on every index whose digit sum sum_j (i_j - 1) is a multiple of
/// N. Each (d-1)-fiber, in every direction, contains exactly one support point.
inline TransformationMatrix sierpinski_tau(int d, int n) {
  if (d < 3) throw StructuralError("sierpinski_tau: d must be >= 3");
  if (n < 2) throw StructuralError("sierpinski_tau: N must be >= 2");
  const Dims dims = Dims::cube(d, n);
  const Rational mass{1, static_cast<std::int64_t>(dims.cardinality() / static_cast<std::uint64_t>(n))};
  TransformationMatrix::Entries e;
  for_each_index(dims, [&](const MultiIndex& i) {
    int digit_sum = 0;
    for (int v : i) digit_sum += v - 1;
    if (digit_sum % n == 0) e.emplace(i, mass);
  });
  return {dims, e};
}

/// Uniform distribution on {(i, eps^m(i), m) : i, m in 1..N} for an N-cycle eps.
inline TransformationMatrix rotation_tau(const Permutation& eps) {
  const int n = static_cast<int>(eps.size());
  if (n < 3) throw StructuralError("rotation_tau: N must be >= 3");
  if (!is_bijection(eps)) throw StructuralError("rotation_tau: " + format_permutation(eps) + " is not a permutation");
  if (!is_full_cycle(eps)) {
    throw ValidationError("rotation_tau: " + format_permutation(eps) +
                          " violates the period condition (every point must have minimal period N)");
  }
  const Rational mass{1, static_cast<std::int64_t>(n) * n};
  TransformationMatrix::Entries e;
  Permutation p = identity_permutation(n);
  for (int m = 1; m <= n; ++m) {
    for (int& v : p) v = permute(eps, v);  // p = eps^m
    for (int i = 1; i <= n; ++i) e.emplace(MultiIndex{i, permute(p, i), m}, mass);
  }
  return {Dims::cube(3, n), e};
}

/// Equal-weight mixture of the rotation matrices of the two 3-cycles (231) and
/// (312). Its support has 15 points: the diagonal (i,i,3) with mass 1/9 and twelve
/// points with mass 1/18. Exposed on the command line as the preset "example-5-1".
inline TransformationMatrix rotation_mixture_tau() {
  const std::vector<TransformationMatrix> parts{rotation_tau({2, 3, 1}), rotation_tau({3, 1, 2})};
  const std::vector<Rational> w{Rational{1, 2}, Rational{1, 2}};
  return convex_combination(parts, w);
}

/*
 * Grid discretization at resolution k of the law of
 * (X_1, ..., X_{d-1}, X_1 + ... + X_{d-1} mod 1) with X ~ lambda_{d-1}: mass
 * k^-(d-1) on every cell whose last coordinate is (c_1 + ... + c_{d-1}) mod k.
 * All (d-1)-marginals are exactly uniform.
 */
inline GridMeasure modsum_grid_measure(int d, std::int64_t k) {
  if (d < 3) throw StructuralError("modsum_grid_measure: d must be >= 3");
  if (k < 1) throw StructuralError("modsum_grid_measure: resolution must be >= 1");
  std::int64_t base = 1;
  for (int j = 0; j < d - 1; ++j) base *= k;
  const Rational mass{1, base};
  GridMeasure::Masses m;
  const std::vector<std::int64_t> lo(static_cast<std::size_t>(d - 1), 0);
  const std::vector<std::int64_t> hi(static_cast<std::size_t>(d - 1), k - 1);
  Cell head = lo;
  do {
    std::int64_t s = 0;
    for (auto c : head) s += c;
    Cell cell = head;
    cell.push_back(s % k);
    m.emplace(std::move(cell), mass);
  } while (next_index<std::int64_t>(head, lo, hi));
  return {std::vector<std::int64_t>(static_cast<std::size_t>(d), k), m};
}

/// Enumerates (Sigma_N)^d lexicographically over tuples of one-line permutation
/// vectors (first coordinate most significant). The identity tuple comes first.
class PermutationTupleEnumerator {
 public:
  PermutationTupleEnumerator(int d, int n) : tuple_(static_cast<std::size_t>(d), identity_permutation(n)) {
    if (d < 1 || n < 1) throw StructuralError("PermutationTupleEnumerator: d and N must be positive");
  }

  const std::vector<Permutation>& current() const noexcept { return tuple_; }
  bool done() const noexcept { return done_; }
  std::uint64_t position() const noexcept { return position_; }

  /// Moves to the next tuple; returns false (and sets done()) after the last one.
  bool advance() {
    if (done_) return false;
    for (std::size_t j = tuple_.size(); j-- > 0;) {
      if (std::next_permutation(tuple_[j].begin(), tuple_[j].end())) {
        ++position_;
        return true;
      }
      // next_permutation wrapped tuple_[j] back to the identity: carry
    }
    done_ = true;
    return false;
  }

 private:
  std::vector<Permutation> tuple_;
  std::uint64_t position_ = 0;
  bool done_ = false;
};

struct DenseDimensionResult {
  TransformationMatrix sigma;
  std::uint64_t terms = 0;  // n: number of permuted copies averaged
};

/*
 * Averages permutation-twisted copies of sierpinski_tau(d, N) in enumeration
 * order, sigma_n = (1/n) sum_{k <= n} tau^{e_k}, and returns the first sigma_n
 * whose support size lies in [(k-1) N^(d-1), k N^(d-1)]. Then
 * log(k-1)/log N + d - 1 <= dim <= log k/log N + d - 1.
 */
inline DenseDimensionResult dense_dimension_tau(int d, int n, int k) {
  if (d < 3 || n < 2) throw StructuralError("dense_dimension_tau: need d >= 3 and N >= 2");
  if (k < 2 || k > n) throw StructuralError("dense_dimension_tau: need 2 <= k <= N");
  const TransformationMatrix base = sierpinski_tau(d, n);
  const std::uint64_t slice = base.support_size();  // N^(d-1)
  const std::uint64_t lo = static_cast<std::uint64_t>(k - 1) * slice;
  const std::uint64_t hi = static_cast<std::uint64_t>(k) * slice;

  std::set<MultiIndex> support;
  std::vector<TransformationMatrix> terms;
  PermutationTupleEnumerator e(d, n);
  do {
    terms.push_back(permutation_action(base, e.current()));
    for (const auto& [key, mass] : terms.back().entries()) support.insert(key);
    if (support.size() >= lo && support.size() <= hi) {
      const std::vector<Rational> w(terms.size(), Rational{1, static_cast<std::int64_t>(terms.size())});
      return {convex_combination(terms, w), terms.size()};
    }
  } while (e.advance());
  throw ValidationError("dense_dimension_tau: support target [" + std::to_string(lo) + ", " + std::to_string(hi) +
                        "] not reached before the enumeration was exhausted");
}

/// tau^N(i) = mu(C_i^N), the mass of the cube prod_j [(i_j-1)/N, i_j/N].
/// N must divide every resolution component so cube masses are exact.
inline TransformationMatrix checkerboard_tau(const GridMeasure& mu, int n) {
  if (n < 2) throw StructuralError("checkerboard_tau: N must be >= 2");
  if (mu.d() < 2) throw StructuralError("checkerboard_tau: measure dimension must be >= 2");
  for (auto r : mu.resolution()) {
    if (r % n != 0) {
      throw StructuralError("checkerboard_tau: N=" + std::to_string(n) + " does not divide resolution " +
                            std::to_string(r));
    }
  }
  TransformationMatrix::Entries e;
  for (const auto& [cell, mass] : mu.masses()) {
    MultiIndex i(cell.size());
    for (std::size_t j = 0; j < cell.size(); ++j) {
      i[j] = static_cast<int>(cell[j] / (mu.resolution()[j] / n)) + 1;
    }
    e[i] += mass;
  }
  return {Dims::cube(mu.d(), n), e};
}

struct SampledCheckerboard {
  TransformationMatrix tau;
  std::size_t samples = 0;
  bool approximate = true;  // masses are empirical frequencies
};

/// Empirical cube frequencies of a sample cloud (boundary points go to the lower cube).
inline SampledCheckerboard checkerboard_tau(const SampleCloud& cloud, int n) {
  if (n < 2) throw StructuralError("checkerboard_tau: N must be >= 2");
  if (cloud.d < 2) throw StructuralError("checkerboard_tau: cloud dimension must be >= 2");
  if (cloud.size() == 0) throw StructuralError("checkerboard_tau: empty cloud");
  std::map<MultiIndex, std::int64_t> counts;
  for (std::size_t k = 0; k < cloud.size(); ++k) {
    const auto x = cloud.point(k);
    MultiIndex i(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) i[j] = static_cast<int>(cell_coordinate(x[j], n)) + 1;
    ++counts[i];
  }
  const auto total = static_cast<std::int64_t>(cloud.size());
  TransformationMatrix::Entries e;
  for (const auto& [i, c] : counts) e.emplace(i, Rational{c, total});
  return {TransformationMatrix{Dims::cube(cloud.d, n), e}, cloud.size(), true};
}

}  // namespace dstoch
