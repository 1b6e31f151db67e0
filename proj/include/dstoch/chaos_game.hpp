#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "dstoch/error.hpp"
#include "dstoch/ifsp.hpp"
#include "dstoch/transformation_matrix.hpp"

namespace dstoch {

/// Name recorded with every cloud. The stream is std::mt19937_64 seeded with the
/// 64-bit seed; each step draws one word x, forms u = (x >> 11) * 2^-53 and picks
/// the first map (in lexicographic index order) whose cumulative probability
/// exceeds u.
inline constexpr const char* kChaosGameAlgorithm = "mt19937_64/u53-cdf";

inline constexpr int kDefaultBurnIn = 64;
// Successive points share all but one base-N digit, so raw orbits are far from
// iid. 64 steps push every shared digit below double precision.
inline constexpr int kDefaultThin = 64;

/// Points in [0,1]^d stored row-major, plus what is needed to regenerate them.
struct SampleCloud {
  int d = 0;
  std::vector<double> coords;
  std::uint64_t seed = 0;
  std::string algorithm = kChaosGameAlgorithm;
  int burn_in = kDefaultBurnIn;
  int thin = kDefaultThin;

  std::size_t size() const noexcept { return d == 0 ? 0 : coords.size() / static_cast<std::size_t>(d); }

  std::span<const double> point(std::size_t k) const {
    return {coords.data() + k * static_cast<std::size_t>(d), static_cast<std::size_t>(d)};
  }

  /// All values of one coordinate (1-based axis).
  std::vector<double> axis(int j) const {
    if (j < 1 || j > d) throw StructuralError("SampleCloud: axis " + std::to_string(j) + " out of range");
    std::vector<double> out(size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = coords[k * static_cast<std::size_t>(d) + static_cast<std::size_t>(j - 1)];
    return out;
  }
};

/// Random-iteration sampling of the IFSP fixed point. Starts at (1/2, ..., 1/2),
/// discards `burn_in` steps, then keeps every `thin`-th point until `count` are
/// stored. Works for any valid transformation matrix.
inline SampleCloud chaos_game(const TransformationMatrix& t, std::size_t count, std::uint64_t seed,
                              int burn_in = kDefaultBurnIn, int thin = kDefaultThin) {
  if (count == 0) throw StructuralError("chaos_game: count must be positive");
  if (burn_in < 0) throw StructuralError("chaos_game: negative burn-in");
  if (thin < 1) throw StructuralError("chaos_game: thinning factor must be >= 1");
  const Ifsp s = build_ifsp(t);
  const auto d = static_cast<std::size_t>(t.d());

  std::vector<double> cdf;
  std::vector<double> offset;
  std::vector<double> scale;
  Rational acc;
  for (const auto& m : s.maps) {
    acc += m.probability;
    cdf.push_back(acc.to_double());
    for (std::size_t j = 0; j < d; ++j) {
      offset.push_back(m.map.offset[j].to_double());
      scale.push_back(m.map.scale[j].to_double());
    }
  }
  cdf.back() = 1.0;

  std::mt19937_64 gen(seed);
  std::vector<double> x(d, 0.5);
  const auto step = [&] {
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    std::size_t k = 0;
    while (cdf[k] <= u) ++k;
    for (std::size_t j = 0; j < d; ++j) x[j] = std::min(1.0, offset[k * d + j] + scale[k * d + j] * x[j]);
  };

  SampleCloud cloud{t.d(), {}, seed, kChaosGameAlgorithm, burn_in, thin};
  cloud.coords.reserve(count * d);
  for (int b = 0; b < burn_in; ++b) step();
  for (std::size_t n = 0; n < count; ++n) {
    for (int k = 0; k < thin; ++k) step();
    cloud.coords.insert(cloud.coords.end(), x.begin(), x.end());
  }
  return cloud;
}

}  // namespace dstoch
