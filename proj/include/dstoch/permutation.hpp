#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "dstoch/error.hpp"

namespace dstoch {

/// Permutation of {1..N} in one-line notation: p[k-1] holds the image of k,
/// so "(231)" is {2, 3, 1}.
using Permutation = std::vector<int>;

inline bool is_bijection(const Permutation& p) {
  std::vector<bool> seen(p.size() + 1, false);
  for (int v : p) {
    if (v < 1 || v > static_cast<int>(p.size()) || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = true;
  }
  return true;
}

inline Permutation identity_permutation(int n) {
  Permutation p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 1);
  return p;
}

inline int permute(const Permutation& p, int k) { return p[static_cast<std::size_t>(k - 1)]; }

/// p^k (k-fold composition), k >= 0.
inline Permutation power(const Permutation& p, int k) {
  Permutation out = identity_permutation(static_cast<int>(p.size()));
  for (int step = 0; step < k; ++step) {
    for (int& v : out) v = permute(p, v);
  }
  return out;
}

/// True iff p is a single cycle through all N points (every point has minimal period N).
inline bool is_full_cycle(const Permutation& p) {
  if (!is_bijection(p) || p.empty()) return false;
  int k = 1;
  std::size_t len = 0;
  do {
    k = permute(p, k);
    ++len;
  } while (k != 1);
  return len == p.size();
}

inline std::string format_permutation(const Permutation& p) {
  std::string s = "(";
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (k > 0 && p.size() >= 10) s += " ";
    s += std::to_string(p[k]);
  }
  return s + ")";
}

}  // namespace dstoch
