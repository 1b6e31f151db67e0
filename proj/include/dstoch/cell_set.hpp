#pragma once

#include <compare>
#include <cstddef>
#include <set>
#include <vector>

#include "dstoch/error.hpp"
#include "dstoch/ifsp.hpp"
#include "dstoch/rational.hpp"
#include "dstoch/transformation_matrix.hpp"

namespace dstoch {

/// Closed axis-aligned box [lo_1, hi_1] x ... x [lo_d, hi_d].
struct Rect {
  std::vector<Rational> lo;
  std::vector<Rational> hi;

  int d() const noexcept { return static_cast<int>(lo.size()); }

  Rational volume() const {
    Rational v{1};
    for (std::size_t j = 0; j < lo.size(); ++j) v *= hi[j] - lo[j];
    return v;
  }

  friend auto operator<=>(const Rect&, const Rect&) = default;
};

inline Rect image(const AffineMap& f, const Rect& r) {
  Rect out;
  for (std::size_t j = 0; j < r.lo.size(); ++j) {
    out.lo.push_back(f.apply_axis(j, r.lo[j]));
    out.hi.push_back(f.apply_axis(j, r.hi[j]));
  }
  return out;
}

/// A depth-n Hutchinson iterate: the boxes f_{i_1} o ... o f_{i_n}(R) for words
/// over the support. Rectangles of distinct words meet in null sets only.
struct CellSet {
  int d = 0;
  int depth = 0;
  std::set<Rect> rects;

  static CellSet unit_cube(int d) {
    if (d < 1) throw StructuralError("CellSet: dimension must be positive");
    CellSet c{d, 0, {}};
    c.rects.insert(Rect{std::vector<Rational>(static_cast<std::size_t>(d), Rational{0}),
                        std::vector<Rational>(static_cast<std::size_t>(d), Rational{1})});
    return c;
  }

  std::size_t size() const noexcept { return rects.size(); }
};

inline constexpr std::size_t kDefaultCellBudget = 20'000'000;

/// H(Z) = union of f_i(Z) over the support of t.
inline CellSet hutchinson_step(const TransformationMatrix& t, const CellSet& c,
                               std::size_t budget = kDefaultCellBudget) {
  if (c.d != t.d()) throw StructuralError("hutchinson_step: cell set dimension differs from matrix");
  if (c.size() * t.support_size() > budget) {
    throw BudgetExceeded("hutchinson_step: depth " + std::to_string(c.depth + 1) + " needs " +
                             std::to_string(c.size() * t.support_size()) + " cells",
                         budget);
  }
  const Ifsp s = build_ifsp(t);
  CellSet out{c.d, c.depth + 1, {}};
  for (const auto& m : s.maps) {
    for (const Rect& r : c.rects) out.rects.insert(image(m.map, r));
  }
  return out;
}

/// H^n([0,1]^d).
inline CellSet hutchinson_iterate(const TransformationMatrix& t, int n,
                                  std::size_t budget = kDefaultCellBudget) {
  CellSet c = CellSet::unit_cube(t.d());
  for (int k = 0; k < n; ++k) c = hutchinson_step(t, c, budget);
  return c;
}

inline Rational cellset_volume(const CellSet& c) {
  Rational v;
  for (const Rect& r : c.rects) v += r.volume();
  return v;
}

}  // namespace dstoch
