#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <vector>

#include "dstoch/cell_set.hpp"
#include "dstoch/chaos_game.hpp"
#include "dstoch/constructions.hpp"
#include "dstoch/markov.hpp"

using namespace dstoch;

TEST(Hutchinson, SierpinskiFirstStep) {
  const CellSet c = hutchinson_step(sierpinski_tau(3, 2), CellSet::unit_cube(3));
  ASSERT_EQ(c.size(), 4U);
  std::set<std::vector<Rational>> corners;
  for (const Rect& r : c.rects) {
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(r.hi[j] - r.lo[j], Rational(1, 2));
    corners.insert(r.lo);
  }
  const Rational h{1, 2}, z{0};
  EXPECT_EQ(corners, (std::set<std::vector<Rational>>{{z, z, z}, {z, h, h}, {h, z, h}, {h, h, z}}));
}

TEST(Hutchinson, CountsAndVolumes) {
  const auto t = sierpinski_tau(3, 2);
  CellSet c = CellSet::unit_cube(3);
  EXPECT_EQ(cellset_volume(c), Rational{1});
  for (int n = 1; n <= 5; ++n) {
    c = hutchinson_step(t, c);
    EXPECT_EQ(c.depth, n);
    EXPECT_EQ(c.size(), static_cast<std::size_t>(1) << (2 * n));
    EXPECT_EQ(cellset_volume(c), pow(Rational(1, 2), static_cast<unsigned>(n)));
  }
}

TEST(Hutchinson, FullSupportCoversCube) {
  const auto t = uniform_tau(3, 2);
  for (int n = 0; n <= 3; ++n) EXPECT_EQ(cellset_volume(hutchinson_iterate(t, n)), Rational{1});
}

TEST(Hutchinson, SingularityBound) {
  const TransformationMatrix t{Dims::cube(2, 2),
                               {{{1, 1}, Rational(1, 3)}, {{2, 1}, Rational(1, 6)}, {{2, 2}, Rational(1, 2)}}};
  const Rational q = *empty_cell_volume(t);
  for (int n = 0; n <= 6; ++n) {
    EXPECT_LE(cellset_volume(hutchinson_iterate(t, n)), pow(Rational{1} - q, static_cast<unsigned>(n)));
  }
}

TEST(Hutchinson, Budget) {
  try {
    hutchinson_iterate(sierpinski_tau(3, 2), 4, 100);
    FAIL();
  } catch (const BudgetExceeded& e) {
    EXPECT_EQ(e.limit(), 100U);
    EXPECT_NE(std::string(e.what()).find("100"), std::string::npos);
  }
}

namespace {

// V^n(lambda_3) for a U-class matrix: a resolution-N^n cell has mass
// prod_levels tau(digit triple + 1), read digit by digit in base N
Rational digit_oracle(const TransformationMatrix& t, int n_side, int depth, const Cell& c) {
  Rational m{1};
  std::vector<std::int64_t> rest(c);
  for (int l = 0; l < depth; ++l) {
    MultiIndex digit;
    for (auto& v : rest) {
      digit.push_back(static_cast<int>(v % n_side) + 1);
      v /= n_side;
    }
    m *= t.at(digit);
  }
  return m;
}

}  // namespace

TEST(Markov, MatchesDigitOracle) {
  for (const auto& t : {sierpinski_tau(3, 2), sierpinski_tau(3, 3), rotation_mixture_tau()}) {
    const int n = *uniform_class_side(t);
    const auto it = iterate_markov(t, lebesgue(3), 3);
    for (int depth = 0; depth <= 3; ++depth) {
      const auto& mu = it[static_cast<std::size_t>(depth)];
      std::int64_t r = 1;
      for (int l = 0; l < depth; ++l) r *= n;
      EXPECT_EQ(mu.uniform_resolution(), r);
      Rational total;
      for (std::int64_t a = 0; a < r; ++a)
        for (std::int64_t b = 0; b < r; ++b)
          for (std::int64_t c = 0; c < r; ++c) {
            const Cell cell{a, b, c};
            EXPECT_EQ(mu.at(cell), digit_oracle(t, n, depth, cell));
            total += mu.at(cell);
          }
      EXPECT_EQ(total, Rational{1});
    }
  }
}

TEST(Markov, KnownImages) {
  const auto s = markov_step(sierpinski_tau(3, 2), lebesgue(3));
  EXPECT_EQ(s.size(), 4U);
  EXPECT_EQ(s.uniform_resolution(), 2);
  for (const auto& [c, m] : s.masses()) EXPECT_EQ(m, Rational(1, 4));

  EXPECT_EQ(markov_step(uniform_tau(3, 2), lebesgue(3)), lebesgue(3, 2));
  EXPECT_EQ(markov_step(uniform_tau(3, 3), lebesgue(3, 2)), lebesgue(3, 6));

  const auto e = markov_step(rotation_mixture_tau(), lebesgue(3));
  EXPECT_EQ(e.size(), 15U);
  EXPECT_EQ(e.uniform_resolution(), 3);
  int heavy = 0;
  for (const auto& [c, m] : e.masses()) {
    EXPECT_TRUE(m == Rational(1, 18) || m == Rational(1, 9));
    heavy += m == Rational(1, 9);
  }
  EXPECT_EQ(heavy, 3);
}

TEST(Markov, IterationCountsAndErrors) {
  const auto it = iterate_markov(sierpinski_tau(3, 2), lebesgue(3), 6);
  ASSERT_EQ(it.size(), 7U);
  EXPECT_EQ(it.back().size(), 4096U);
  for (const auto& [c, m] : it.back().masses()) EXPECT_EQ(m, Rational(1, 4096));
  EXPECT_EQ(iterate_markov(sierpinski_tau(3, 2), lebesgue(3), 0).size(), 1U);

  const TransformationMatrix skew{Dims::cube(2, 2), {{{1, 1}, Rational(1, 3)}, {{2, 2}, Rational(2, 3)}}};
  EXPECT_THROW(markov_step(skew, lebesgue(2)), UnsupportedConfiguration);
  EXPECT_THROW(iterate_markov(sierpinski_tau(3, 2), lebesgue(3), 6, 1000), BudgetExceeded);
  EXPECT_THROW(markov_step(sierpinski_tau(3, 2), lebesgue(2)), StructuralError);
}

TEST(ChaosGame, Deterministic) {
  const auto t = sierpinski_tau(3, 2);
  const auto a = chaos_game(t, 1000, 42);
  const auto b = chaos_game(t, 1000, 42);
  const auto c = chaos_game(t, 1000, 43);
  EXPECT_EQ(a.coords, b.coords);
  EXPECT_NE(a.coords, c.coords);
  EXPECT_EQ(a.size(), 1000U);
  EXPECT_EQ(a.seed, 42U);
  EXPECT_EQ(a.algorithm, kChaosGameAlgorithm);
  for (double v : a.coords) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(ChaosGame, ThinningKeepsEveryKthPoint) {
  const auto t = sierpinski_tau(3, 2);
  const auto all = chaos_game(t, 40, 5, 10, 1);
  const auto thin = chaos_game(t, 10, 5, 10, 4);
  for (std::size_t k = 0; k < 10; ++k) {
    const auto p = thin.point(k);
    const auto q = all.point(4 * k + 3);
    EXPECT_TRUE(std::equal(p.begin(), p.end(), q.begin()));
  }
  EXPECT_THROW(chaos_game(t, 0, 1), StructuralError);
  EXPECT_THROW(chaos_game(t, 10, 1, 64, 0), StructuralError);
}

TEST(ChaosGame, SamplesStayNearAttractorApproximation) {
  const auto t = sierpinski_tau(3, 2);
  const int k = 4;
  const CellSet c = hutchinson_iterate(t, k);
  std::vector<std::array<double, 6>> boxes;
  for (const Rect& r : c.rects) {
    boxes.push_back({r.lo[0].to_double(), r.lo[1].to_double(), r.lo[2].to_double(), r.hi[0].to_double(),
                     r.hi[1].to_double(), r.hi[2].to_double()});
  }
  const double allowed = std::sqrt(3.0) * std::pow(2.0, -k);
  const auto cloud = chaos_game(t, 20000, 11);
  for (std::size_t s = 0; s < cloud.size(); ++s) {
    const auto x = cloud.point(s);
    double best = 1e9;
    for (const auto& b : boxes) {
      double acc = 0.0;
      for (int j = 0; j < 3; ++j) {
        const double gap = std::max({0.0, b[static_cast<std::size_t>(j)] - x[static_cast<std::size_t>(j)],
                                     x[static_cast<std::size_t>(j)] - b[static_cast<std::size_t>(j) + 3]});
        acc += gap * gap;
      }
      best = std::min(best, std::sqrt(acc));
    }
    ASSERT_LE(best, allowed) << "sample " << s;
  }
}
