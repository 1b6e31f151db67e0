#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "dstoch/analysis/copula.hpp"
#include "dstoch/analysis/d1.hpp"
#include "dstoch/analysis/dependence.hpp"
#include "dstoch/analysis/ks.hpp"
#include "dstoch/analysis/marginal.hpp"
#include "dstoch/analysis/transport.hpp"
#include "dstoch/constructions.hpp"
#include "dstoch/markov.hpp"

using namespace dstoch;

namespace {

// random measure on a d-dim grid of side r, every mass a multiple of 1/units
GridMeasure random_measure(std::mt19937_64& g, int d, std::int64_t r, int units) {
  std::uniform_int_distribution<std::int64_t> cell(0, r - 1);
  GridMeasure::Masses m;
  for (int u = 0; u < units; ++u) {
    Cell c(static_cast<std::size_t>(d));
    for (auto& v : c) v = cell(g);
    m[c] += Rational{1, units};
  }
  return {std::vector<std::int64_t>(static_cast<std::size_t>(d), r), m};
}

// random measure whose marginal on axes 1..d-1 is uniform at resolution rx;
// every x-cell spreads its volume over `spread` random y-cells of resolution ry
GridMeasure random_kernel_measure(std::mt19937_64& g, int d, std::int64_t rx, std::int64_t ry, int spread) {
  std::vector<std::int64_t> res(static_cast<std::size_t>(d - 1), rx);
  res.push_back(ry);
  const GridMeasure base = lebesgue(std::vector<std::int64_t>(static_cast<std::size_t>(d - 1), rx));
  std::uniform_int_distribution<std::int64_t> y(0, ry - 1);
  GridMeasure::Masses m;
  for (const auto& [x, mass] : base.masses()) {
    for (int k = 0; k < spread; ++k) {
      Cell c = x;
      c.push_back(y(g));
      m[c] += mass / Rational{spread};
    }
  }
  return {res, m};
}

double center_distance(const GridMeasure& a, const Cell& ca, const GridMeasure& b, const Cell& cb) {
  const auto x = a.center(ca), y = b.center(cb);
  double s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) s += (x[j] - y[j]) * (x[j] - y[j]);
  return std::sqrt(s);
}

}  // namespace

TEST(Marginal, SierpinskiIteratesAreUniform) {
  const auto it = iterate_markov(sierpinski_tau(3, 2), lebesgue(3), 4);
  for (const auto& mu : it) {
    for (int j = 1; j <= 3; ++j) {
      EXPECT_TRUE(is_uniform_grid(marginal(mu, j)));
      EXPECT_FALSE(first_nonuniform_fiber(mu, j).has_value());
    }
  }
  EXPECT_EQ(marginal(lebesgue(3, 4), 2), lebesgue(2, 4));
  const auto e = iterate_markov(rotation_mixture_tau(), lebesgue(3), 2).back();
  EXPECT_EQ(e.uniform_resolution(), 9);
  EXPECT_EQ(uniform_marginals(e), (std::vector<bool>{true, true, true}));
}

TEST(Marginal, DetectsNonUniformFiber) {
  const GridMeasure mu{{2, 2}, {{{0, 0}, Rational(1, 2)}, {{1, 0}, Rational(1, 2)}}};
  EXPECT_TRUE(is_uniform_grid(marginal(mu, 2)));
  EXPECT_FALSE(is_uniform_grid(marginal(mu, 1)));
  EXPECT_EQ(first_nonuniform_fiber(mu, 1), (Cell{0}));
  EXPECT_THROW(marginal(mu, 3), StructuralError);
}

TEST(Copula, Evaluation) {
  const std::vector<Rational> ones(3, Rational{1});
  const auto s = iterate_markov(sierpinski_tau(3, 2), lebesgue(3), 3).back();
  EXPECT_EQ(copula_eval(s, ones), Rational{1});
  const auto lam = lebesgue(3, 4);
  const std::vector<Rational> x{Rational(1, 3), Rational(5, 7), Rational(2, 9)};
  EXPECT_EQ(copula_eval(lam, x), Rational(1, 3) * Rational(5, 7) * Rational(2, 9));
  // box sums at grid vertices
  const auto& m = s.masses();
  for (std::int64_t a = 0; a <= 8; a += 3)
    for (std::int64_t b = 0; b <= 8; b += 2)
      for (std::int64_t c = 0; c <= 8; ++c) {
        Rational box;
        for (const auto& [cell, mass] : m) {
          if (cell[0] < a && cell[1] < b && cell[2] < c) box += mass;
        }
        const std::vector<Rational> v{Rational(a, 8), Rational(b, 8), Rational(c, 8)};
        EXPECT_EQ(copula_eval(s, v), box);
      }
  EXPECT_THROW(copula_eval(s, std::vector<Rational>{Rational{1}, Rational{1}}), StructuralError);
  EXPECT_THROW(copula_eval(s, std::vector<Rational>{Rational{2}, Rational{1}, Rational{0}}), StructuralError);
}

TEST(Copula, SupDistanceMatchesVertexBruteForce) {
  std::mt19937_64 g(17);
  for (int trial = 0; trial < 6; ++trial) {
    const auto a = random_measure(g, 3, 2 + trial % 3, 12);
    const auto b = random_measure(g, 3, 3, 9);
    const auto sd = copula_sup_distance(a, b);
    Rational brute;
    const auto& G = sd.grid;
    for (std::int64_t i = 0; i <= G[0]; ++i)
      for (std::int64_t j = 0; j <= G[1]; ++j)
        for (std::int64_t k = 0; k <= G[2]; ++k) {
          const std::vector<Rational> v{Rational(i, G[0]), Rational(j, G[1]), Rational(k, G[2])};
          brute = std::max(brute, abs(copula_eval(a, v) - copula_eval(b, v)));
        }
    EXPECT_EQ(sd.vertex_max, brute);
    // off-vertex points never exceed the bound
    std::uniform_int_distribution<int> u(0, 997);
    for (int s = 0; s < 200; ++s) {
      const std::vector<Rational> x{Rational(u(g), 997), Rational(u(g), 997), Rational(u(g), 997)};
      EXPECT_LE(abs(copula_eval(a, x) - copula_eval(b, x)).to_double(), sd.bound() + 1e-15);
    }
  }
}

TEST(Copula, SupDistanceKnownValues) {
  const auto same = copula_sup_distance(lebesgue(3, 4), lebesgue(3, 2));
  EXPECT_EQ(same.vertex_max, Rational{});
  EXPECT_DOUBLE_EQ(same.slack, 3.0 / 8.0);
  const auto sd = copula_sup_distance(lebesgue(3), modsum_grid_measure(3, 2));
  const std::vector<Rational> half(3, Rational(1, 2));
  const Rational at_half = abs(copula_eval(modsum_grid_measure(3, 2), half) - Rational(1, 8));
  EXPECT_EQ(at_half, Rational(1, 8));
  EXPECT_GE(sd.vertex_max, at_half);
  EXPECT_THROW(copula_sup_distance(lebesgue(3, 64), lebesgue(3, 63), 1000), BudgetExceeded);
}

TEST(Wasserstein, PointMassesAndIdentity) {
  const auto a = cell_mass({4, 4, 4}, {0, 0, 0});
  const auto b = cell_mass({4, 4, 4}, {3, 1, 2});
  EXPECT_NEAR(wasserstein1(a, b).distance, std::sqrt(9.0 + 1.0 + 4.0) / 4.0, 1e-15);
  const auto s = iterate_markov(sierpinski_tau(3, 2), lebesgue(3), 3).back();
  EXPECT_EQ(wasserstein1(s, s).distance, 0.0);
}

TEST(Wasserstein, AssignmentBruteForce) {
  // equal masses 1/n on n cells per side: an optimal plan is a permutation
  std::mt19937_64 g(5);
  for (int n = 2; n <= 6; ++n) {
    for (int trial = 0; trial < 4; ++trial) {
      std::vector<Cell> xs, ys;
      std::uniform_int_distribution<std::int64_t> c(0, 7);
      GridMeasure::Masses ma, mb;
      while (static_cast<int>(ma.size()) < n) ma.emplace(Cell{c(g), c(g), c(g)}, Rational{1, n});
      while (static_cast<int>(mb.size()) < n) mb.emplace(Cell{c(g), c(g), c(g)}, Rational{1, n});
      const GridMeasure a{{8, 8, 8}, ma}, b{{8, 8, 8}, mb};
      for (const auto& [k, m] : ma) xs.push_back(k);
      for (const auto& [k, m] : mb) ys.push_back(k);
      std::vector<int> p(static_cast<std::size_t>(n));
      std::iota(p.begin(), p.end(), 0);
      double best = 1e9;
      do {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += center_distance(a, xs[static_cast<std::size_t>(i)], b, ys[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])]);
        best = std::min(best, s / n);
      } while (std::next_permutation(p.begin(), p.end()));
      const auto r = wasserstein1(a, b);
      EXPECT_NEAR(r.distance, best, 1e-12);
      EXPECT_TRUE(certify_transport(a, b, r).optimal(1e-9));
    }
  }
}

TEST(Wasserstein, OneDimensionalCdfFormula) {
  // second axis has a single cell, so the cost is |x - y| and W1 = int |F - G|
  std::mt19937_64 g(9);
  for (int trial = 0; trial < 10; ++trial) {
    const std::int64_t r = 10 + trial;
    std::uniform_int_distribution<std::int64_t> c(0, r - 1);
    GridMeasure::Masses ma, mb;
    for (int u = 0; u < 7; ++u) ma[Cell{c(g), 0}] += Rational{1, 7};
    for (int u = 0; u < 5; ++u) mb[Cell{c(g), 0}] += Rational{1, 5};
    const GridMeasure a{{r, 1}, ma}, b{{r, 1}, mb};
    double oracle = 0.0, fa = 0.0, fb = 0.0;
    for (std::int64_t k = 0; k + 1 < r; ++k) {
      fa += a.at({k, 0}).to_double();
      fb += b.at({k, 0}).to_double();
      oracle += std::abs(fa - fb) / static_cast<double>(r);
    }
    const auto res = wasserstein1(a, b);
    EXPECT_NEAR(res.distance, oracle, 1e-12);
    const auto cert = certify_transport(a, b, res);
    EXPECT_TRUE(cert.feasible);
    EXPECT_TRUE(cert.optimal(1e-9));
  }
}

TEST(Wasserstein, CertificateRejectsBadPlan) {
  std::mt19937_64 g(1);
  const auto a = random_measure(g, 3, 4, 6);
  const auto b = random_measure(g, 3, 4, 6);
  auto r = wasserstein1(a, b);
  ASSERT_TRUE(certify_transport(a, b, r).optimal(1e-9));
  r.plan.entries.front().flow += Rational(1, 12);
  EXPECT_FALSE(certify_transport(a, b, r).feasible);
}

TEST(Wasserstein, BudgetAndDimension) {
  EXPECT_THROW(wasserstein1(lebesgue(3, 4), lebesgue(3, 4), 10), BudgetExceeded);
  EXPECT_THROW(wasserstein1(lebesgue(3, 2), lebesgue(2, 2)), StructuralError);
}

TEST(Wasserstein, MetricAxiomsOnRandomTriples) {
  std::mt19937_64 g(2024);
  for (int trial = 0; trial < 15; ++trial) {
    const auto a = random_measure(g, 3, 3, 6), b = random_measure(g, 3, 2, 4), c = random_measure(g, 3, 4, 5);
    const double ab = wasserstein1(a, b).distance, ba = wasserstein1(b, a).distance;
    const double bc = wasserstein1(b, c).distance, ac = wasserstein1(a, c).distance;
    EXPECT_NEAR(ab, ba, 1e-12);
    EXPECT_LE(ac, ab + bc + 1e-12);
    EXPECT_EQ(wasserstein1(a, a).distance, 0.0);
  }
}

TEST(D1, ZeroOnIdenticalMeasures) {
  const auto s = iterate_markov(sierpinski_tau(3, 2), lebesgue(3), 3).back();
  EXPECT_EQ(d1_distance(s, s), 0.0);
  EXPECT_EQ(d1_distance(lebesgue(3, 2), lebesgue(3, 4)), 0.0);
}

TEST(D1, ModsumAnalyticValue) {
  // 1/3 - 1/(6k) by hand integration, k >= 2; k = 1 is lambda itself
  for (int k : {2, 3, 4, 8, 16}) {
    const double v = d1_distance(modsum_grid_measure(3, k), lebesgue(3, k));
    EXPECT_NEAR(v, 1.0 / 3.0 - 1.0 / (6.0 * k), 1e-12) << k;
    EXPECT_LE(std::abs(v - 1.0 / 3.0), 1.0 / (2.0 * k));
  }
}

TEST(D1, MidpointQuadratureOracle) {
  std::mt19937_64 g(77);
  for (int trial = 0; trial < 5; ++trial) {
    const auto a = random_kernel_measure(g, 3, 2, 3 + trial, 3);
    const auto b = random_kernel_measure(g, 3, 4, 5, 2);
    // oracle on the joint 4x4 x-grid, 20000 midpoints in y, kernel CDFs from scratch
    const auto kernel_cdf = [](const GridMeasure& m, std::int64_t x0, std::int64_t x1, double y) {
      const double rx = static_cast<double>(m.resolution()[0]) * static_cast<double>(m.resolution()[1]);
      const double ry = static_cast<double>(m.resolution()[2]);
      double s = 0.0;
      for (const auto& [c, mass] : m.masses()) {
        if (c[0] != x0 || c[1] != x1) continue;
        s += mass.to_double() * rx * std::clamp(y * ry - static_cast<double>(c[2]), 0.0, 1.0);
      }
      return s;
    };
    const int steps = 20000;
    double oracle = 0.0;
    for (std::int64_t i = 0; i < 4; ++i)
      for (std::int64_t j = 0; j < 4; ++j)
        for (int s = 0; s < steps; ++s) {
          const double y = (s + 0.5) / steps;
          const double fa = kernel_cdf(a, i * 2 / 4, j * 2 / 4, y);
          const double fb = kernel_cdf(b, i, j, y);
          oracle += std::abs(fa - fb) / steps / 16.0;
        }
    EXPECT_NEAR(d1_distance(a, b), oracle, 1e-6);
  }
}

TEST(D1, SierpinskiIteratesContract) {
  const auto it = iterate_markov(sierpinski_tau(3, 2), modsum_grid_measure(3, 4), 4);
  double prev = 1e9;
  for (std::size_t n = 1; n < it.size(); ++n) {
    const double v = d1_distance(it[n], it[n - 1]);
    EXPECT_LT(v, prev);
    prev = v;
  }
}

TEST(D1, MetricAxiomsOnRandomTriples) {
  std::mt19937_64 g(31);
  for (int trial = 0; trial < 15; ++trial) {
    const auto a = random_kernel_measure(g, 3, 2, 4, 2);
    const auto b = random_kernel_measure(g, 3, 3, 2, 3);
    const auto c = random_kernel_measure(g, 3, 2, 3, 1);
    const double ab = d1_distance(a, b), ba = d1_distance(b, a), bc = d1_distance(b, c), ac = d1_distance(a, c);
    EXPECT_NEAR(ab, ba, 1e-12);
    EXPECT_LE(ac, ab + bc + 1e-12);
    EXPECT_EQ(d1_distance(a, a), 0.0);
  }
}

TEST(D1, RejectsNonUniformBase) {
  const GridMeasure mu{{2, 2, 2}, {{{0, 0, 0}, Rational(1, 2)}, {{1, 1, 1}, Rational(1, 2)}}};
  try {
    d1_distance(mu, lebesgue(3, 2));
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("(0,0)"), std::string::npos) << e.what();
  }
}

TEST(FiberUniqueness, Cases) {
  for (int j = 1; j <= 3; ++j) {
    EXPECT_TRUE(fiber_uniqueness(sierpinski_tau(3, 3), j));
    EXPECT_FALSE(fiber_uniqueness(uniform_tau(3, 2), j));
  }
  EXPECT_FALSE(fiber_uniqueness(rotation_mixture_tau(), 3));
  const auto e = rotation_mixture_tau();
  EXPECT_GT(e.at({1, 2, 1}), Rational{});
  EXPECT_GT(e.at({1, 2, 2}), Rational{});
}

TEST(EmpiricalDependence, SierpinskiAndRotation) {
  const auto s = sierpinski_tau(3, 2);
  const auto cloud = chaos_game(s, 100000, 7);
  for (int j0 = 1; j0 <= 3; ++j0) EXPECT_LE(empirical_dependence_check(cloud, s, 4, j0).fraction(), 1e-3);
  const auto r = rotation_tau({2, 3, 1});
  EXPECT_LE(empirical_dependence_check(chaos_game(r, 100000, 8), r, 3, 3).fraction(), 1e-3);
}

TEST(EmpiricalDependence, DetectsWrongMatrix) {
  const auto s = sierpinski_tau(3, 2);
  const auto other = permutation_action(s, std::vector<Permutation>{{2, 1}, {1, 2}, {1, 2}});
  const auto cloud = chaos_game(other, 20000, 1);
  EXPECT_GT(empirical_dependence_check(cloud, s, 2, 3).fraction(), 0.5);
}

TEST(EmpiricalDependence, Preconditions) {
  const auto u = uniform_tau(3, 2);
  EXPECT_THROW(empirical_dependence_check(chaos_game(u, 100, 1), u, 2, 3), ValidationError);
}

TEST(Ks, FrozenKolmogorovSurvival) {
  // scipy.stats.kstwobign.sf
  const std::pair<double, double> ref[] = {
      {0.3, 0.9999906941986655}, {0.5, 0.9639452436648751},   {0.8, 0.5441424115741981},
      {1.0, 0.26999967167735456}, {1.18, 0.1234538094297657}, {1.2, 0.11224966667072497},
      {1.5, 0.022217962616525127}, {2.0, 0.0006709252557796953}, {3.0, 3.045995948942526e-08}};
  for (const auto& [l, p] : ref) EXPECT_NEAR(kolmogorov_sf(l), p, 1e-12 + 1e-9 * p) << l;
  EXPECT_EQ(kolmogorov_sf(0.0), 1.0);
}

TEST(Ks, Statistic) {
  std::vector<double> grid;
  for (int i = 0; i < 10; ++i) grid.push_back((i + 0.5) / 10);
  EXPECT_NEAR(ks_uniformity(grid).statistic, 0.05, 1e-15);
  std::vector<double> g2;
  for (int i = 1; i <= 50; ++i) g2.push_back(i / 50.0);
  EXPECT_LE(ks_uniformity(g2).statistic, 1.0 / 50 + 1e-15);
  const std::vector<double> x{0.05, 0.1, 0.15, 0.2, 0.3, 0.32, 0.5, 0.9};
  EXPECT_NEAR(ks_uniformity(x).statistic, 0.43, 1e-12);
  const std::vector<double> constant(1000, 0.999);
  const auto c = ks_uniformity(constant);
  EXPECT_GT(c.statistic, 0.99);
  EXPECT_LT(c.p_value, 1e-12);
  EXPECT_THROW(ks_uniformity(std::vector<double>{}), StructuralError);
}

TEST(Ks, SierpinskiCoordinate) {
  const auto cloud = chaos_game(sierpinski_tau(3, 2), 100000, 7);
  EXPECT_GT(ks_uniformity(cloud.axis(1)).p_value, 0.01);
}
