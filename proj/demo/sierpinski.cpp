// Sierpinski tetrahedron in the unit cube: matrix, a few exact Markov iterates,
// and a sampled check of the marginals.
#include <iostream>

#include "dstoch/dstoch.hpp"

int main() {
  using namespace dstoch;
  const auto tau = sierpinski_tau(3, 2);
  write_tmx(std::cout, tau);
  std::cout << "uniform class: " << (is_uniform_class(tau, 2) ? "yes" : "no") << "\n"
            << "dimension: " << attractor_dimension(tau) << "\n";

  const auto it = iterate_markov(tau, lebesgue(3), 4);
  for (std::size_t n = 1; n < it.size(); ++n) {
    std::cout << "n=" << n << " cells=" << it[n].size() << " W1(n,n-1)=" << wasserstein1(it[n], it[n - 1]).distance
              << " D1(n,n-1)=" << d1_distance(it[n], it[n - 1]) << "\n";
  }

  const auto cloud = chaos_game(tau, 100000, 7);
  for (int j = 1; j <= 3; ++j) std::cout << "KS p-value x" << j << ": " << ks_uniformity(cloud.axis(j)).p_value << "\n";
}
