// Grows a DPA network and compares its degree histogram with the limit law.

#include <cstdio>

#include "dpa/dpa.hpp"

int main() {
  const auto p = dpa::ModelParams::dpa(0.3, 0.4, 1.0, 1.0);
  const auto g = dpa::grow_dpa(p, 1'000'000, {42, 0});
  const auto emp = dpa::empirical_joint(g, 15, 15);
  const auto lim = dpa::dp_absorption(p, 512, 512).truncated(15, 15);

  std::printf("nodes %zu  edges %zu\n", static_cast<std::size_t>(g.node_count()),
              static_cast<std::size_t>(g.edge_count()));
  std::printf("TV distance on [0,15]^2: %.5f\n", dpa::tv_distance(emp, lim));
  std::printf(" i  j  empirical  limit\n");
  for (int i = 0; i <= 2; ++i)
    for (int j = 0; j <= 2; ++j) std::printf("%2d %2d  %.5f    %.5f\n", i, j, emp.pmf.at(i, j), lim.at(i, j));
}
