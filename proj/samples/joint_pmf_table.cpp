// Small table of the limiting joint (in, out) degree pmf of a DPA model,
// computed three independent ways.

#include <cstdio>

#include "dpa/dpa.hpp"

int main() {
  const auto p = dpa::ModelParams::dpa(0.3, 0.4, 1.0, 1.0);
  const auto rc = dpa::rate_constants(p);
  const auto dp = dpa::dp_absorption(p, 64, 64);
  const dpa::ClosedFormEvaluator cf(p);

  std::printf("c_I = %.6f  c_O = %.6f  leaked = %.2e\n", rc.c_in, rc.c_out, dp.leaked_mass());
  std::printf(" i  j  %-20s %-20s %-20s\n", "dp", "closed form", "quadrature");
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; j <= 3; ++j)
      std::printf("%2d %2d  %-20.15f %-20.15f %-20.15f\n", i, j, dp.at(i, j), cf(i, j),
                  dpa::joint_quadrature(i, j, rc, p, 1e-12));
}
