#pragma once

// Test-only reference computations. None of these share code paths with the
// library routines they are used to check.

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace dpa::oracle {

/// Integrates the forward (Kolmogorov) equations of a pure birth chain
///   P_k' = -rate(k) P_k + rate(k-1) P_{k-1},  P_start(0) = 1,
/// with classical RK4 and returns P_k(t) for k = 0..max_state.
inline std::vector<double> birth_forward(const std::function<double(std::int64_t)>& rate,
                                         std::int64_t start, std::int64_t max_state, double t,
                                         int steps = 20000) {
  const auto n = static_cast<std::size_t>(max_state + 1);
  std::vector<double> p(n, 0.0);
  p[static_cast<std::size_t>(start)] = 1.0;
  if (t <= 0.0) return p;
  const double h = t / steps;
  auto deriv = [&](const std::vector<double>& x) {
    std::vector<double> d(n, 0.0);
    for (std::size_t k = static_cast<std::size_t>(start); k < n; ++k) {
      d[k] -= rate(static_cast<std::int64_t>(k)) * x[k];
      if (k > static_cast<std::size_t>(start))
        d[k] += rate(static_cast<std::int64_t>(k) - 1) * x[k - 1];
    }
    return d;
  };
  std::vector<double> tmp(n);
  for (int s = 0; s < steps; ++s) {
    const auto k1 = deriv(p);
    for (std::size_t k = 0; k < n; ++k) tmp[k] = p[k] + 0.5 * h * k1[k];
    const auto k2 = deriv(tmp);
    for (std::size_t k = 0; k < n; ++k) tmp[k] = p[k] + 0.5 * h * k2[k];
    const auto k3 = deriv(tmp);
    for (std::size_t k = 0; k < n; ++k) tmp[k] = p[k] + h * k3[k];
    const auto k4 = deriv(tmp);
    for (std::size_t k = 0; k < n; ++k) p[k] += h / 6.0 * (k1[k] + 2 * k2[k] + 2 * k3[k] + k4[k]);
  }
  return p;
}

struct Rates3 {
  double in, out, both;
};

/// Probability that the stopped lattice walk started at (k, l) is absorbed
/// at (ti, tj), by explicit recursion over every path (no memoization).
inline double absorb_by_paths(const std::function<Rates3(int, int)>& rates, int k, int l, int ti,
                              int tj) {
  if (k > ti || l > tj) return 0.0;
  const Rates3 r = rates(k, l);
  const double sigma = r.in + r.out + r.both + 1.0;
  double p = (k == ti && l == tj) ? 1.0 / sigma : 0.0;
  p += r.in / sigma * absorb_by_paths(rates, k + 1, l, ti, tj);
  p += r.out / sigma * absorb_by_paths(rates, k, l + 1, ti, tj);
  p += r.both / sigma * absorb_by_paths(rates, k + 1, l + 1, ti, tj);
  return p;
}

/// Ordinary sample from uniform [lo, hi) rounded to `digits` decimals.
template <class Rng>
double rounded_uniform(Rng& rng, double lo, double hi, int digits = 3) {
  const double scale = std::pow(10.0, digits);
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return std::round((lo + (hi - lo) * u) * scale) / scale;
}

}  // namespace dpa::oracle
