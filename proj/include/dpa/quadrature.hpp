#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <span>
#include <vector>

#include "dpa/error.hpp"
#include "dpa/marginals.hpp"
#include "dpa/params.hpp"

namespace dpa {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  friend bool operator<(const Segment& x, const Segment& y) { return x.error < y.error; }
};

template <class F>
Segment gauss_kronrod_15(const F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (int k = 0; k < 7; ++k) {
    const double dx = half * kKronrodNodes[k];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[k] * pair;
    if (k % 2 == 1) gauss += kGaussWeights[k / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::fabs(kronrod - gauss)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod integration over [breaks.front(),
/// breaks.back()], starting from the given partition and always bisecting the
/// segment with the largest error estimate.
template <class F>
QuadratureResult integrate_adaptive(const F& f, std::span<const double> breaks, double rel_tol,
                                    double abs_tol = 0.0, int max_segments = 4000) {
  if (breaks.size() < 2) throw Error(ErrorCode::InvalidArgument, "need at least two breakpoints");
  std::priority_queue<detail::Segment> heap;
  double value = 0.0, error = 0.0;
  for (std::size_t s = 0; s + 1 < breaks.size(); ++s) {
    if (!(breaks[s + 1] > breaks[s])) continue;
    const auto seg = detail::gauss_kronrod_15(f, breaks[s], breaks[s + 1]);
    value += seg.value;
    error += seg.error;
    heap.push(seg);
  }
  while (error > std::max(abs_tol, rel_tol * std::fabs(value))) {
    if (!std::isfinite(value) || !std::isfinite(error))
      throw Error(ErrorCode::NoConvergence, "integrand is not finite on the interval");
    if (static_cast<int>(heap.size()) >= max_segments)
      throw Error(ErrorCode::NoConvergence,
                  "adaptive quadrature hit the subdivision limit (error " +
                      std::to_string(error) + ", value " + std::to_string(value) + ")");
    const auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const auto left = detail::gauss_kronrod_15(f, worst.a, mid);
    const auto right = detail::gauss_kronrod_15(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  if (!std::isfinite(value) || !std::isfinite(error))
    throw Error(ErrorCode::NoConvergence, "integrand is not finite on the interval");
  // Recompute from the segments to shed accumulated update rounding.
  double v = 0.0, e = 0.0;
  const int count = static_cast<int>(heap.size());
  while (!heap.empty()) {
    v += heap.top().value;
    e += heap.top().error;
    heap.pop();
  }
  return {v, e, count};
}

/// p_ij of the DPA limit as the integral over t of the product of the two
/// fixed-time marginals against the Exp(1) density, summed over both start
/// states.
inline double joint_quadrature(int i, int j, const RateConstants& rc, const ModelParams& p,
                               double tol = 1e-10) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be > 0");
  const BirthAxis in = birth_axis(Axis::In, rc, p);
  const BirthAxis out = birth_axis(Axis::Out, rc, p);
  if (i < 0 || j < 0) throw Error(ErrorCode::InvalidArgument, "degrees must be >= 0");
  if (i == 0 && j == 0) return 0.0;

  const double w01 = p.alpha() / (p.alpha() + p.gamma());
  const double w10 = 1.0 - w01;
  const BirthMarginalAtT in0(in, 0, i), out1(out, 1, j);
  const BirthMarginalAtT in1(in, 1, i), out0(out, 0, j);
  const bool has01 = j >= 1, has10 = i >= 1;

  auto integrand = [&](double t) {
    double v = 0.0;
    if (has01) v += w01 * std::exp(in0.log_value(t) + out1.log_value(t) - t);
    if (has10) v += w10 * std::exp(in1.log_value(t) + out0.log_value(t) - t);
    return v;
  };

  // Peak sits near the larger of log(i)/c_in and log(j)/c_out.
  const double peak = std::max(std::log(std::max(i, 2)) / rc.c_in,
                               std::log(std::max(j, 2)) / rc.c_out);
  const double width = 4.0 / std::min(rc.c_in, rc.c_out);
  std::vector<double> breaks{0.0};
  for (double t : {0.5 * peak, peak - width, peak, peak + width, peak + 3.0 * width})
    if (t > breaks.back()) breaks.push_back(t);
  double end = breaks.back() + 40.0;
  breaks.push_back(end);

  QuadratureResult res = integrate_adaptive(integrand, breaks, tol);
  double value = res.value;
  // The integrand is bounded by e^{-t}; extend until the tail is negligible.
  while (value > 0.0 && std::exp(-end) >= 1e-16 * value) {
    const double next = -std::log(1e-16 * value) + 1.0;
    const std::array<double, 2> tail{end, next};
    value += integrate_adaptive(integrand, tail, tol, tol * value).value;
    end = next;
  }
  return value;
}

}  // namespace dpa
