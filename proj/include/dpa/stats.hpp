#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "dpa/error.hpp"
#include "dpa/growth.hpp"
#include "dpa/joint_pmf.hpp"
#include "dpa/marginals.hpp"
#include "dpa/quadrature.hpp"
#include "dpa/special.hpp"
#include "dpa/tails.hpp"

namespace dpa {

/// Node counts per (in, out) degree pair. Ordered, so iteration and any
/// serialization are deterministic; merging is plain count addition.
struct DegreeHistogram {
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> counts;
  std::uint64_t nodes = 0;

  void add(std::uint32_t in, std::uint32_t out, std::uint64_t n = 1) {
    counts[{in, out}] += n;
    nodes += n;
  }

  DegreeHistogram& merge(const DegreeHistogram& other) {
    for (const auto& [key, n] : other.counts) counts[key] += n;
    nodes += other.nodes;
    return *this;
  }

  friend bool operator==(const DegreeHistogram&, const DegreeHistogram&) = default;
};

inline DegreeHistogram degree_histogram(const GrowthGraph& g) {
  DegreeHistogram h;
  for (std::size_t v = 0; v < g.node_count(); ++v) h.add(g.in_degree[v], g.out_degree[v]);
  return h;
}

/// Fraction of nodes per degree pair (method tag "empirical").
struct EmpiricalPMF {
  JointPMF pmf;
  std::uint64_t sample_count = 0;
};

inline EmpiricalPMF empirical_joint(const DegreeHistogram& h, int max_in, int max_out) {
  if (h.nodes == 0) throw Error(ErrorCode::InvalidArgument, "empty histogram");
  EmpiricalPMF out{JointPMF(max_in, max_out, Method::Empirical), h.nodes};
  const double n = static_cast<double>(h.nodes);
  std::uint64_t outside = 0;
  for (const auto& [key, count] : h.counts) {
    const auto i = static_cast<std::int64_t>(key.first), j = static_cast<std::int64_t>(key.second);
    if (i <= max_in && j <= max_out)
      out.pmf.at(static_cast<int>(i), static_cast<int>(j)) = static_cast<double>(count) / n;
    else
      outside += count;
  }
  out.pmf.set_leaked_mass(static_cast<double>(outside) / n);
  return out;
}

inline EmpiricalPMF empirical_joint(const GrowthGraph& g, int max_in, int max_out) {
  return empirical_joint(degree_histogram(g), max_in, max_out);
}

/// Fraction of nodes per in-degree (Axis::In) or out-degree on 0..max_degree.
inline DegreePMF empirical_marginal(const GrowthGraph& g, Axis axis, int max_degree) {
  if (g.node_count() == 0) throw Error(ErrorCode::InvalidArgument, "empty graph");
  const auto& deg = axis == Axis::In ? g.in_degree : g.out_degree;
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(max_degree + 1), 0);
  std::uint64_t outside = 0;
  for (auto d : deg) {
    if (d <= static_cast<std::uint32_t>(max_degree))
      ++counts[d];
    else
      ++outside;
  }
  const double n = static_cast<double>(deg.size());
  DegreePMF out;
  out.mass.resize(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) out.mass[i] = static_cast<double>(counts[i]) / n;
  out.leaked = static_cast<double>(outside) / n;
  return out;
}

template <class P>
concept PmfLike = requires(const P& p) {
  { p.masses() } -> std::convertible_to<std::span<const double>>;
  { p.leaked_mass() } -> std::convertible_to<double>;
};

/// Total variation distance on a shared grid, with the leaked masses treated
/// as one extra cell.
template <PmfLike P, PmfLike Q>
double tv_distance(const P& p, const Q& q) {
  const std::span<const double> a = p.masses(), b = q.masses();
  if (a.size() != b.size()) throw Error(ErrorCode::InvalidArgument, "tv_distance needs equal grids");
  CompensatedSum s;
  for (std::size_t k = 0; k < a.size(); ++k) s.add(std::fabs(a[k] - b[k]));
  s.add(std::fabs(p.leaked_mass() - q.leaked_mass()));
  return 0.5 * s.value();
}

inline double tv_distance(const EmpiricalPMF& p, const JointPMF& q) { return tv_distance(p.pmf, q); }

struct TailReport {
  double predicted = std::numeric_limits<double>::quiet_NaN();
  double fitted = 0.0;
  std::int64_t lo = 1;
  std::int64_t hi = 2;
  double residual_rms = 0.0;
};

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
};

inline LineFit least_squares(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxx += (x[k] - mx) * (x[k] - mx);
    sxy += (x[k] - mx) * (y[k] - my);
  }
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double r = y[k] - (f.intercept + f.slope * x[k]);
    ss += r * r;
  }
  f.residual_rms = std::sqrt(ss / n);
  return f;
}

enum class Binning { None, Log };

/// Integer bins [lo, e1), [e1, e2), ... with e_{k+1} = max(e_k + 1, ceil(1.25 e_k)),
/// clipped at hi.
inline std::vector<std::pair<std::int64_t, std::int64_t>> log_bins(std::int64_t lo, std::int64_t hi,
                                                                   double ratio = 1.25) {
  std::vector<std::pair<std::int64_t, std::int64_t>> bins;
  std::int64_t a = lo;
  while (a <= hi) {
    std::int64_t b = std::max<std::int64_t>(a + 1, static_cast<std::int64_t>(std::ceil(a * ratio)));
    b = std::min(b, hi + 1);
    bins.emplace_back(a, b);
    a = b;
  }
  return bins;
}

/// Least-squares slope of log p_i against log i over [lo, hi].
///
/// With Binning::Log the points are (x_k, mass_k / width_k) for geometric
/// bins of ratio 1.25. Each bin's abscissa is the point where a power law of
/// the fitted exponent takes its bin-average value, x_k = (mean_{i in bin}
/// i^-a)^(-1/a); a and x_k are iterated to a fixed point, so an exact power
/// law is recovered exactly.
inline TailReport loglog_slope(std::span<const double> pmf, std::int64_t lo, std::int64_t hi,
                               Binning binning = Binning::None) {
  if (lo < 1 || hi <= lo) throw Error(ErrorCode::InvalidArgument, "need 1 <= lo < hi");
  hi = std::min<std::int64_t>(hi, static_cast<std::int64_t>(pmf.size()) - 1);
  std::int64_t nonzero = 0;
  for (std::int64_t i = lo; i <= hi; ++i)
    if (pmf[static_cast<std::size_t>(i)] > 0.0) ++nonzero;
  if (nonzero < 5)
    throw Error(ErrorCode::InsufficientSupport, "fewer than 5 nonzero points in fit range");

  TailReport rep;
  rep.lo = lo;
  rep.hi = hi;
  std::vector<double> xs, ys;
  if (binning == Binning::None) {
    for (std::int64_t i = lo; i <= hi; ++i) {
      const double v = pmf[static_cast<std::size_t>(i)];
      if (v <= 0.0) continue;
      xs.push_back(std::log(static_cast<double>(i)));
      ys.push_back(std::log(v));
    }
    const LineFit f = least_squares(xs, ys);
    rep.fitted = f.slope;
    rep.residual_rms = f.residual_rms;
    return rep;
  }

  struct Bin {
    std::int64_t a, b;
    double log_density;
  };
  std::vector<Bin> bins;
  for (auto [a, b] : log_bins(lo, hi)) {
    double mass = 0.0;
    for (std::int64_t i = a; i < b; ++i) mass += pmf[static_cast<std::size_t>(i)];
    if (mass > 0.0) bins.push_back({a, b, std::log(mass / static_cast<double>(b - a))});
  }
  if (bins.size() < 2)
    throw Error(ErrorCode::InsufficientSupport, "fewer than 2 populated bins in fit range");

  auto abscissa = [](const Bin& bin, double a) {
    if (a < 0.05) {
      return 0.5 * (std::log(static_cast<double>(bin.a)) + std::log(static_cast<double>(bin.b - 1)));
    }
    double mean = 0.0;
    for (std::int64_t i = bin.a; i < bin.b; ++i) mean += std::pow(static_cast<double>(i), -a);
    mean /= static_cast<double>(bin.b - bin.a);
    return std::log(mean) / -a;
  };

  ys.clear();
  for (const auto& bin : bins) ys.push_back(bin.log_density);
  double exponent = 0.0;
  LineFit f;
  for (int iter = 0; iter < 200; ++iter) {
    xs.clear();
    for (const auto& bin : bins) xs.push_back(abscissa(bin, exponent));
    f = least_squares(xs, ys);
    const double next = -f.slope;
    if (std::fabs(next - exponent) < 1e-14) break;
    exponent = next;
  }
  rep.fitted = f.slope;
  rep.residual_rms = f.residual_rms;
  return rep;
}

inline TailReport loglog_slope(std::span<const double> pmf, std::int64_t lo, std::int64_t hi,
                               Binning binning, double predicted) {
  TailReport rep = loglog_slope(pmf, lo, hi, binning);
  rep.predicted = predicted;
  return rep;
}

/// P(D >= i) for i = 0..pmf.size()-1, including leaked mass beyond the grid.
inline std::vector<double> ccdf(std::span<const double> pmf, double leaked = 0.0) {
  std::vector<double> out(pmf.size());
  double tail = leaked;
  for (std::size_t k = pmf.size(); k-- > 0;) {
    tail += pmf[k];
    out[k] = tail;
  }
  return out;
}

/// Fits log p_{n, floor(s n^r)} against log n with the pmf values obtained by
/// quadrature and compares with bivariate_tail_exponent(r).
inline TailReport quadrature_tail_slope(double r, double s, std::span<const std::int64_t> n_values,
                                        const RateConstants& rc, const ModelParams& p,
                                        double tol = 1e-10) {
  std::vector<std::int64_t> ns(n_values.begin(), n_values.end());
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  if (ns.size() < 5) throw Error(ErrorCode::InvalidArgument, "need at least 5 distinct n values");
  if (ns.front() < 20) throw Error(ErrorCode::InvalidArgument, "n values must be >= 20");
  if (!(s > 0.0) || !(r >= 0.0)) throw Error(ErrorCode::InvalidArgument, "need s > 0 and r >= 0");

  std::vector<double> xs, ys;
  for (std::int64_t n : ns) {
    const auto j = static_cast<std::int64_t>(std::floor(s * std::pow(static_cast<double>(n), r)));
    const double v = joint_quadrature(static_cast<int>(n), static_cast<int>(j), rc, p, tol);
    if (!(v > 0.0))
      throw Error(ErrorCode::NumericallyUnstable, "quadrature underflowed at n = " + std::to_string(n));
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(v));
  }
  const LineFit f = least_squares(xs, ys);
  TailReport rep;
  rep.predicted = bivariate_tail_exponent(r, rc, p);
  rep.fitted = f.slope;
  rep.lo = ns.front();
  rep.hi = ns.back();
  rep.residual_rms = f.residual_rms;
  return rep;
}

/// Fraction of directed edges u -> v for which some edge v -> u exists.
/// A self-loop is its own reverse and therefore counts as reciprocated.
inline double reciprocity(const GrowthGraph& g) {
  const std::size_t m = g.edge_count();
  if (m == 0) throw Error(ErrorCode::InvalidArgument, "reciprocity needs at least one edge");
  std::vector<std::uint64_t> keys(m);
  for (std::size_t e = 0; e < m; ++e)
    keys[e] = (static_cast<std::uint64_t>(g.edge_tails[e]) << 32) | g.edge_heads[e];
  std::sort(keys.begin(), keys.end());
  std::size_t hits = 0;
  for (std::size_t e = 0; e < m; ++e) {
    const std::uint64_t rev = (static_cast<std::uint64_t>(g.edge_heads[e]) << 32) | g.edge_tails[e];
    if (std::binary_search(keys.begin(), keys.end(), rev)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(m);
}

}  // namespace dpa
