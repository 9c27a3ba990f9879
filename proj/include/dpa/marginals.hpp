#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "dpa/params.hpp"
#include "dpa/special.hpp"

namespace dpa {

enum class Axis { In, Out };

/// Shape of one coordinate of the DPA limit process: births at rate
/// (k + delta) * c from state k.
struct BirthAxis {
  double delta = 0.0;
  double c = 0.0;

  double rate(std::int64_t k) const { return (static_cast<double>(k) + delta) * c; }
};

inline BirthAxis birth_axis(Axis axis, const RateConstants& rc, const ModelParams& p) {
  detail::require_kind(p, ModelKind::DPA);
  return axis == Axis::In ? BirthAxis{p.delta_in(), rc.c_in} : BirthAxis{p.delta_out(), rc.c_out};
}

/// log P(X^r(t) = i) for a linear birth process with rates (k + delta) c,
/// with the t-independent coefficient computed once.
class BirthMarginalAtT {
 public:
  BirthMarginalAtT(BirthAxis axis, std::int64_t r, std::int64_t i)
      : axis_(axis), jumps_(i - r), start_rate_(axis.rate(r)) {
    if (i < r) {
      log_coef_ = -std::numeric_limits<double>::infinity();
    } else {
      log_coef_ = std::lgamma(axis.delta + static_cast<double>(i)) -
                  std::lgamma(axis.delta + static_cast<double>(r)) -
                  std::lgamma(static_cast<double>(jumps_) + 1.0);
      if (jumps_ == 0) log_coef_ = 0.0;
    }
  }

  double log_value(double t) const {
    if (jumps_ < 0) return -std::numeric_limits<double>::infinity();
    double v = log_coef_ - start_rate_ * t;
    if (jumps_ > 0) v += static_cast<double>(jumps_) * std::log(-std::expm1(-axis_.c * t));
    return v;
  }

  double value(double t) const { return std::exp(log_value(t)); }
  std::int64_t jumps() const { return jumps_; }

 private:
  BirthAxis axis_;
  std::int64_t jumps_;
  double start_rate_;
  double log_coef_;
};

/// P(X^r(t) = i) for the in- or out-degree coordinate of the DPA limit process.
inline double marginal_at_t(std::int64_t r, std::int64_t i, double t, Axis axis,
                            const RateConstants& rc, const ModelParams& p) {
  const BirthAxis ax = birth_axis(axis, rc, p);
  if (i < r) return 0.0;
  return BirthMarginalAtT(ax, r, i).value(t);
}

/// Absorption probability of a birth chain with rates `rate(k)` stopped at
/// rate 1: prod_{k=r}^{i-1} rate(k)/(rate(k)+1) * 1/(rate(i)+1).
inline double stopped_birth_pmf(BirthAxis axis, std::int64_t r, std::int64_t i) {
  if (i < r) return 0.0;
  double p = 1.0;
  for (std::int64_t k = r; k < i; ++k) {
    const double l = axis.rate(k);
    p *= l / (l + 1.0);
  }
  return p / (axis.rate(i) + 1.0);
}

/// stopped_birth_pmf for i = 0..max_i, computed with one running product.
inline std::vector<double> stopped_birth_series(BirthAxis axis, std::int64_t r,
                                                std::int64_t max_i) {
  std::vector<double> out(static_cast<std::size_t>(max_i + 1), 0.0);
  double prefix = 1.0;
  for (std::int64_t i = r; i <= max_i; ++i) {
    const double l = axis.rate(i);
    out[static_cast<std::size_t>(i)] = prefix / (l + 1.0);
    prefix *= l / (l + 1.0);
  }
  return out;
}

/// P(X^r(T) = i), T ~ Exp(1), computed as the absorption product.
inline double marginal_stopped(std::int64_t r, std::int64_t i, Axis axis,
                               const RateConstants& rc, const ModelParams& p) {
  return stopped_birth_pmf(birth_axis(axis, rc, p), r, i);
}

/// Same quantity as marginal_stopped written as a ratio of falling factorials,
///   (delta+i-1)_{i-r} / ( c * (delta + 1/c + i)_{i-r+1} ),
/// with both falling factorials held in extended range.
inline double marginal_stopped_ratio(std::int64_t r, std::int64_t i, Axis axis,
                                     const RateConstants& rc, const ModelParams& p) {
  const BirthAxis ax = birth_axis(axis, rc, p);
  if (i < r) return 0.0;
  const double di = static_cast<double>(i);
  const ScaledValue num = scaled_falling_factorial(ax.delta + di - 1.0, i - r);
  const ScaledValue den = scaled_falling_factorial(ax.delta + 1.0 / ax.c + di, i - r + 1);
  return scaled_ratio(num, den) / ax.c;
}

/// Limiting degree pmf of the undirected PA model, 2m(m+1)/(i(i+1)(i+2)).
inline double undirected_pa_pmf(std::int64_t m, std::int64_t i) {
  if (i < m || m < 1) return 0.0;
  const double di = static_cast<double>(i), dm = static_cast<double>(m);
  return 2.0 * dm * (dm + 1.0) / (di * (di + 1.0) * (di + 2.0));
}

/// P(Z(t) = k | Z(0) = m) for the Yule process with birth rate k/2:
/// C(k-1, m-1) e^{-mt/2} (1 - e^{-t/2})^{k-m}.
inline double yule_pmf(std::int64_t m, std::int64_t k, double t) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "yule_pmf needs m >= 1");
  if (k < m) return 0.0;
  const double dm = static_cast<double>(m);
  double v = log_binomial(k - 1, m - 1) - dm * t / 2.0;
  if (k > m) v += static_cast<double>(k - m) * std::log(-std::expm1(-t / 2.0));
  return std::exp(v);
}

}  // namespace dpa
