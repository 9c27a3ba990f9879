#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>

#include "dpa/error.hpp"
#include "dpa/params.hpp"
#include "dpa/rational.hpp"
#include "dpa/special.hpp"

namespace dpa {

struct ClosedFormOptions {
  /// Pairs with i + j at or below this are summed in exact rationals.
  int exact_threshold = 60;
  /// Relative error estimate above which the floating path gives up.
  double max_relative_error = 1e-6;
};

/// Explicit alternating double sum for the DPA limit pmf,
///
///   p_ij = a/(a+g) * A_i^0 B_j^1 * S(x01; i, j-1)
///        + g/(a+g) * A_i^1 B_j^0 * S(x10; i-1, j),
///
/// where A_i^r = (delta_in+i-1)_{i-r}/(i-r)!, B likewise for the out axis,
/// and S(x; n, m) = sum_{k<=n, l<=m} (-1)^{k+l} C(n,k) C(m,l) / (x + c_in k + c_out l)
/// with x01 = c_in delta_in + c_out (delta_out+1) + 1 and
/// x10 = c_in (delta_in+1) + c_out delta_out + 1.
///
/// The longer of the two index ranges is summed in closed form with
///   sum_l (-1)^l C(m,l) / (x + b l) = m! b^m / prod_{l=0}^{m} (x + b l),
/// which leaves a single alternating sum of min(n, m) + 1 terms.
class ClosedFormEvaluator {
 public:
  explicit ClosedFormEvaluator(const ModelParams& p, ClosedFormOptions opts = {})
      : params_(p), rc_(rate_constants(p)), opts_(opts) {
    detail::require_kind(p, ModelKind::DPA);
    const mpq_class alpha = rationalize_decimal(p.alpha());
    const mpq_class beta = rationalize_decimal(p.beta());
    const mpq_class gamma = mpq_class(1) - alpha - beta;
    d_in_ = rationalize_decimal(p.delta_in());
    d_out_ = rationalize_decimal(p.delta_out());
    c_in_ = (alpha + beta) / (mpq_class(1) + d_in_ * (alpha + gamma));
    c_out_ = (gamma + beta) / (mpq_class(1) + d_out_ * (alpha + gamma));
    w_01_ = alpha / (alpha + gamma);
    w_10_ = gamma / (alpha + gamma);
  }

  const ClosedFormOptions& options() const noexcept { return opts_; }

  double operator()(int i, int j) const {
    if (i < 0 || j < 0) throw Error(ErrorCode::InvalidArgument, "degrees must be >= 0");
    if (i == 0 && j == 0) return 0.0;
    if (i + j <= opts_.exact_threshold) return to_double(exact(i, j));
    return floating(i, j);
  }

  /// Exact value of the double sum for the rationalized parameters.
  mpq_class exact(int i, int j) const {
    mpq_class total = 0;
    if (j >= 1) {
      const mpq_class x = c_in_ * d_in_ + c_out_ * (d_out_ + 1) + 1;
      total += w_01_ * prefactor(d_in_, i, 0) * prefactor(d_out_, j, 1) *
               alternating_sum_exact(x, i, j - 1);
    }
    if (i >= 1) {
      const mpq_class x = c_in_ * (d_in_ + 1) + c_out_ * d_out_ + 1;
      total += w_10_ * prefactor(d_in_, i, 1) * prefactor(d_out_, j, 0) *
               alternating_sum_exact(x, i - 1, j);
    }
    return total;
  }

 private:
  // (delta + n - 1)_{n-r} / (n-r)!
  static mpq_class prefactor(const mpq_class& delta, int n, int r) {
    mpq_class out = 1;
    for (int t = r; t < n; ++t) out *= (delta + t) / mpq_class(t - r + 1);
    return out;
  }

  mpq_class alternating_sum_exact(const mpq_class& x, int n_in, int n_out) const {
    // Reduce the longer index in closed form; the shorter one stays alternating.
    const bool reduce_out = n_out >= n_in;
    const mpq_class& a = reduce_out ? c_in_ : c_out_;
    const mpq_class& b = reduce_out ? c_out_ : c_in_;
    const int n_keep = reduce_out ? n_in : n_out;
    const int n_red = reduce_out ? n_out : n_in;

    mpq_class numer_common = 1;  // m! b^m
    for (int t = 1; t <= n_red; ++t) numer_common *= b * t;

    mpq_class sum = 0;
    for (int k = 0; k <= n_keep; ++k) {
      const mpq_class xk = x + a * k;
      mpq_class denom = 1;
      for (int l = 0; l <= n_red; ++l) denom *= xk + b * l;
      mpq_class term = mpq_class(binomial_z(static_cast<unsigned long>(n_keep),
                                            static_cast<unsigned long>(k))) /
                       denom;
      if (k % 2 == 0)
        sum += term;
      else
        sum -= term;
    }
    return sum * numer_common;
  }

  struct FloatSum {
    double value = 0.0;
    double rel_error = 0.0;
  };

  // Log-space terms with compensated summation; the relative error estimate
  // is the cancellation ratio sum|t| / |sum t| times the per-term rounding.
  FloatSum alternating_sum_float(double x, int n_in, int n_out) const {
    const bool reduce_out = n_out >= n_in;
    const double a = reduce_out ? rc_.c_in : rc_.c_out;
    const double b = reduce_out ? rc_.c_out : rc_.c_in;
    const int n_keep = reduce_out ? n_in : n_out;
    const int n_red = reduce_out ? n_out : n_in;

    const double log_common = std::lgamma(n_red + 1.0) + n_red * std::log(b);
    std::vector<double> logs(static_cast<std::size_t>(n_keep + 1));
    double log_max = -std::numeric_limits<double>::infinity();
    for (int k = 0; k <= n_keep; ++k) {
      const double xk = x + a * k;
      double ld = 0.0;
      for (int l = 0; l <= n_red; ++l) ld += std::log(xk + b * l);
      logs[static_cast<std::size_t>(k)] = log_binomial(n_keep, k) + log_common - ld;
      log_max = std::max(log_max, logs[static_cast<std::size_t>(k)]);
    }
    CompensatedSum s;
    for (int k = 0; k <= n_keep; ++k) {
      const double t = std::exp(logs[static_cast<std::size_t>(k)] - log_max);
      s.add(k % 2 == 0 ? t : -t);
    }
    const double eps = std::numeric_limits<double>::epsilon();
    const double per_term = eps * (n_red + n_keep + 8.0);
    FloatSum out;
    out.value = s.value() * std::exp(log_max);
    out.rel_error = s.value() == 0.0 ? std::numeric_limits<double>::infinity()
                                     : per_term * s.abs_total() / std::fabs(s.value());
    return out;
  }

  double log_prefactor(double delta, int n, int r) const {
    if (n <= r) return 0.0;
    return std::lgamma(delta + n) - std::lgamma(delta + r) - std::lgamma(n - r + 1.0);
  }

  double floating(int i, int j) const {
    const double w01 = params_.alpha() / (params_.alpha() + params_.gamma());
    const double di = params_.delta_in(), dout = params_.delta_out();
    CompensatedSum total;
    double worst = 0.0;
    if (j >= 1) {
      const double x = rc_.c_in * di + rc_.c_out * (dout + 1.0) + 1.0;
      const FloatSum s = alternating_sum_float(x, i, j - 1);
      total.add(w01 * std::exp(log_prefactor(di, i, 0) + log_prefactor(dout, j, 1)) * s.value);
      worst = std::max(worst, s.rel_error);
    }
    if (i >= 1) {
      const double x = rc_.c_in * (di + 1.0) + rc_.c_out * dout + 1.0;
      const FloatSum s = alternating_sum_float(x, i - 1, j);
      total.add((1.0 - w01) * std::exp(log_prefactor(di, i, 1) + log_prefactor(dout, j, 0)) *
                s.value);
      worst = std::max(worst, s.rel_error);
    }
    if (!(worst <= opts_.max_relative_error))
      throw Error(ErrorCode::NumericallyUnstable,
                  "alternating sum at (" + std::to_string(i) + "," + std::to_string(j) +
                      ") has relative error estimate " + std::to_string(worst) +
                      "; use dp_absorption");
    return total.value();
  }

  ModelParams params_;
  RateConstants rc_;
  ClosedFormOptions opts_;
  mpq_class d_in_, d_out_, c_in_, c_out_, w_01_, w_10_;
};

/// Limiting DPA joint pmf p_ij from the explicit alternating double sum.
inline double joint_closedform(int i, int j, const RateConstants& /*rc*/, const ModelParams& p,
                               ClosedFormOptions opts = {}) {
  return ClosedFormEvaluator(p, opts)(i, j);
}

}  // namespace dpa
