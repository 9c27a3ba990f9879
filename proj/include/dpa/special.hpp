#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace dpa {

/// log|x| together with the sign of x; sign 0 means x == 0.
struct SignedLog {
  double log_abs = -std::numeric_limits<double>::infinity();
  int sign = 0;

  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
};

/// Falling factorial a (a-1) ... (a-k+1) in log form, for real a.
inline SignedLog log_falling_factorial(double a, std::int64_t k) {
  if (k <= 0) return {0.0, 1};
  const double kd = static_cast<double>(k);
  if (a < 0.0) {
    // (a)_k = (-1)^k (-a)(-a+1)...(-a+k-1)
    const double b = -a;
    return {std::lgamma(b + kd) - std::lgamma(b), (k % 2 == 0) ? 1 : -1};
  }
  const double fl = std::floor(a);
  if (fl == a && kd > a) return {};  // one factor is exactly zero
  // factors a - t for t = 0..k-1 are negative once t > a
  const std::int64_t negatives =
      kd > fl + 1.0 ? k - static_cast<std::int64_t>(fl) - 1 : 0;
  return {std::lgamma(a + 1.0) - std::lgamma(a - kd + 1.0), (negatives % 2 == 0) ? 1 : -1};
}

/// Falling factorial a (a-1) ... (a-k+1); the empty product (k = 0) is 1.
inline double falling_factorial(double a, std::int64_t k) {
  if (k <= 64) {
    double p = 1.0;
    for (std::int64_t t = 0; t < k; ++t) p *= a - static_cast<double>(t);
    return p;
  }
  return log_falling_factorial(a, k).value();
}

/// mant * 2^exp, for products that overflow a double.
struct ScaledValue {
  double mant = 1.0;
  long exp = 0;

  double log() const { return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0); }
};

/// Falling factorial as a running product, renormalized with frexp after
/// every factor. Relative error stays near k * eps at any k.
inline ScaledValue scaled_falling_factorial(double a, std::int64_t k) {
  ScaledValue v;
  for (std::int64_t t = 0; t < k; ++t) {
    int e = 0;
    v.mant = std::frexp(v.mant * (a - static_cast<double>(t)), &e);
    v.exp += e;
  }
  return v;
}

/// x / y for scaled values; underflows to 0 rather than denormalizing early.
inline double scaled_ratio(ScaledValue x, ScaledValue y) {
  if (x.mant == 0.0) return 0.0;
  return std::ldexp(x.mant / y.mant, static_cast<int>(x.exp - y.exp));
}

/// log of the binomial coefficient C(n, k) for integer arguments.
inline double log_binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
    abs_ += std::fabs(x);
    ++count_;
  }

  double value() const { return sum_ + comp_; }
  /// Sum of |terms|; the rounding error of value() is bounded by a small
  /// multiple of eps * abs_total().
  double abs_total() const { return abs_; }
  std::int64_t count() const { return count_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
  double abs_ = 0.0;
  std::int64_t count_ = 0;
};

}  // namespace dpa
