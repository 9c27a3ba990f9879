#pragma once

#include <algorithm>
#include <string>

#include "dpa/params.hpp"

namespace dpa {

/// Power-law exponents of the pmf (not the CCDF). CCDF slopes are these minus one.
struct ExponentPair {
  double in = 0.0;
  double out = 0.0;
};

/// Marginal tails: p_i ~ i^{-(1+1/c_in)}, q_j ~ j^{-(1+1/c_out)}.
inline ExponentPair marginal_tail_exponents(const RateConstants& rc) {
  return {1.0 + 1.0 / rc.c_in, 1.0 + 1.0 / rc.c_out};
}

/// Tails with the other degree held fixed: p_ij ~ i^{-x_in} for fixed j and
/// p_ij ~ j^{-x_out} for fixed i.
inline ExponentPair fixed_other_tail_exponents(const RateConstants& rc, const ModelParams& p) {
  return {1.0 + 1.0 / rc.c_in + rc.c_out * p.delta_out() / rc.c_in,
          1.0 + 1.0 / rc.c_out + rc.c_in * p.delta_in() / rc.c_out};
}

/// Exponent E(r) in p_{n, floor(s n^r)} ~ n^{E(r)}:
///   E(r) = delta_in - 1 + r (delta_out - 1) - b max(1/c_in, r/c_out),
///   b = c_in delta_in + c_out delta_out + 1.
inline double bivariate_tail_exponent(double r, const RateConstants& rc, const ModelParams& p) {
  const double b = rc.c_in * p.delta_in() + rc.c_out * p.delta_out() + 1.0;
  return p.delta_in() - 1.0 + r * (p.delta_out() - 1.0) -
         b * std::max(1.0 / rc.c_in, r / rc.c_out);
}

/// Branch valid for r <= c_out/c_in: -(1 + delta_out (c_out/c_in - r) + r + 1/c_in).
inline double bivariate_tail_exponent_low(double r, const RateConstants& rc,
                                          const ModelParams& p) {
  return -(1.0 + p.delta_out() * (rc.c_out / rc.c_in - r) + r + 1.0 / rc.c_in);
}

/// Branch valid for r >= c_out/c_in: -(1 + delta_in (r c_in/c_out - 1) + r + r/c_out).
inline double bivariate_tail_exponent_high(double r, const RateConstants& rc,
                                           const ModelParams& p) {
  return -(1.0 + p.delta_in() * (r * rc.c_in / rc.c_out - 1.0) + r + r / rc.c_out);
}

/// Location of the maximum of E(r) over r >= 0.
struct ArgmaxR {
  enum class Kind { Zero, Kink, Interval };
  Kind kind = Kind::Zero;
  double lo = 0.0;  // the maximiser, or the interval start
  double hi = 0.0;  // equals lo unless kind == Interval

  std::string describe() const {
    switch (kind) {
      case Kind::Zero: return "r* = 0";
      case Kind::Kink: return "r* = c_O/c_I = " + std::to_string(lo);
      case Kind::Interval: return "interval [0, c_O/c_I] = [0, " + std::to_string(hi) + "]";
    }
    return {};
  }
};

inline ArgmaxR argmax_r(const RateConstants& rc, const ModelParams& p) {
  const double kink = rc.c_out / rc.c_in;
  if (p.delta_out() < 1.0) return {ArgmaxR::Kind::Zero, 0.0, 0.0};
  if (p.delta_out() > 1.0) return {ArgmaxR::Kind::Kink, kink, kink};
  return {ArgmaxR::Kind::Interval, 0.0, kink};
}

}  // namespace dpa
