#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "dpa/error.hpp"
#include "dpa/params.hpp"
#include "dpa/special.hpp"

namespace dpa {

enum class Method { ClosedForm, Quadrature, Dp, Empirical, Exact };

constexpr std::string_view to_string(Method m) {
  switch (m) {
    case Method::ClosedForm: return "closed-form";
    case Method::Quadrature: return "quadrature";
    case Method::Dp: return "dp";
    case Method::Empirical: return "empirical";
    case Method::Exact: return "exact";
  }
  return "unknown";
}

/// Truncated bivariate pmf over degree pairs (i, j), 0 <= i <= max_in,
/// 0 <= j <= max_out, stored row-major. Probability that falls outside the
/// grid is kept in leaked_mass.
class JointPMF {
 public:
  JointPMF() = default;
  JointPMF(int max_in, int max_out, Method method, std::optional<ModelParams> params = {})
      : max_in_(max_in), max_out_(max_out), method_(method), params_(std::move(params)) {
    if (max_in < 0 || max_out < 0)
      throw Error(ErrorCode::InvalidArgument, "pmf grid bounds must be >= 0");
    mass_.assign(static_cast<std::size_t>(max_in + 1) * static_cast<std::size_t>(max_out + 1),
                 0.0);
  }

  int max_in() const noexcept { return max_in_; }
  int max_out() const noexcept { return max_out_; }
  Method method() const noexcept { return method_; }
  const std::optional<ModelParams>& params() const noexcept { return params_; }

  bool contains(int i, int j) const noexcept {
    return i >= 0 && j >= 0 && i <= max_in_ && j <= max_out_;
  }

  double& at(int i, int j) { return mass_[index(i, j)]; }
  double at(int i, int j) const { return mass_[index(i, j)]; }
  /// Value at (i, j), or 0 outside the grid.
  double get(int i, int j) const { return contains(i, j) ? mass_[index(i, j)] : 0.0; }

  std::span<const double> masses() const noexcept { return mass_; }
  std::span<double> masses() noexcept { return mass_; }

  double leaked_mass() const noexcept { return leaked_; }
  void set_leaked_mass(double v) noexcept { leaked_ = v; }

  /// Set when a DP run leaked more than its configured ceiling.
  bool grid_too_small() const noexcept { return grid_too_small_; }
  void set_grid_too_small(bool v) noexcept { grid_too_small_ = v; }

  double total() const {
    CompensatedSum s;
    for (double v : mass_) s.add(v);
    return s.value();
  }

  /// Restriction to a smaller grid; everything cut off moves into leaked_mass.
  JointPMF truncated(int max_in, int max_out) const {
    max_in = std::min(max_in, max_in_);
    max_out = std::min(max_out, max_out_);
    JointPMF out(max_in, max_out, method_, params_);
    CompensatedSum cut;
    cut.add(leaked_);
    for (int i = 0; i <= max_in_; ++i)
      for (int j = 0; j <= max_out_; ++j) {
        if (out.contains(i, j))
          out.at(i, j) = at(i, j);
        else
          cut.add(at(i, j));
      }
    out.leaked_ = cut.value();
    out.grid_too_small_ = grid_too_small_;
    return out;
  }

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(max_out_ + 1) +
           static_cast<std::size_t>(j);
  }

  int max_in_ = 0;
  int max_out_ = 0;
  Method method_ = Method::Dp;
  std::optional<ModelParams> params_;
  std::vector<double> mass_ = std::vector<double>(1, 0.0);
  double leaked_ = 0.0;
  bool grid_too_small_ = false;
};

/// Univariate pmf on 0..max with leaked tail mass (PA degrees, marginals).
struct DegreePMF {
  std::vector<double> mass;
  double leaked = 0.0;

  std::span<const double> masses() const noexcept { return mass; }
  double leaked_mass() const noexcept { return leaked; }
};

/// Row (Axis::In) or column (Axis::Out) sums of a joint pmf.
inline std::vector<double> axis_sums(const JointPMF& pmf, bool in_axis) {
  std::vector<double> out(static_cast<std::size_t>((in_axis ? pmf.max_in() : pmf.max_out()) + 1),
                          0.0);
  for (int i = 0; i <= pmf.max_in(); ++i)
    for (int j = 0; j <= pmf.max_out(); ++j)
      out[static_cast<std::size_t>(in_axis ? i : j)] += pmf.at(i, j);
  return out;
}

}  // namespace dpa
