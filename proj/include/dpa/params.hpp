#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dpa/error.hpp"

namespace dpa {

enum class ModelKind { PA, DPA, GDPA };

constexpr std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::PA: return "pa";
    case ModelKind::DPA: return "dpa";
    case ModelKind::GDPA: return "gdpa";
  }
  return "unknown";
}

inline ModelKind parse_model_kind(std::string_view name) {
  if (name == "pa" || name == "PA") return ModelKind::PA;
  if (name == "dpa" || name == "DPA") return ModelKind::DPA;
  if (name == "gdpa" || name == "GDPA") return ModelKind::GDPA;
  throw Error(ErrorCode::InvalidArgument, "unknown model kind '" + std::string(name) + "'");
}

/// Unvalidated parameter set as read from a config file or the command line.
/// Fields that do not apply to `kind` must be left empty.
struct RawParams {
  ModelKind kind = ModelKind::DPA;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> delta_in;
  std::optional<double> delta_out;
  std::optional<double> cross_in;   // c
  std::optional<double> cross_out;  // d
  std::optional<double> rho;
  std::optional<std::int64_t> m;
};

class ModelParams;
ModelParams validate(const RawParams& raw);

/// Validated parameters for one of the three growth models.
///
/// gamma is always derived as 1 - alpha - beta. For DPA the cross weights and
/// rho are zero; for PA only m is meaningful.
class ModelParams {
 public:
  static ModelParams dpa(double alpha, double beta, double delta_in, double delta_out) {
    return validate({.kind = ModelKind::DPA,
                     .alpha = alpha,
                     .beta = beta,
                     .delta_in = delta_in,
                     .delta_out = delta_out});
  }

  static ModelParams gdpa(double alpha, double beta, double delta_in, double delta_out,
                          double cross_in, double cross_out, double rho) {
    return validate({.kind = ModelKind::GDPA,
                     .alpha = alpha,
                     .beta = beta,
                     .delta_in = delta_in,
                     .delta_out = delta_out,
                     .cross_in = cross_in,
                     .cross_out = cross_out,
                     .rho = rho});
  }

  static ModelParams pa(std::int64_t m) { return validate({.kind = ModelKind::PA, .m = m}); }

  ModelKind kind() const noexcept { return kind_; }
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double gamma() const noexcept { return 1.0 - alpha_ - beta_; }
  double delta_in() const noexcept { return delta_in_; }
  double delta_out() const noexcept { return delta_out_; }
  double cross_in() const noexcept { return cross_in_; }
  double cross_out() const noexcept { return cross_out_; }
  double rho() const noexcept { return rho_; }
  std::int64_t m() const noexcept { return m_; }

  /// Round-trips back to the raw form (only fields that apply to the kind).
  RawParams raw() const {
    RawParams r{.kind = kind_};
    if (kind_ == ModelKind::PA) {
      r.m = m_;
      return r;
    }
    r.alpha = alpha_;
    r.beta = beta_;
    r.delta_in = delta_in_;
    r.delta_out = delta_out_;
    if (kind_ == ModelKind::GDPA) {
      r.cross_in = cross_in_;
      r.cross_out = cross_out_;
      r.rho = rho_;
    }
    return r;
  }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;

 private:
  ModelParams() = default;
  friend ModelParams validate(const RawParams& raw);

  ModelKind kind_ = ModelKind::DPA;
  double alpha_ = 0.0;
  double beta_ = 0.0;
  double delta_in_ = 0.0;
  double delta_out_ = 0.0;
  double cross_in_ = 0.0;
  double cross_out_ = 0.0;
  double rho_ = 0.0;
  std::int64_t m_ = 0;
};

namespace detail {

inline double require(const std::optional<double>& v, const char* name) {
  if (!v) throw Error(ErrorCode::MissingField, std::string("missing parameter '") + name + "'");
  if (!std::isfinite(*v)) throw Error(ErrorCode::OutOfRange, std::string(name) + " is not finite");
  return *v;
}

inline void require_probability(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0))
    throw Error(ErrorCode::OutOfRange, std::string(name) + " must lie in [0, 1]");
}

inline void require_nonnegative(double v, const char* name) {
  if (!(v >= 0.0)) throw Error(ErrorCode::OutOfRange, std::string(name) + " must be >= 0");
}

inline void reject_present(bool present, const char* name, ModelKind kind) {
  if (present)
    throw Error(ErrorCode::InconsistentKind, std::string("parameter '") + name +
                                                 "' does not apply to model " +
                                                 std::string(to_string(kind)));
}

}  // namespace detail

inline ModelParams validate(const RawParams& raw) {
  using detail::reject_present;
  ModelParams p;
  p.kind_ = raw.kind;

  if (raw.kind == ModelKind::PA) {
    reject_present(raw.alpha.has_value(), "alpha", raw.kind);
    reject_present(raw.beta.has_value(), "beta", raw.kind);
    reject_present(raw.delta_in.has_value(), "delta_in", raw.kind);
    reject_present(raw.delta_out.has_value(), "delta_out", raw.kind);
    reject_present(raw.cross_in.has_value(), "c", raw.kind);
    reject_present(raw.cross_out.has_value(), "d", raw.kind);
    reject_present(raw.rho.has_value(), "rho", raw.kind);
    if (!raw.m) throw Error(ErrorCode::MissingField, "missing parameter 'm'");
    if (*raw.m < 1) throw Error(ErrorCode::OutOfRange, "m must be >= 1");
    p.m_ = *raw.m;
    return p;
  }

  reject_present(raw.m.has_value(), "m", raw.kind);
  if (raw.kind == ModelKind::DPA) {
    reject_present(raw.cross_in.has_value(), "c", raw.kind);
    reject_present(raw.cross_out.has_value(), "d", raw.kind);
    reject_present(raw.rho.has_value(), "rho", raw.kind);
  }

  p.alpha_ = detail::require(raw.alpha, "alpha");
  p.beta_ = detail::require(raw.beta, "beta");
  p.delta_in_ = detail::require(raw.delta_in, "delta_in");
  p.delta_out_ = detail::require(raw.delta_out, "delta_out");
  p.cross_in_ = raw.cross_in.value_or(0.0);
  p.cross_out_ = raw.cross_out.value_or(0.0);
  p.rho_ = raw.rho.value_or(0.0);

  detail::require_probability(p.alpha_, "alpha");
  detail::require_probability(p.beta_, "beta");
  detail::require_probability(p.rho_, "rho");
  if (p.alpha_ + p.beta_ > 1.0) throw Error(ErrorCode::OutOfRange, "alpha + beta must be <= 1");
  detail::require_nonnegative(p.delta_in_, "delta_in");
  detail::require_nonnegative(p.delta_out_, "delta_out");
  detail::require_nonnegative(p.cross_in_, "c");
  detail::require_nonnegative(p.cross_out_, "d");
  if (!std::isfinite(p.cross_in_) || !std::isfinite(p.cross_out_))
    throw Error(ErrorCode::OutOfRange, "c and d must be finite");

  if (!(p.alpha_ > 0.0)) throw Error(ErrorCode::AssumptionViolated, "alpha must be > 0");
  if (!(p.gamma() > 0.0))
    throw Error(ErrorCode::AssumptionViolated, "gamma = 1 - alpha - beta must be > 0");

  if (raw.kind == ModelKind::DPA) {
    if (!(p.delta_in_ > 0.0)) throw Error(ErrorCode::AssumptionViolated, "DPA needs delta_in > 0");
    if (!(p.delta_out_ > 0.0))
      throw Error(ErrorCode::AssumptionViolated, "DPA needs delta_out > 0");
  } else {
    if (p.delta_in_ == 0.0 && !(p.cross_in_ > 0.0))
      throw Error(ErrorCode::AssumptionViolated, "GDPA with delta_in = 0 needs c > 0");
    if (p.delta_out_ == 0.0 && !(p.cross_out_ > 0.0))
      throw Error(ErrorCode::AssumptionViolated, "GDPA with delta_out = 0 needs d > 0");
  }
  return p;
}

/// Constants of the limiting birth process. For DPA and PA the g fields equal
/// the c fields; for PA c_in = c_out = 1/2 (birth rate i/2).
struct RateConstants {
  double c_in = 0.0;
  double c_out = 0.0;
  double g_in = 0.0;
  double g_out = 0.0;
};

inline RateConstants rate_constants(const ModelParams& p) {
  if (p.kind() == ModelKind::PA) return {0.5, 0.5, 0.5, 0.5};
  const double a = p.alpha(), b = p.beta(), g = p.gamma();
  const double nodes = a + g;
  RateConstants rc;
  rc.c_in = (a + b) / (1.0 + p.delta_in() * nodes);
  rc.c_out = (g + b) / (1.0 + p.delta_out() * nodes);
  if (p.kind() == ModelKind::DPA) {
    rc.g_in = rc.c_in;
    rc.g_out = rc.c_out;
  } else {
    const double edges = 1.0 + p.rho();
    rc.g_in = (a + b) / (edges * (1.0 + p.cross_in()) + p.delta_in() * nodes);
    rc.g_out = (g + b) / (edges * (1.0 + p.cross_out()) + p.delta_out() * nodes);
  }
  return rc;
}

namespace detail {
inline void require_kind(const ModelParams& p, ModelKind kind) {
  if (p.kind() != kind)
    throw Error(ErrorCode::WrongKind, std::string("operation needs model ") +
                                          std::string(to_string(kind)) + ", got " +
                                          std::string(to_string(p.kind())));
}
}  // namespace detail

/// In-degree birth rate (i + delta_in) c_in of the DPA limit process.
inline double lambda_in(std::int64_t i, const RateConstants& rc, const ModelParams& p) {
  detail::require_kind(p, ModelKind::DPA);
  return (static_cast<double>(i) + p.delta_in()) * rc.c_in;
}

/// Out-degree birth rate (j + delta_out) c_out of the DPA limit process.
inline double lambda_out(std::int64_t j, const RateConstants& rc, const ModelParams& p) {
  detail::require_kind(p, ModelKind::DPA);
  return (static_cast<double>(j) + p.delta_out()) * rc.c_out;
}

struct GdpaRates {
  double in = 0.0;
  double out = 0.0;
  double both = 0.0;
};

inline GdpaRates gdpa_rates(std::int64_t i, std::int64_t j, const RateConstants& rc,
                            const ModelParams& p) {
  detail::require_kind(p, ModelKind::GDPA);
  const double di = static_cast<double>(i), dj = static_cast<double>(j);
  const double in_weight = (di + p.cross_in() * dj + p.delta_in()) * rc.g_in;
  const double out_weight = (p.cross_out() * di + dj + p.delta_out()) * rc.g_out;
  return {in_weight * (1.0 - p.rho()), out_weight * (1.0 - p.rho()),
          in_weight * p.rho() + out_weight * p.rho()};
}

struct DegreePair {
  int in = 0;
  int out = 0;
  friend bool operator==(const DegreePair&, const DegreePair&) = default;
};

struct StartEntry {
  DegreePair state;
  double prob = 0.0;
};

/// Law of the degree pair a node is born with. For PA the degree m is
/// reported on the `in` axis.
struct StartDistribution {
  std::vector<StartEntry> entries;

  double total() const {
    double s = 0.0;
    for (const auto& e : entries) s += e.prob;
    return s;
  }
};

inline StartDistribution start_distribution(const ModelParams& p) {
  switch (p.kind()) {
    case ModelKind::PA:
      return {{{{static_cast<int>(p.m()), 0}, 1.0}}};
    case ModelKind::DPA: {
      const double pa = p.alpha() / (p.alpha() + p.gamma());
      return {{{{0, 1}, pa}, {{1, 0}, 1.0 - pa}}};
    }
    case ModelKind::GDPA: {
      const double pa = p.alpha() / (p.alpha() + p.gamma());
      const double keep = 1.0 - p.rho();
      return {{{{0, 1}, keep * pa}, {{1, 0}, keep * (1.0 - pa)}, {{1, 1}, p.rho()}}};
    }
  }
  return {};
}

}  // namespace dpa
