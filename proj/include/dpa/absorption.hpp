#pragma once

#include <algorithm>
#include <concepts>
#include <vector>

#include "dpa/error.hpp"
#include "dpa/joint_pmf.hpp"
#include "dpa/marginals.hpp"
#include "dpa/params.hpp"
#include "dpa/special.hpp"

namespace dpa {

/// Jump rates of the limit process out of state (k, l): in-degree birth,
/// out-degree birth and simultaneous birth. The stopping rate is always 1.
struct LatticeRates {
  double in = 0.0;
  double out = 0.0;
  double both = 0.0;

  double sigma() const { return in + out + both + 1.0; }
};

template <class R>
concept RateProvider = requires(const R& r, int k, int l) {
  { r(k, l) } -> std::convertible_to<LatticeRates>;
};

struct DpaRateProvider {
  BirthAxis in_axis;
  BirthAxis out_axis;

  explicit DpaRateProvider(const ModelParams& p)
      : DpaRateProvider(p, rate_constants(p)) {}
  DpaRateProvider(const ModelParams& p, const RateConstants& rc)
      : in_axis(birth_axis(Axis::In, rc, p)), out_axis(birth_axis(Axis::Out, rc, p)) {}

  LatticeRates operator()(int k, int l) const { return {in_axis.rate(k), out_axis.rate(l), 0.0}; }
};

struct GdpaRateProvider {
  ModelParams params;
  RateConstants rc;

  explicit GdpaRateProvider(const ModelParams& p) : params(p), rc(rate_constants(p)) {
    detail::require_kind(p, ModelKind::GDPA);
  }

  LatticeRates operator()(int k, int l) const {
    const GdpaRates g = gdpa_rates(k, l, rc, params);
    return {g.in, g.out, g.both};
  }
};

/// Truncated embedded random walk: grid bounds, transition rates and the
/// law of the starting state.
template <RateProvider Rates>
struct LatticeWalkSpec {
  int max_in = 512;
  int max_out = 512;
  Rates rates;
  StartDistribution start;
  double leak_ceiling = 0.05;
  std::optional<ModelParams> params = {};
};

/// Absorption probabilities of the embedded walk on the truncated lattice.
///
/// R(k,l) is the probability that the walk ever visits (k,l); states are
/// swept by increasing k + l so every predecessor is final before it is
/// read. The absorption mass is A = R / sigma, and each out-flow R * rate /
/// sigma that targets a state beyond the grid is added to leaked_mass.
template <RateProvider Rates>
JointPMF dp_absorption(const LatticeWalkSpec<Rates>& spec) {
  if (spec.max_in < 0 || spec.max_out < 0)
    throw Error(ErrorCode::InvalidArgument, "grid bounds must be >= 0");
  JointPMF pmf(spec.max_in, spec.max_out, Method::Dp, spec.params);
  for (const auto& e : spec.start.entries) {
    if (!pmf.contains(e.state.in, e.state.out))
      throw Error(ErrorCode::InvalidArgument, "start state lies outside the grid");
    pmf.at(e.state.in, e.state.out) += e.prob;
  }

  // pmf temporarily holds the start mass; it is overwritten with A below.
  const int max_in = spec.max_in, max_out = spec.max_out;
  CompensatedSum leak;
  for (int diag = 0; diag <= max_in + max_out; ++diag) {
    const int k_lo = std::max(0, diag - max_out);
    const int k_hi = std::min(diag, max_in);
    for (int k = k_lo; k <= k_hi; ++k) {
      const int l = diag - k;
      double reach = pmf.at(k, l);
      if (k > 0) reach += pmf.at(k - 1, l) * spec.rates(k - 1, l).in;
      if (l > 0) reach += pmf.at(k, l - 1) * spec.rates(k, l - 1).out;
      if (k > 0 && l > 0) reach += pmf.at(k - 1, l - 1) * spec.rates(k - 1, l - 1).both;
      const LatticeRates r = spec.rates(k, l);
      const double absorbed = reach / r.sigma();
      pmf.at(k, l) = absorbed;
      if (k == max_in) leak.add(absorbed * r.in);
      if (l == max_out) leak.add(absorbed * r.out);
      if (k == max_in || l == max_out) leak.add(absorbed * r.both);
    }
  }
  pmf.set_leaked_mass(leak.value());
  pmf.set_grid_too_small(leak.value() > spec.leak_ceiling);
  return pmf;
}

inline LatticeWalkSpec<DpaRateProvider> dpa_walk(const ModelParams& p, int max_in, int max_out) {
  return {max_in, max_out, DpaRateProvider(p), start_distribution(p), 0.05, p};
}

inline LatticeWalkSpec<GdpaRateProvider> gdpa_walk(const ModelParams& p, int max_in,
                                                   int max_out) {
  return {max_in, max_out, GdpaRateProvider(p), start_distribution(p), 0.05, p};
}

/// Limiting joint degree pmf of a DPA or GDPA model on a (max_in+1) x
/// (max_out+1) grid.
inline JointPMF dp_absorption(const ModelParams& p, int max_in = 512, int max_out = 512) {
  switch (p.kind()) {
    case ModelKind::DPA: return dp_absorption(dpa_walk(p, max_in, max_out));
    case ModelKind::GDPA: return dp_absorption(gdpa_walk(p, max_in, max_out));
    case ModelKind::PA: break;
  }
  throw Error(ErrorCode::WrongKind, "dp_absorption needs a DPA or GDPA model");
}

inline std::vector<double> dp_marginal(const JointPMF& pmf, Axis axis) {
  return axis_sums(pmf, axis == Axis::In);
}

}  // namespace dpa
