#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dpa/absorption.hpp"
#include "dpa/stats.hpp"

using namespace dpa;

namespace {

const ModelParams kSym = ModelParams::dpa(0.3, 0.4, 1.0, 1.0);

GrowthGraph graph_from_edges(std::size_t nodes, std::vector<std::pair<NodeId, NodeId>> edges) {
  GrowthGraph g;
  while (g.node_count() < nodes) g.add_node();
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

DegreePMF random_pmf(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  DegreePMF p;
  double total = 0.0;
  for (std::size_t k = 0; k <= n; ++k) {
    p.mass.push_back(u(rng));
    total += p.mass.back();
  }
  for (double& v : p.mass) v /= total;
  p.leaked = p.mass.back();
  p.mass.pop_back();
  return p;
}

}  // namespace

TEST(Empirical, TwoNodeGraph) {
  const auto g = graph_from_edges(2, {{1, 0}});
  const auto e = empirical_joint(g, 3, 3);
  EXPECT_EQ(e.sample_count, 2u);
  EXPECT_EQ(e.pmf.method(), Method::Empirical);
  EXPECT_EQ(e.pmf.at(1, 0), 0.5);
  EXPECT_EQ(e.pmf.at(0, 1), 0.5);
  EXPECT_EQ(e.pmf.leaked_mass(), 0.0);
}

TEST(Empirical, TinyGridLeaks) {
  const auto g = grow_dpa(kSym, 1000, {1, 0});
  const auto e = empirical_joint(g, 0, 0);
  EXPECT_GT(e.pmf.leaked_mass(), 0.95);
  EXPECT_NEAR(e.pmf.total() + e.pmf.leaked_mass(), 1.0, 1e-12);
}

TEST(Empirical, MarginalCounts) {
  const auto g = graph_from_edges(3, {{1, 0}, {2, 0}, {2, 2}});
  const auto m = empirical_marginal(g, Axis::In, 1);
  EXPECT_DOUBLE_EQ(m.mass[0], 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(m.mass[1], 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(m.leaked, 1.0 / 3.0);
}

TEST(Empirical, MergeIsWeightedAverage) {
  const auto a = grow_dpa(kSym, 20000, {5, 0});
  const auto b = grow_dpa(kSym, 35000, {5, 1});
  auto ha = degree_histogram(a);
  const auto hb = degree_histogram(b);
  const auto ea = empirical_joint(ha, 12, 12), eb = empirical_joint(hb, 12, 12);
  const auto merged = empirical_joint(DegreeHistogram(ha).merge(hb), 12, 12);
  const double wa = static_cast<double>(ea.sample_count), wb = static_cast<double>(eb.sample_count);
  EXPECT_EQ(merged.sample_count, ea.sample_count + eb.sample_count);
  for (int i = 0; i <= 12; ++i)
    for (int j = 0; j <= 12; ++j)
      EXPECT_NEAR(merged.pmf.at(i, j), (wa * ea.pmf.at(i, j) + wb * eb.pmf.at(i, j)) / (wa + wb), 1e-15);
  EXPECT_NEAR(merged.pmf.leaked_mass(),
              (wa * ea.pmf.leaked_mass() + wb * eb.pmf.leaked_mass()) / (wa + wb), 1e-15);
  // merge order does not matter
  auto hb2 = hb;
  EXPECT_EQ(hb2.merge(ha), DegreeHistogram(ha).merge(hb));
}

TEST(TvDistance, Examples) {
  const DegreePMF p{{0.5, 0.5}, 0.0}, q{{1.0, 0.0}, 0.0}, r{{0.0, 0.0}, 1.0};
  EXPECT_EQ(tv_distance(p, p), 0.0);
  EXPECT_DOUBLE_EQ(tv_distance(p, q), 0.5);
  EXPECT_DOUBLE_EQ(tv_distance(q, r), 1.0);
  EXPECT_THROW(tv_distance(p, DegreePMF{{1.0}, 0.0}), Error);
}

TEST(TvDistance, MetricProperties) {
  std::mt19937_64 rng(53);
  for (int k = 0; k < 200; ++k) {
    const auto p = random_pmf(rng, 12), q = random_pmf(rng, 12), r = random_pmf(rng, 12);
    const double pq = tv_distance(p, q);
    EXPECT_EQ(pq, tv_distance(q, p));
    EXPECT_LE(pq, tv_distance(p, r) + tv_distance(r, q) + 1e-15);
    EXPECT_GE(pq, 0.0);
    EXPECT_LE(pq, 1.0);
  }
}

TEST(LogBins, CoverRangeContiguously) {
  const auto bins = log_bins(10, 200);
  EXPECT_EQ(bins.front().first, 10);
  EXPECT_EQ(bins.back().second, 201);
  for (std::size_t k = 1; k < bins.size(); ++k) EXPECT_EQ(bins[k].first, bins[k - 1].second);
  EXPECT_EQ(bins[0].second, 13);
}

TEST(LoglogSlope, ExactPowerLaw) {
  std::vector<double> p(1001);
  for (std::size_t i = 1; i < p.size(); ++i) p[i] = std::pow(static_cast<double>(i), -3.0);
  for (Binning b : {Binning::None, Binning::Log}) {
    const auto rep = loglog_slope(p, 10, 1000, b);
    EXPECT_NEAR(rep.fitted, -3.0, 1e-9);
    EXPECT_LT(rep.residual_rms, 1e-9);
    EXPECT_EQ(rep.lo, 10);
    EXPECT_EQ(rep.hi, 1000);
  }
  std::vector<double> q(1001);
  for (std::size_t i = 1; i < q.size(); ++i) q[i] = std::pow(static_cast<double>(i), -1.7);
  EXPECT_NEAR(loglog_slope(q, 10, 1000, Binning::Log).fitted, -1.7, 1e-9);
}

TEST(LoglogSlope, InsufficientSupport) {
  std::vector<double> p(100, 0.0);
  p[10] = p[20] = p[30] = p[40] = 0.1;
  try {
    loglog_slope(p, 5, 90);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InsufficientSupport);
  }
  EXPECT_THROW(loglog_slope(p, 0, 90), Error);
}

TEST(LoglogSlope, AnalyticMarginalTail) {
  const auto ax = BirthAxis{1.0, 0.4375};
  const auto s = stopped_birth_series(ax, 0, 1 << 14);
  const double expect = -(1.0 + 1.0 / 0.4375);
  const auto rep = loglog_slope(s, 1 << 10, 1 << 14, Binning::None, expect);
  EXPECT_NEAR(rep.fitted / expect, 1.0, 0.02);
  EXPECT_EQ(rep.predicted, expect);
}

TEST(Ccdf, IncludesLeak) {
  const std::vector<double> p{0.1, 0.2, 0.3};
  const auto c = ccdf(p, 0.4);
  EXPECT_DOUBLE_EQ(c[0], 1.0);
  EXPECT_DOUBLE_EQ(c[2], 0.7);
}

TEST(Reciprocity, HandCount) {
  EXPECT_NEAR(reciprocity(graph_from_edges(3, {{0, 1}, {1, 0}, {0, 2}})), 2.0 / 3.0, 1e-15);
  EXPECT_EQ(reciprocity(graph_from_edges(2, {{1, 1}})), 1.0);
  // duplicated edge counted once per copy
  EXPECT_NEAR(reciprocity(graph_from_edges(2, {{0, 1}, {0, 1}, {1, 0}})), 1.0, 1e-15);
  EXPECT_THROW(reciprocity(GrowthGraph{}), Error);
}

TEST(Reciprocity, NoReciprocationIsRare) {
  const auto p = ModelParams::gdpa(0.3, 0.4, 1.0, 1.0, 0.2, 0.1, 0.0);
  EXPECT_LT(reciprocity(grow_gdpa(p, 200000, {8, 0})), 0.002);
}

TEST(QuadratureSlope, SymmetricDiagonal) {
  const auto rc = rate_constants(kSym);
  const std::vector<std::int64_t> ns{50, 100, 200, 400, 800};
  const auto rep = quadrature_tail_slope(1.0, 1.0, ns, rc, kSym);
  EXPECT_NEAR(rep.predicted, -4.285714285714286, 1e-12);
  EXPECT_NEAR(rep.fitted, rep.predicted, 0.2);
  EXPECT_EQ(rep.lo, 50);
  EXPECT_EQ(rep.hi, 800);
}

TEST(QuadratureSlope, Preconditions) {
  const auto rc = rate_constants(kSym);
  EXPECT_THROW(quadrature_tail_slope(1, 1, std::vector<std::int64_t>{50, 100, 200, 400}, rc, kSym), Error);
  EXPECT_THROW(quadrature_tail_slope(1, 1, std::vector<std::int64_t>{10, 100, 200, 400, 800}, rc, kSym), Error);
  EXPECT_THROW(quadrature_tail_slope(1, 0, std::vector<std::int64_t>{50, 100, 200, 400, 800}, rc, kSym), Error);
}
