#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "dpa/absorption.hpp"
#include "dpa/io.hpp"

using namespace dpa;

namespace {
const ModelParams kSym = ModelParams::dpa(0.3, 0.4, 1.0, 1.0);
}

TEST(Json, ParamsRoundTrip) {
  for (const auto& p : {kSym, ModelParams::gdpa(0.25, 0.5, 0.0, 1.5, 0.2, 0.1, 0.5), ModelParams::pa(3)}) {
    const Json j = to_json(p);
    EXPECT_EQ(validate(raw_params_from_json(j)), p);
  }
  const Json g = to_json(ModelParams::gdpa(0.3, 0.4, 1, 1, 0.2, 0.1, 0.5));
  for (const char* key : {"alpha", "beta", "gamma", "delta_in", "delta_out", "c", "d", "rho"})
    EXPECT_TRUE(g.contains(key)) << key;
}

TEST(Json, RejectsUnknownOrMistypedKeys) {
  EXPECT_THROW(raw_params_from_json(Json::parse(R"({"model":"dpa","alpah":0.3})")), Error);
  EXPECT_THROW(raw_params_from_json(Json::parse(R"({"model":"pa","m":2.5})")), Error);
  EXPECT_THROW(raw_params_from_json(Json::parse(R"({"model":"dpa","alpha":"x"})")), Error);
  EXPECT_THROW(raw_params_from_json(Json::parse(R"({"model":"zzz"})")), Error);
  EXPECT_THROW(raw_params_from_json(Json::array()), Error);
}

TEST(Json, PmfRoundTrip) {
  const auto pmf = dp_absorption(kSym, 6, 5);
  const Json j = to_json(pmf);
  EXPECT_EQ(j["method"], "dp");
  EXPECT_EQ(j["entries"].size(), 7u * 6u);
  EXPECT_EQ(j["entries"][1][1], 1);  // row-major: (0,0), (0,1), ...
  const auto back = joint_pmf_from_json(Json::parse(j.dump()));
  EXPECT_EQ(back.max_in(), 6);
  EXPECT_EQ(back.max_out(), 5);
  EXPECT_EQ(back.params(), pmf.params());
  EXPECT_EQ(back.leaked_mass(), pmf.leaked_mass());
  for (int i = 0; i <= 6; ++i)
    for (int k = 0; k <= 5; ++k) EXPECT_EQ(back.at(i, k), pmf.at(i, k));
}

TEST(Json, TailReport) {
  TailReport r;
  r.fitted = -3.1;
  r.lo = 10;
  r.hi = 200;
  const Json j = to_json(r);
  EXPECT_TRUE(j["predicted"].is_null());
  EXPECT_EQ(j["range"], Json::array({10, 200}));
  EXPECT_EQ(j.begin().key(), "predicted");
}

TEST(Csv, PmfAndCcdf) {
  JointPMF pmf(1, 1, Method::Exact);
  pmf.at(0, 1) = 0.25;
  pmf.at(1, 0) = 0.75;
  std::ostringstream os;
  write_pmf_csv(os, pmf);
  EXPECT_EQ(os.str(), "i,j,p\n0,0,0\n0,1,0.25\n1,0,0.75\n1,1,0\n");
  std::ostringstream cs;
  const std::vector<double> c{1.0, 0.5};
  write_ccdf_csv(cs, c);
  EXPECT_EQ(cs.str(), "i,ccdf\n0,1\n1,0.5\n");
}

TEST(Csv, DegreesAndEdges) {
  DirectedGrowth grow(ModelParams::gdpa(0.3, 0.4, 1, 1, 0, 0, 1.0), {1, 0});
  grow.step(Event::NewSource);
  std::ostringstream d, e;
  write_degrees_csv(d, grow.graph());
  write_edges_csv(e, grow.graph());
  EXPECT_EQ(d.str(), "node,in,out\n0,1,1\n1,1,1\n");
  EXPECT_EQ(e.str(), "source,target,reciprocal_flag\n1,0,1\n0,1,1\n");

  const auto pa = grow_pa(2, 2, {1, 0});
  std::ostringstream pe;
  write_edges_csv(pe, pa);
  const std::string text = pe.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 5);
}

TEST(Binary, HistogramRoundTrip) {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 50; ++trial) {
    DegreeHistogram h;
    const int n = static_cast<int>(rng() % 200);
    for (int k = 0; k < n; ++k)
      h.add(static_cast<std::uint32_t>(rng()), static_cast<std::uint32_t>(rng() % 5), rng() % 1000 + 1);
    std::stringstream ss;
    write_histogram_binary(ss, h);
    EXPECT_EQ(ss.str().size(), 6u + 16u * h.counts.size());
    EXPECT_EQ(read_histogram_binary(ss), h);
  }
}

TEST(Binary, LayoutIsLittleEndian) {
  DegreeHistogram h;
  h.add(1, 2, 3);
  std::ostringstream os;
  write_histogram_binary(os, h);
  const std::string expect("PALB\x01\x00\x01\x00\x00\x00\x02\x00\x00\x00\x03\x00\x00\x00\x00\x00\x00\x00", 22);
  EXPECT_EQ(os.str(), expect);
}

TEST(Binary, RejectsCorruptInput) {
  std::istringstream bad_magic("XXXX\x01\x00");
  EXPECT_THROW(read_histogram_binary(bad_magic), Error);
  std::istringstream bad_version(std::string("PALB\x02\x00", 6));
  EXPECT_THROW(read_histogram_binary(bad_version), Error);
  std::istringstream truncated(std::string("PALB\x01\x00\x01\x00\x00\x00\x02", 11));
  EXPECT_THROW(read_histogram_binary(truncated), Error);
}

TEST(Format, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1.0 / 3.0), "0.3333333333333333");
}
