#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "dpa/error.hpp"
#include "dpa/growth.hpp"
#include "dpa/joint_pmf.hpp"
#include "dpa/params.hpp"
#include "dpa/stats.hpp"

namespace dpa {

using Json = nlohmann::ordered_json;

/// Shortest decimal that round-trips.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// ---- parameters -------------------------------------------------------------

inline Json to_json(const RawParams& r) {
  Json j;
  j["model"] = std::string(to_string(r.kind));
  auto put = [&](const char* key, const std::optional<double>& v) {
    if (v) j[key] = *v;
  };
  put("alpha", r.alpha);
  put("beta", r.beta);
  put("delta_in", r.delta_in);
  put("delta_out", r.delta_out);
  put("c", r.cross_in);
  put("d", r.cross_out);
  put("rho", r.rho);
  if (r.m) j["m"] = *r.m;
  return j;
}

inline Json to_json(const ModelParams& p) {
  Json j = to_json(p.raw());
  if (p.kind() != ModelKind::PA) j["gamma"] = p.gamma();
  return j;
}

/// Reads the flat key-value parameter object. Unknown keys are rejected.
inline RawParams raw_params_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "parameter config must be an object");
  RawParams r;
  if (j.contains("model")) r.kind = parse_model_kind(j.at("model").get<std::string>());
  for (const auto& [key, value] : j.items()) {
    if (key == "model" || key == "gamma") continue;
    if (key == "m") {
      if (!value.is_number_integer()) throw Error(ErrorCode::InvalidArgument, "m must be an integer");
      r.m = value.get<std::int64_t>();
      continue;
    }
    if (!value.is_number())
      throw Error(ErrorCode::InvalidArgument, "parameter '" + key + "' must be a number");
    const double v = value.get<double>();
    if (key == "alpha") r.alpha = v;
    else if (key == "beta") r.beta = v;
    else if (key == "delta_in") r.delta_in = v;
    else if (key == "delta_out") r.delta_out = v;
    else if (key == "c") r.cross_in = v;
    else if (key == "d") r.cross_out = v;
    else if (key == "rho") r.rho = v;
    else throw Error(ErrorCode::InvalidArgument, "unknown parameter '" + key + "'");
  }
  return r;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, path + ": " + e.what());
  }
}

// ---- pmfs and reports -------------------------------------------------------

inline Json to_json(const JointPMF& pmf) {
  Json j;
  j["method"] = std::string(to_string(pmf.method()));
  j["params"] = pmf.params() ? to_json(*pmf.params()) : Json(nullptr);
  j["max_in"] = pmf.max_in();
  j["max_out"] = pmf.max_out();
  Json entries = Json::array();
  for (int i = 0; i <= pmf.max_in(); ++i)
    for (int k = 0; k <= pmf.max_out(); ++k) entries.push_back(Json::array({i, k, pmf.at(i, k)}));
  j["entries"] = std::move(entries);
  j["leaked_mass"] = pmf.leaked_mass();
  return j;
}

inline JointPMF joint_pmf_from_json(const Json& j) {
  static const std::array<std::pair<const char*, Method>, 5> kMethods{{
      {"closed-form", Method::ClosedForm},
      {"quadrature", Method::Quadrature},
      {"dp", Method::Dp},
      {"empirical", Method::Empirical},
      {"exact", Method::Exact},
  }};
  const auto tag = j.at("method").get<std::string>();
  Method method = Method::Dp;
  bool found = false;
  for (const auto& [name, m] : kMethods)
    if (tag == name) {
      method = m;
      found = true;
    }
  if (!found) throw Error(ErrorCode::InvalidArgument, "unknown pmf method '" + tag + "'");
  std::optional<ModelParams> params;
  if (j.contains("params") && !j.at("params").is_null())
    params = validate(raw_params_from_json(j.at("params")));
  JointPMF pmf(j.at("max_in").get<int>(), j.at("max_out").get<int>(), method, params);
  for (const auto& e : j.at("entries")) {
    const int i = e.at(0).get<int>(), k = e.at(1).get<int>();
    if (!pmf.contains(i, k)) throw Error(ErrorCode::InvalidArgument, "pmf entry outside grid");
    pmf.at(i, k) = e.at(2).get<double>();
  }
  pmf.set_leaked_mass(j.at("leaked_mass").get<double>());
  return pmf;
}

inline void write_pmf_csv(std::ostream& os, const JointPMF& pmf) {
  os << "i,j,p\n";
  for (int i = 0; i <= pmf.max_in(); ++i)
    for (int k = 0; k <= pmf.max_out(); ++k)
      os << i << ',' << k << ',' << format_double(pmf.at(i, k)) << '\n';
}

inline Json to_json(const TailReport& r) {
  Json j;
  j["predicted"] = std::isnan(r.predicted) ? Json(nullptr) : Json(r.predicted);
  j["fitted"] = r.fitted;
  j["range"] = Json::array({r.lo, r.hi});
  j["residual_rms"] = r.residual_rms;
  return j;
}

inline void write_ccdf_csv(std::ostream& os, std::span<const double> ccdf_values) {
  os << "i,ccdf\n";
  for (std::size_t i = 0; i < ccdf_values.size(); ++i)
    os << i << ',' << format_double(ccdf_values[i]) << '\n';
}

// ---- graphs -----------------------------------------------------------------

inline void write_degrees_csv(std::ostream& os, const GrowthGraph& g) {
  os << "node,in,out\n";
  for (std::size_t v = 0; v < g.node_count(); ++v)
    os << v << ',' << g.in_degree[v] << ',' << g.out_degree[v] << '\n';
}

/// One row per directed edge; reciprocal_flag is 1 for both edges of a step
/// whose edge was reciprocated.
inline void write_edges_csv(std::ostream& os, const GrowthGraph& g) {
  os << "source,target,reciprocal_flag\n";
  std::size_t e = 0;
  for (std::uint8_t flag : g.reciprocal_flags) {
    // Directed steps add one edge, or two if reciprocated. PA steps add m
    // edges with flag 0; the tail loop below writes the rest of those.
    const std::size_t per_step = flag ? 2 : 1;
    for (std::size_t k = 0; k < per_step && e < g.edge_count(); ++k, ++e)
      os << g.edge_tails[e] << ',' << g.edge_heads[e] << ',' << int(flag) << '\n';
  }
  for (; e < g.edge_count(); ++e) os << g.edge_tails[e] << ',' << g.edge_heads[e] << ",0\n";
}

// Binary histogram: "PALB", u16 version, then (u32 in, u32 out, u64 count)
// triples, all little-endian, ordered by (in, out).
inline constexpr std::array<char, 4> kHistogramMagic{'P', 'A', 'L', 'B'};
inline constexpr std::uint16_t kHistogramVersion = 1;

namespace detail {
template <class T>
void put_le(std::ostream& os, T v) {
  unsigned char bytes[sizeof(T)];
  for (std::size_t k = 0; k < sizeof(T); ++k) bytes[k] = static_cast<unsigned char>(v >> (8 * k));
  os.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <class T>
bool get_le(std::istream& is, T& v) {
  unsigned char bytes[sizeof(T)];
  if (!is.read(reinterpret_cast<char*>(bytes), sizeof(T))) return false;
  v = 0;
  for (std::size_t k = 0; k < sizeof(T); ++k) v |= static_cast<T>(bytes[k]) << (8 * k);
  return true;
}
}  // namespace detail

inline void write_histogram_binary(std::ostream& os, const DegreeHistogram& h) {
  os.write(kHistogramMagic.data(), kHistogramMagic.size());
  detail::put_le<std::uint16_t>(os, kHistogramVersion);
  for (const auto& [key, count] : h.counts) {
    detail::put_le<std::uint32_t>(os, key.first);
    detail::put_le<std::uint32_t>(os, key.second);
    detail::put_le<std::uint64_t>(os, count);
  }
}

inline DegreeHistogram read_histogram_binary(std::istream& is) {
  std::array<char, 4> magic{};
  if (!is.read(magic.data(), magic.size()) || magic != kHistogramMagic)
    throw Error(ErrorCode::Io, "not a degree histogram (bad magic)");
  std::uint16_t version = 0;
  if (!detail::get_le(is, version) || version != kHistogramVersion)
    throw Error(ErrorCode::Io, "unsupported histogram version");
  DegreeHistogram h;
  while (true) {
    std::uint32_t in = 0, out = 0;
    std::uint64_t count = 0;
    if (!detail::get_le(is, in)) break;
    if (!detail::get_le(is, out) || !detail::get_le(is, count))
      throw Error(ErrorCode::Io, "truncated histogram record");
    h.add(in, out, count);
  }
  return h;
}

}  // namespace dpa
