#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

#include "dpa/error.hpp"
#include "dpa/params.hpp"
#include "dpa/rng.hpp"

namespace dpa {

using NodeId = std::uint32_t;

/// Multigraph state during sequential growth. Every directed edge u -> v is
/// one entry in edge_tails (u, an out-stub) and one in edge_heads (v, an
/// in-stub), so a uniform pick from edge_heads selects a node with
/// probability proportional to its in-degree.
///
/// For the undirected PA model the degree lives in in_degree, out_degree stays
/// zero, and each edge is stored once as (new node, target).
struct GrowthGraph {
  std::vector<std::uint32_t> in_degree;
  std::vector<std::uint32_t> out_degree;
  std::vector<NodeId> edge_heads;
  std::vector<NodeId> edge_tails;
  std::vector<std::uint8_t> reciprocal_flags;  // one per growth step
  std::uint64_t step_count = 0;

  GrowthGraph() : in_degree(1, 0), out_degree(1, 0) {}

  std::size_t node_count() const noexcept { return in_degree.size(); }
  std::size_t edge_count() const noexcept { return edge_heads.size(); }

  NodeId add_node() {
    in_degree.push_back(0);
    out_degree.push_back(0);
    return static_cast<NodeId>(in_degree.size() - 1);
  }

  void add_edge(NodeId from, NodeId to) {
    edge_tails.push_back(from);
    edge_heads.push_back(to);
    ++out_degree[from];
    ++in_degree[to];
  }
};

/// The three DPA/GDPA events: new node pointing out (alpha), new edge between
/// existing nodes (beta), new node pointed at (gamma).
enum class Event { NewSource, NewEdge, NewTarget };

/// Sequential DPA/GDPA growth with O(1) attachment sampling.
///
/// A node is chosen with probability proportional to i + c j + delta_in by
/// first picking a category with weights (E, c E, N delta_in) and then a
/// uniform entry of edge_heads, edge_tails or the node list respectively
/// (E = edge count, N = node count). Sources use (d E, E, N delta_out)
/// symmetrically. Within a step every choice uses the state from before the
/// step; if all weights are zero the pick is uniform over existing nodes.
class DirectedGrowth {
 public:
  DirectedGrowth(const ModelParams& p, RngSeed seed) : params_(p), rng_(seed) {
    if (p.kind() == ModelKind::PA)
      throw Error(ErrorCode::WrongKind, "directed growth needs a DPA or GDPA model");
    reciprocate_ = p.kind() == ModelKind::GDPA;
  }

  const GrowthGraph& graph() const noexcept { return graph_; }
  GrowthGraph release() { return std::move(graph_); }

  Event draw_event() {
    const double u = rng_.uniform();
    if (u < params_.alpha()) return Event::NewSource;
    if (u < params_.alpha() + params_.beta()) return Event::NewEdge;
    return Event::NewTarget;
  }

  void step() { step(draw_event()); }

  void step(Event e) {
    NodeId from = 0, to = 0;
    switch (e) {
      case Event::NewSource:
        to = pick(1.0, params_.cross_in(), params_.delta_in());
        from = graph_.add_node();
        break;
      case Event::NewEdge:
        from = pick(params_.cross_out(), 1.0, params_.delta_out());
        to = pick(1.0, params_.cross_in(), params_.delta_in());
        break;
      case Event::NewTarget:
        from = pick(params_.cross_out(), 1.0, params_.delta_out());
        to = graph_.add_node();
        break;
    }
    graph_.add_edge(from, to);
    bool reciprocal = false;
    if (reciprocate_ && rng_.bernoulli(params_.rho())) {
      graph_.add_edge(to, from);
      reciprocal = true;
    }
    graph_.reciprocal_flags.push_back(reciprocal ? 1 : 0);
    ++graph_.step_count;
    assert(graph_.edge_heads.size() == graph_.edge_tails.size());
  }

  void run(std::uint64_t n_steps) {
    graph_.in_degree.reserve(graph_.node_count() + n_steps);
    graph_.out_degree.reserve(graph_.node_count() + n_steps);
    const std::uint64_t edges = n_steps * (reciprocate_ ? 2 : 1);
    graph_.edge_heads.reserve(graph_.edge_count() + edges);
    graph_.edge_tails.reserve(graph_.edge_count() + edges);
    graph_.reciprocal_flags.reserve(graph_.reciprocal_flags.size() + n_steps);
    for (std::uint64_t s = 0; s < n_steps; ++s) step();
  }

 private:
  // Node with probability proportional to w_in * in + w_out * out + delta.
  NodeId pick(double w_in, double w_out, double delta) {
    const auto edges = static_cast<double>(graph_.edge_count());
    const auto nodes = static_cast<double>(graph_.node_count());
    const double by_in = w_in * edges;
    const double by_out = w_out * edges;
    const double total = by_in + by_out + delta * nodes;
    if (!(total > 0.0)) return static_cast<NodeId>(rng_.below(graph_.node_count()));
    const double u = rng_.uniform() * total;
    if (u < by_in) return graph_.edge_heads[rng_.below(graph_.edge_count())];
    if (u < by_in + by_out) return graph_.edge_tails[rng_.below(graph_.edge_count())];
    return static_cast<NodeId>(rng_.below(graph_.node_count()));
  }

  ModelParams params_;
  Random rng_;
  GrowthGraph graph_;
  bool reciprocate_ = false;
};

inline GrowthGraph grow_dpa(const ModelParams& p, std::uint64_t n_steps, RngSeed seed) {
  detail::require_kind(p, ModelKind::DPA);
  DirectedGrowth g(p, seed);
  g.run(n_steps);
  return g.release();
}

inline GrowthGraph grow_gdpa(const ModelParams& p, std::uint64_t n_steps, RngSeed seed) {
  detail::require_kind(p, ModelKind::GDPA);
  DirectedGrowth g(p, seed);
  g.run(n_steps);
  return g.release();
}

/// Undirected PA: each step adds one node with m edges, each attached
/// independently with probability proportional to degree (uniform pick over
/// all edge endpoints). The new node's own endpoints only become eligible
/// after all m edges are placed. With no edges yet the pick is uniform over
/// existing nodes, so the first step sends all m edges to node 0.
inline GrowthGraph grow_pa(std::int64_t m, std::uint64_t n_steps, RngSeed seed) {
  if (m < 1) throw Error(ErrorCode::OutOfRange, "m must be >= 1");
  Random rng(seed);
  GrowthGraph g;
  g.in_degree.reserve(n_steps + 1);
  g.out_degree.reserve(n_steps + 1);
  g.edge_heads.reserve(n_steps * static_cast<std::uint64_t>(m));
  g.edge_tails.reserve(n_steps * static_cast<std::uint64_t>(m));
  std::vector<NodeId> targets(static_cast<std::size_t>(m));
  for (std::uint64_t s = 0; s < n_steps; ++s) {
    const std::uint64_t edges = g.edge_count();
    for (auto& t : targets) {
      if (edges == 0) {
        t = static_cast<NodeId>(rng.below(g.node_count()));
      } else {
        const std::uint64_t stub = rng.below(2 * edges);
        t = stub < edges ? g.edge_heads[stub] : g.edge_tails[stub - edges];
      }
    }
    const NodeId v = g.add_node();
    for (NodeId t : targets) {
      g.edge_tails.push_back(v);
      g.edge_heads.push_back(t);
      ++g.in_degree[v];
      ++g.in_degree[t];
    }
    g.reciprocal_flags.push_back(0);
    ++g.step_count;
  }
  return g;
}

/// Per-node (in, out) degrees in node order.
inline std::vector<DegreePair> degree_snapshot(const GrowthGraph& g) {
  std::vector<DegreePair> out(g.node_count());
  for (std::size_t v = 0; v < g.node_count(); ++v)
    out[v] = {static_cast<int>(g.in_degree[v]), static_cast<int>(g.out_degree[v])};
  return out;
}

}  // namespace dpa
