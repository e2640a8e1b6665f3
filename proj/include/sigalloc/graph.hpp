#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <utility>
#include <vector>

namespace sigalloc {

// Undirected edge, stored once with i < j. The single record represents both
// directions, so W_ij = W_ji holds by construction.
struct Edge {
  int i = 0;
  int j = 0;
  double w = 1.0;
};

class WeightedGraph {
public:
  // Validates and canonicalizes: no self-loops, no duplicates, weights > 0,
  // endpoints in [0, n). Edges are kept sorted by (i, j).
  WeightedGraph(int n, std::vector<Edge> edges);

  int node_count() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  // Realized symmetric adjacency: both (i -> j) and (j -> i) entries carry
  // the same stored weight.
  const std::vector<std::pair<int, double>>& neighbors(int i) const;

  bool has_edge(int i, int j) const;

private:
  int n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<int, double>>> adj_;
};

enum class WeightKind { Unit, UniformRandom };

// G(n, p) with each unordered pair included independently with probability p.
// Unit weights are 1; UniformRandom weights are uniform on (0, 1].
// Deterministic for a given (n, p, seed, weights): the pair scan order and
// the SplitMix64 draw sequence are fixed.
WeightedGraph erdos_renyi(int n, double p, std::uint64_t seed, WeightKind weights = WeightKind::Unit);

// True iff the graph has a single connected component (weights ignored).
// A single-vertex graph is connected.
bool is_connected(const WeightedGraph& g);

// Edge union of the inputs; a shared edge's weight is the sum of its input
// weights (connectivity checks ignore weights, so the choice only matters to
// callers that run dynamics on the union).
WeightedGraph union_graph(std::span<const WeightedGraph> graphs);

enum class SchedulePolicy { Static, RoundRobin };

// Time-indexed sequence of same-size graphs. `dwell` is how long each graph
// stays active: seconds in continuous time, steps in discrete time; the
// caller supplies the matching clock to active_at/index_at.
class GraphSchedule {
public:
  GraphSchedule(std::vector<WeightedGraph> graphs, double dwell, SchedulePolicy policy);

  static GraphSchedule single(WeightedGraph g);

  std::size_t size() const { return graphs_.size(); }
  int node_count() const;
  double dwell() const { return dwell_; }
  SchedulePolicy policy() const { return policy_; }
  const WeightedGraph& graph(std::size_t idx) const { return graphs_.at(idx); }

  std::size_t index_at(double clock) const;
  const WeightedGraph& active_at(double clock) const { return graphs_[index_at(clock)]; }

private:
  std::vector<WeightedGraph> graphs_;
  double dwell_;
  SchedulePolicy policy_;
};

// True iff the union of the graphs active over every window of `window`
// consecutive schedule slots is connected. For RoundRobin schedules this
// checks all cyclic windows; a Static schedule reduces to is_connected.
bool is_uniformly_connected(const GraphSchedule& s, int window);

// Edge-list fixture format: header "n <count>", then one "i j w" per line.
WeightedGraph read_graph_file(const std::filesystem::path& path);
void write_graph_file(const WeightedGraph& g, const std::filesystem::path& path);

} // namespace sigalloc
