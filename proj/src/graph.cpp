#include "sigalloc/graph.hpp"

#include "sigalloc/rng.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>

namespace sigalloc {

WeightedGraph::WeightedGraph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n_ < 1) throw std::invalid_argument("graph needs at least one node");
  for (Edge& e : edges_) {
    if (e.i > e.j) std::swap(e.i, e.j);
    if (e.i < 0 || e.j >= n_) throw std::invalid_argument("edge endpoint out of range");
    if (e.i == e.j) throw std::invalid_argument("self-loops are not allowed");
    if (!(e.w > 0.0) || !std::isfinite(e.w)) throw std::invalid_argument("edge weight must be finite and > 0");
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return std::pair(a.i, a.j) < std::pair(b.i, b.j); });
  for (std::size_t k = 1; k < edges_.size(); ++k)
    if (edges_[k - 1].i == edges_[k].i && edges_[k - 1].j == edges_[k].j)
      throw std::invalid_argument("duplicate edge");
  adj_.resize(n_);
  for (const Edge& e : edges_) {
    adj_[e.i].emplace_back(e.j, e.w);
    adj_[e.j].emplace_back(e.i, e.w);
  }
}

const std::vector<std::pair<int, double>>& WeightedGraph::neighbors(int i) const {
  if (i < 0 || i >= n_) throw std::out_of_range("node index out of range");
  return adj_[i];
}

bool WeightedGraph::has_edge(int i, int j) const {
  if (i > j) std::swap(i, j);
  Edge probe{i, j, 1.0};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), probe,
                             [](const Edge& a, const Edge& b) { return std::pair(a.i, a.j) < std::pair(b.i, b.j); });
  return it != edges_.end() && it->i == i && it->j == j;
}

WeightedGraph erdos_renyi(int n, double p, std::uint64_t seed, WeightKind weights) {
  if (n < 2) throw std::invalid_argument("erdos_renyi: need n >= 2");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("erdos_renyi: p must be in [0, 1]");
  SplitMix64 rng(seed);
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.next_double() < p) {
        const double w = weights == WeightKind::Unit ? 1.0 : rng.uniform_open_lo(0.0, 1.0);
        edges.push_back(Edge{i, j, w});
      }
    }
  }
  return WeightedGraph(n, std::move(edges));
}

bool is_connected(const WeightedGraph& g) {
  const int n = g.node_count();
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int visited = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (const auto& [u, w] : g.neighbors(v)) {
      (void)w;
      if (!seen[u]) {
        seen[u] = 1;
        ++visited;
        stack.push_back(u);
      }
    }
  }
  return visited == n;
}

WeightedGraph union_graph(std::span<const WeightedGraph> graphs) {
  if (graphs.empty()) throw std::invalid_argument("union_graph: empty sequence");
  const int n = graphs.front().node_count();
  std::map<std::pair<int, int>, double> acc;
  for (const WeightedGraph& g : graphs) {
    if (g.node_count() != n) throw std::invalid_argument("union_graph: node counts differ");
    for (const Edge& e : g.edges()) acc[{e.i, e.j}] += e.w;
  }
  std::vector<Edge> edges;
  edges.reserve(acc.size());
  for (const auto& [key, w] : acc) edges.push_back(Edge{key.first, key.second, w});
  return WeightedGraph(n, std::move(edges));
}

GraphSchedule::GraphSchedule(std::vector<WeightedGraph> graphs, double dwell, SchedulePolicy policy)
    : graphs_(std::move(graphs)), dwell_(dwell), policy_(policy) {
  if (graphs_.empty()) throw std::invalid_argument("schedule needs at least one graph");
  if (!(dwell_ > 0.0)) throw std::invalid_argument("schedule dwell must be > 0");
  for (const WeightedGraph& g : graphs_)
    if (g.node_count() != graphs_.front().node_count())
      throw std::invalid_argument("schedule graphs must share the node count");
  if (policy_ == SchedulePolicy::Static && graphs_.size() != 1)
    throw std::invalid_argument("static schedule holds exactly one graph");
}

GraphSchedule GraphSchedule::single(WeightedGraph g) {
  std::vector<WeightedGraph> gs;
  gs.push_back(std::move(g));
  return GraphSchedule(std::move(gs), 1.0, SchedulePolicy::Static);
}

int GraphSchedule::node_count() const { return graphs_.front().node_count(); }

std::size_t GraphSchedule::index_at(double clock) const {
  if (policy_ == SchedulePolicy::Static || graphs_.size() == 1) return 0;
  const double slot = std::floor(clock / dwell_);
  const auto m = static_cast<long long>(graphs_.size());
  long long idx = static_cast<long long>(slot) % m;
  if (idx < 0) idx += m;
  return static_cast<std::size_t>(idx);
}

bool is_uniformly_connected(const GraphSchedule& s, int window) {
  if (window < 1) throw std::invalid_argument("window must be >= 1");
  if (s.policy() == SchedulePolicy::Static || s.size() == 1) return is_connected(s.graph(0));
  const std::size_t m = s.size();
  for (std::size_t start = 0; start < m; ++start) {
    std::vector<WeightedGraph> slice;
    slice.reserve(static_cast<std::size_t>(window));
    for (int k = 0; k < window; ++k) slice.push_back(s.graph((start + static_cast<std::size_t>(k)) % m));
    if (!is_connected(union_graph(slice))) return false;
  }
  return true;
}

WeightedGraph read_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file: " + path.string());
  std::string tag;
  int n = 0;
  if (!(in >> tag >> n) || tag != "n") throw std::runtime_error("graph file must start with header 'n <count>'");
  std::vector<Edge> edges;
  Edge e;
  while (in >> e.i >> e.j >> e.w) edges.push_back(e);
  if (!in.eof() && in.fail()) throw std::runtime_error("malformed edge line in " + path.string());
  return WeightedGraph(n, std::move(edges));
}

void write_graph_file(const WeightedGraph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write graph file: " + path.string());
  out << "n " << g.node_count() << "\n";
  char line[96];
  for (const Edge& e : g.edges()) {
    std::snprintf(line, sizeof line, "%d %d %.17g\n", e.i, e.j, e.w);
    out << line;
  }
}

} // namespace sigalloc
