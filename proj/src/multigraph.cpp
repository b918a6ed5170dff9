#include "resnet/multigraph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

namespace resnet {

InvalidVertex::InvalidVertex(Vertex v)
    : std::out_of_range("invalid vertex id " + std::to_string(v)) {}

Multigraph::Multigraph(std::size_t n_vertices)
    : adjacency_(n_vertices), degree_(n_vertices, 0) {}

double Multigraph::average_degree() const {
  if (adjacency_.empty()) return 0.0;
  return 2.0 * static_cast<double>(num_edges_) / static_cast<double>(adjacency_.size());
}

Vertex Multigraph::add_vertex() {
  adjacency_.emplace_back();
  degree_.push_back(0);
  return adjacency_.size() - 1;
}

void Multigraph::check_vertex(Vertex v) const {
  if (v >= adjacency_.size()) throw InvalidVertex(v);
}

void Multigraph::add_edge(Vertex u, Vertex v, Multiplicity k) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
  if (k == 0) return;
  auto [it, inserted] = mult_.try_emplace(normalized(u, v), 0);
  if (inserted) {
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  it->second += k;
  degree_[u] += k;
  degree_[v] += k;
  num_edges_ += k;
}

Multiplicity Multigraph::multiplicity(Vertex u, Vertex v) const {
  check_vertex(u);
  check_vertex(v);
  if (u == v) return 0;
  auto it = mult_.find(normalized(u, v));
  return it == mult_.end() ? 0 : it->second;
}

std::uint64_t Multigraph::degree(Vertex v) const {
  check_vertex(v);
  return degree_[v];
}

const std::vector<Vertex>& Multigraph::neighbors(Vertex v) const {
  check_vertex(v);
  return adjacency_[v];
}

RootedGraph::RootedGraph(Multigraph graph, Vertex root) : graph_(std::move(graph)), root_(root) {
  if (root_ >= graph_.num_vertices()) throw InvalidVertex(root_);
}

double RootedGraph::average_degree() const {
  const auto n = num_nonroot();
  if (n == 0) return 0.0;
  return 2.0 * static_cast<double>(graph_.num_edges()) / static_cast<double>(n);
}

void WeightedNetwork::set_conductance(Vertex u, Vertex v, double siemens) {
  if (u >= n_) throw InvalidVertex(u);
  if (v >= n_) throw InvalidVertex(v);
  if (u == v) throw std::invalid_argument("self-loop conductance");
  if (!(siemens >= 0.0) || !std::isfinite(siemens))
    throw std::invalid_argument("conductance must be finite and nonnegative");
  if (siemens == 0.0)
    conductance_.erase(normalized(u, v));
  else
    conductance_[normalized(u, v)] = siemens;
}

double WeightedNetwork::conductance(Vertex u, Vertex v) const {
  auto it = conductance_.find(normalized(u, v));
  return it == conductance_.end() ? 0.0 : it->second;
}

double WeightedNetwork::total_conductance() const {
  double s = 0.0;
  for (const auto& [uv, c] : conductance_) s += c;
  return s;
}

std::uint64_t degree(const Multigraph& g, Vertex v) { return g.degree(v); }

namespace {

constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

// Shortest cycle through BFS trees, stopping once a level cannot beat `best`.
std::size_t shortest_cycle(const Multigraph& g, std::size_t best) {
  const std::size_t n = g.num_vertices();
  std::vector<std::size_t> dist(n, kUnreached);
  std::vector<Vertex> parent(n, 0);
  std::vector<Vertex> touched;
  std::deque<Vertex> queue;
  for (Vertex s = 0; s < n; ++s) {
    for (Vertex t : touched) dist[t] = kUnreached;
    touched.clear();
    queue.clear();
    dist[s] = 0;
    parent[s] = s;
    touched.push_back(s);
    queue.push_back(s);
    while (!queue.empty()) {
      const Vertex u = queue.front();
      queue.pop_front();
      if (2 * dist[u] >= best) break;
      for (Vertex w : g.neighbors(u)) {
        if (dist[w] == kUnreached) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          touched.push_back(w);
          queue.push_back(w);
        } else if (parent[u] != w) {
          best = std::min(best, dist[u] + dist[w] + 1);
        }
      }
    }
  }
  return best;
}

}  // namespace

std::optional<std::size_t> girth(const Multigraph& g) {
  for (const auto& [uv, k] : g.pairs())
    if (k >= 2) return 2;
  const std::size_t best = shortest_cycle(g, kUnreached);
  if (best == kUnreached) return std::nullopt;
  return best;
}

bool girth_at_least(const Multigraph& g, std::size_t k) {
  if (k <= 2) return true;
  for (const auto& [uv, mult] : g.pairs())
    if (mult >= 2) return false;
  return shortest_cycle(g, k) >= k;
}

std::vector<std::size_t> bfs_distances(const Multigraph& g, Vertex source) {
  std::vector<std::size_t> dist(g.num_vertices(), kUnreached);
  if (source >= g.num_vertices()) throw InvalidVertex(source);
  std::deque<Vertex> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const Vertex u = queue.front();
    queue.pop_front();
    for (Vertex w : g.neighbors(u)) {
      if (dist[w] == kUnreached) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::size_t count_components(const Multigraph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<bool> seen(n, false);
  std::vector<Vertex> stack;
  std::size_t components = 0;
  for (Vertex s = 0; s < n; ++s) {
    if (seen[s]) continue;
    ++components;
    seen[s] = true;
    stack.push_back(s);
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      for (Vertex w : g.neighbors(u)) {
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
  }
  return components;
}

bool is_connected(const Multigraph& g) { return count_components(g) <= 1; }

Multigraph relabel(const Multigraph& g, std::span<const Vertex> perm) {
  if (perm.size() != g.num_vertices()) throw std::invalid_argument("permutation size mismatch");
  Multigraph out(g.num_vertices());
  for (const auto& [uv, k] : g.pairs()) out.add_edge(perm[uv.first], perm[uv.second], k);
  return out;
}

RootedGraph contract_edge_add_leaf(const RootedGraph& rg, Vertex x,
                                   std::span<const double> root_resistance) {
  const Multigraph& g = rg.graph();
  if (x >= g.num_vertices()) throw InvalidVertex(x);
  if (x == rg.root()) throw std::invalid_argument("cannot contract at the root");
  const auto& nbrs = g.neighbors(x);
  if (nbrs.empty()) throw std::invalid_argument("vertex " + std::to_string(x) + " is isolated");
  if (!root_resistance.empty() && root_resistance.size() != g.num_vertices())
    throw std::invalid_argument("root resistance vector has wrong size");

  Vertex target = *std::min_element(nbrs.begin(), nbrs.end());
  if (!root_resistance.empty()) {
    for (Vertex y : nbrs) {
      const double ry = y == rg.root() ? 0.0 : root_resistance[y];
      const double rt = target == rg.root() ? 0.0 : root_resistance[target];
      if (ry < rt || (ry == rt && y < target)) target = y;
    }
  }

  Multigraph out(g.num_vertices());
  for (const auto& [uv, k] : g.pairs()) {
    const Vertex a = uv.first == x ? target : uv.first;
    const Vertex b = uv.second == x ? target : uv.second;
    if (a != b) out.add_edge(a, b, k);
  }
  out.add_edge(x, rg.root());
  return RootedGraph(std::move(out), rg.root());
}

LeafCounts count_leaves(const RootedGraph& rg) {
  LeafCounts counts;
  const Multigraph& g = rg.graph();
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (v == rg.root() || g.degree(v) != 1) continue;
    if (g.multiplicity(v, rg.root()) == 1)
      ++counts.on_root;
    else
      ++counts.elsewhere;
  }
  return counts;
}

}  // namespace resnet
