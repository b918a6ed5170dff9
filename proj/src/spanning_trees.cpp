#include "resnet/spanning_trees.hpp"

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace resnet {

namespace {

struct Pair {
  Vertex u, v;
  Multiplicity k;
};

struct TreeWalker {
  std::size_t n;
  std::vector<Pair> pairs;
  std::vector<std::size_t> chosen;

  explicit TreeWalker(const Multigraph& g) : n(g.num_vertices()) {
    if (n > kSpanningTreeLimit)
      throw std::invalid_argument("spanning tree enumeration limited to " +
                                  std::to_string(kSpanningTreeLimit) + " vertices");
    for (const auto& [uv, k] : g.pairs()) pairs.push_back({uv.first, uv.second, k});
  }

  static Vertex find(std::vector<Vertex>& parent, Vertex v) {
    while (parent[v] != v) v = parent[v];
    return v;
  }

  // Calls visit(chosen pair indices, weight) for every spanning tree of the
  // underlying simple graph; weight is the number of multigraph trees it stands for.
  void each(const std::function<void(const std::vector<std::size_t>&, std::uint64_t)>& visit) {
    if (n <= 1) {
      visit(chosen, 1);
      return;
    }
    std::vector<Vertex> parent(n);
    for (Vertex v = 0; v < n; ++v) parent[v] = v;
    recurse(0, parent, 1, visit);
  }

  void recurse(std::size_t next, std::vector<Vertex> parent, std::uint64_t weight,
               const std::function<void(const std::vector<std::size_t>&, std::uint64_t)>& visit) {
    if (chosen.size() == n - 1) {
      visit(chosen, weight);
      return;
    }
    if (pairs.size() - next < n - 1 - chosen.size()) return;
    for (std::size_t i = next; i < pairs.size(); ++i) {
      if (pairs.size() - i < n - 1 - chosen.size()) return;
      const Vertex a = find(parent, pairs[i].u);
      const Vertex b = find(parent, pairs[i].v);
      if (a == b) continue;
      std::vector<Vertex> merged = parent;
      merged[a] = b;
      chosen.push_back(i);
      recurse(i + 1, std::move(merged), weight * pairs[i].k, visit);
      chosen.pop_back();
    }
  }
};

// Signed count contribution of one tree: +1 when the s-t path uses x then y,
// -1 for y then x, 0 otherwise.
int path_orientation(std::size_t n, const std::vector<Pair>& pairs, const std::vector<std::size_t>& tree,
                     Vertex s, Vertex t, Vertex x, Vertex y) {
  std::vector<std::vector<Vertex>> adj(n);
  for (std::size_t i : tree) {
    adj[pairs[i].u].push_back(pairs[i].v);
    adj[pairs[i].v].push_back(pairs[i].u);
  }
  std::vector<Vertex> prev(n, SIZE_MAX);
  std::vector<Vertex> stack{s};
  prev[s] = s;
  while (!stack.empty()) {
    const Vertex u = stack.back();
    stack.pop_back();
    for (Vertex w : adj[u])
      if (prev[w] == SIZE_MAX) {
        prev[w] = u;
        stack.push_back(w);
      }
  }
  for (Vertex v = t; v != s; v = prev[v]) {
    if (prev[v] == x && v == y) return 1;
    if (prev[v] == y && v == x) return -1;
  }
  return 0;
}

void check(const Multigraph& g, Vertex v) {
  if (v >= g.num_vertices()) throw InvalidVertex(v);
}

}  // namespace

std::uint64_t count_spanning_trees(const Multigraph& g) {
  TreeWalker walker(g);
  std::uint64_t total = 0;
  walker.each([&](const std::vector<std::size_t>&, std::uint64_t w) { total += w; });
  return total;
}

double current_via_spanning_trees(const Multigraph& g, Vertex s, Vertex t, Vertex x, Vertex y) {
  for (Vertex v : {s, t, x, y}) check(g, v);
  if (s == t) throw std::invalid_argument("source equals sink");
  const Multiplicity k = g.multiplicity(x, y);
  if (k == 0) throw std::invalid_argument("no edge between the given vertices");
  TreeWalker walker(g);
  std::uint64_t total = 0;
  std::int64_t signed_count = 0;
  walker.each([&](const std::vector<std::size_t>& tree, std::uint64_t w) {
    total += w;
    const int o = path_orientation(g.num_vertices(), walker.pairs, tree, s, t, x, y);
    // Trees through one particular copy of xy: the pair's factor k is replaced by 1.
    if (o != 0) signed_count += o * static_cast<std::int64_t>(w / k);
  });
  if (total == 0) throw std::invalid_argument("graph is disconnected");
  return static_cast<double>(signed_count) / static_cast<double>(total);
}

double resistance_via_spanning_trees(const Multigraph& g, Vertex s, Vertex t) {
  check(g, s);
  check(g, t);
  if (s == t) return 0.0;
  TreeWalker walker(g);
  std::uint64_t total = 0;
  std::map<std::size_t, std::int64_t> signed_count;
  walker.each([&](const std::vector<std::size_t>& tree, std::uint64_t w) {
    total += w;
    for (std::size_t i : tree) {
      const Pair& p = walker.pairs[i];
      const int o = path_orientation(g.num_vertices(), walker.pairs, tree, s, t, p.u, p.v);
      if (o != 0) signed_count[i] += o * static_cast<std::int64_t>(w / p.k);
    }
  });
  if (total == 0) throw std::invalid_argument("graph is disconnected");
  double power = 0.0;
  for (const auto& [i, c] : signed_count) {
    const double current = static_cast<double>(c) / static_cast<double>(total);
    power += walker.pairs[i].k * current * current;
  }
  return power;
}

}  // namespace resnet
