#include "switching.hpp"

#include <algorithm>

namespace resnet::detail {

namespace {

class SwitchState {
public:
  SwitchState(const EdgeSoup& soup, std::size_t g_min)
      : adj_(soup.n), mark_(soup.n, 0), du_(soup.n, 0), dv_(soup.n, 0), g_min_(g_min) {
    for (const auto& [u, v] : soup.edges) add(u, v);
  }

  void add(Vertex u, Vertex v) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }

  void remove(Vertex u, Vertex v) {
    erase_one(adj_[u], v);
    erase_one(adj_[v], u);
  }

  /// Loop, repeated pair, or an alternative u-v path short enough to close a
  /// cycle of length < g_min.
  bool bad(Vertex u, Vertex v) {
    if (u == v) return true;
    if (g_min_ <= 2) return false;
    if (std::count(adj_[u].begin(), adj_[u].end(), v) >= 2) return true;
    if (g_min_ <= 3) return false;
    const std::size_t limit = g_min_ - 2;  // longest alternative path that still counts
    const std::size_t ru = (limit + 1) / 2;
    const std::size_t rv = limit / 2;

    ++stamp_;
    frontier_.clear();
    frontier_.push_back(u);
    mark_[u] = stamp_;
    du_[u] = 0;
    for (std::size_t head = 0; head < frontier_.size(); ++head) {
      const Vertex x = frontier_[head];
      if (du_[x] >= ru) break;
      bool skipped = false;
      for (Vertex w : adj_[x]) {
        if (x == u && w == v && !skipped) {
          skipped = true;
          continue;
        }
        if (mark_[w] == stamp_) continue;
        mark_[w] = stamp_;
        du_[w] = du_[x] + 1;
        frontier_.push_back(w);
      }
    }

    const std::uint64_t u_stamp = stamp_;
    ++stamp_;
    if (mark_[v] == u_stamp) return true;
    frontier_.clear();
    frontier_.push_back(v);
    mark_[v] = stamp_;
    dv_[v] = 0;
    for (std::size_t head = 0; head < frontier_.size(); ++head) {
      const Vertex x = frontier_[head];
      if (dv_[x] >= rv) break;
      bool skipped = false;
      for (Vertex w : adj_[x]) {
        if (x == v && w == u && !skipped) {
          skipped = true;
          continue;
        }
        if (mark_[w] == u_stamp) {
          if (du_[w] + dv_[x] + 1 <= limit) return true;
          continue;
        }
        if (mark_[w] == stamp_) continue;
        mark_[w] = stamp_;
        dv_[w] = dv_[x] + 1;
        frontier_.push_back(w);
      }
    }
    return false;
  }

private:
  static void erase_one(std::vector<Vertex>& list, Vertex v) {
    auto it = std::find(list.begin(), list.end(), v);
    if (it != list.end()) {
      *it = list.back();
      list.pop_back();
    }
  }

  std::vector<std::vector<Vertex>> adj_;
  std::vector<std::uint64_t> mark_;
  std::vector<std::size_t> du_, dv_;
  std::vector<Vertex> frontier_;
  std::uint64_t stamp_ = 0;
  std::size_t g_min_;
};

}  // namespace

SwitchOutcome remove_short_cycles(EdgeSoup soup, std::size_t g_min, std::mt19937_64& rng,
                                  std::uint64_t max_attempts) {
  SwitchState state(soup, g_min);
  std::vector<std::size_t> movable;
  for (std::size_t i = 0; i < soup.edges.size(); ++i)
    if (soup.switchable[i]) movable.push_back(i);

  std::vector<std::size_t> bad;
  for (std::size_t i : movable)
    if (state.bad(soup.edges[i].first, soup.edges[i].second)) bad.push_back(i);

  SwitchOutcome out;
  std::uint64_t failures = 0;
  while (!bad.empty() && movable.size() >= 2) {
    const std::size_t slot = std::uniform_int_distribution<std::size_t>(0, bad.size() - 1)(rng);
    const std::size_t i = bad[slot];
    auto [a, b] = soup.edges[i];
    if (!state.bad(a, b)) {
      bad[slot] = bad.back();
      bad.pop_back();
      continue;
    }
    if (failures >= max_attempts) break;
    ++out.proposals;
    const std::size_t j = movable[std::uniform_int_distribution<std::size_t>(0, movable.size() - 1)(rng)];
    if (j == i) {
      ++failures;
      continue;
    }
    auto [c, d] = soup.edges[j];
    VertexPair e1, e2;
    if (soup.bipartite || std::bernoulli_distribution(0.5)(rng)) {
      e1 = {a, d};
      e2 = {c, b};
    } else {
      e1 = {a, c};
      e2 = {b, d};
    }
    if (e1.first == e1.second || e2.first == e2.second) {
      ++failures;
      continue;
    }
    state.remove(a, b);
    state.remove(c, d);
    state.add(e1.first, e1.second);
    state.add(e2.first, e2.second);
    if (state.bad(e1.first, e1.second) || state.bad(e2.first, e2.second)) {
      state.remove(e1.first, e1.second);
      state.remove(e2.first, e2.second);
      state.add(a, b);
      state.add(c, d);
      ++failures;
      continue;
    }
    soup.edges[i] = e1;
    soup.edges[j] = e2;
    ++out.accepted;
    failures = 0;
  }

  out.remaining_bad = bad.size();
  out.success = bad.empty();
  if (out.success) {
    Multigraph g(soup.n);
    for (const auto& [u, v] : soup.edges) g.add_edge(u, v);
    out.graph = std::move(g);
  }
  return out;
}

}  // namespace resnet::detail
