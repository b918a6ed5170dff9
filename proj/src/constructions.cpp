#include "resnet/constructions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "linalg.hpp"
#include "resnet/rooting.hpp"
#include "switching.hpp"

namespace resnet {

Multigraph build_path(std::size_t n) {
  Multigraph g(n);
  for (Vertex v = 1; v < n; ++v) g.add_edge(v - 1, v);
  return g;
}

Multigraph build_cycle(std::size_t n) {
  if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
  Multigraph g = build_path(n);
  g.add_edge(n - 1, 0);
  return g;
}

Multigraph build_complete(std::size_t n) {
  Multigraph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

Multigraph build_star(std::size_t n, Multiplicity k) {
  if (n < 2) throw std::invalid_argument("star needs at least 2 vertices");
  if (k < 1) throw std::invalid_argument("star multiplicity must be positive");
  Multigraph g(n);
  for (Vertex v = 1; v < n; ++v) g.add_edge(0, v, k);
  return g;
}

RootedGraph build_rooted_star(std::size_t n_nonroot, Multiplicity k) {
  return RootedGraph(build_star(n_nonroot + 1, k), 0);
}

RootedGraph build_star_triangles_leaves(std::size_t n_nonroot, std::uint64_t m) {
  if (m < n_nonroot || 2 * (m - n_nonroot) > n_nonroot)
    throw std::invalid_argument("star of triangles needs n <= m <= 3n/2 (n=" + std::to_string(n_nonroot) +
                                ", m=" + std::to_string(m) + ")");
  const std::size_t triangles = m - n_nonroot;
  Multigraph g(n_nonroot + 1);
  Vertex next = 1;
  for (std::size_t t = 0; t < triangles; ++t, next += 2) {
    g.add_edge(0, next);
    g.add_edge(0, next + 1);
    g.add_edge(next, next + 1);
  }
  for (; next <= n_nonroot; ++next) g.add_edge(0, next);
  return RootedGraph(std::move(g), 0);
}

Multigraph build_cycle_with_leaves(std::size_t n, std::size_t cycle_len) {
  if (cycle_len < 3 || cycle_len > n)
    throw std::invalid_argument("cycle with leaves needs 3 <= cycle_len <= n");
  Multigraph g(n);
  for (Vertex v = 0; v < cycle_len; ++v) g.add_edge(v, (v + 1) % cycle_len);
  for (Vertex v = cycle_len; v < n; ++v) g.add_edge(0, v);
  return g;
}

namespace {

Multigraph finish_switching(detail::EdgeSoup soup, std::size_t g_min, std::uint64_t seed,
                            std::uint64_t max_attempts, std::mt19937_64& rng, const std::string& what) {
  auto outcome = detail::remove_short_cycles(std::move(soup), g_min, rng, max_attempts);
  if (!outcome.success)
    throw GenerationFailed(what + ": could not reach girth " + std::to_string(g_min) + " (seed " +
                               std::to_string(seed) + ", " + std::to_string(outcome.remaining_bad) +
                               " edges still on short cycles after " + std::to_string(outcome.proposals) +
                               " switch proposals)",
                           outcome.proposals, outcome.remaining_bad);
  if (!girth_at_least(outcome.graph, g_min))
    throw std::logic_error(what + ": switching left a short cycle");
  return std::move(outcome.graph);
}

}  // namespace

Multigraph build_random_regular_girth(std::size_t n, std::size_t d, std::size_t g_min, std::uint64_t seed,
                                      std::uint64_t max_attempts) {
  if (d < 3) throw std::invalid_argument("random regular graph needs degree >= 3");
  if ((n * d) % 2 != 0) throw std::invalid_argument("n*d must be even");
  if (d >= n) throw std::invalid_argument("degree must be less than n");
  std::mt19937_64 rng(seed);
  std::vector<Vertex> stubs;
  stubs.reserve(n * d);
  for (Vertex v = 0; v < n; ++v) stubs.insert(stubs.end(), d, v);
  std::shuffle(stubs.begin(), stubs.end(), rng);
  detail::EdgeSoup soup;
  soup.n = n;
  for (std::size_t i = 0; i < stubs.size(); i += 2) soup.edges.emplace_back(stubs[i], stubs[i + 1]);
  soup.switchable.assign(soup.edges.size(), true);
  return finish_switching(std::move(soup), g_min, seed, max_attempts, rng, "random regular graph");
}

Multigraph build_biregular_bipartite(std::size_t n, std::uint64_t seed, std::size_t g_min,
                                     std::uint64_t max_attempts) {
  if (n == 0 || n % 7 != 0) throw std::invalid_argument("biregular bipartite graph needs n divisible by 7");
  const std::size_t a = 3 * n / 7;
  std::mt19937_64 rng(seed);
  std::vector<Vertex> left, right;
  for (Vertex v = 0; v < a; ++v) left.insert(left.end(), 4, v);
  for (Vertex v = a; v < n; ++v) right.insert(right.end(), 3, v);
  std::shuffle(right.begin(), right.end(), rng);
  detail::EdgeSoup soup;
  soup.n = n;
  soup.bipartite = true;
  for (std::size_t i = 0; i < left.size(); ++i) soup.edges.emplace_back(left[i], right[i]);
  soup.switchable.assign(soup.edges.size(), true);
  return finish_switching(std::move(soup), g_min, seed, max_attempts, rng, "biregular bipartite graph");
}

Multigraph build_split_4regular(std::size_t n_base, std::uint64_t seed, std::size_t g_min,
                                std::uint64_t max_attempts) {
  if (n_base < 4 || n_base % 2 != 0) throw std::invalid_argument("split construction needs even n_base >= 4");
  const std::size_t h = n_base / 2;
  const std::size_t n = 3 * h;
  std::mt19937_64 rng(seed);
  std::vector<Vertex> left, right;
  for (Vertex v = 0; v < h; ++v) left.insert(left.end(), 4, v);
  for (Vertex v = h; v < n; ++v) right.insert(right.end(), 2, v);
  std::shuffle(right.begin(), right.end(), rng);
  detail::EdgeSoup soup;
  soup.n = n;
  soup.bipartite = true;
  for (std::size_t i = 0; i < left.size(); ++i) soup.edges.emplace_back(left[i], right[i]);
  soup.switchable.assign(soup.edges.size(), true);
  for (std::size_t i = 0; i < h; ++i) {
    soup.edges.emplace_back(h + 2 * i, h + 2 * i + 1);
    soup.switchable.push_back(false);
  }
  return finish_switching(std::move(soup), g_min, seed, max_attempts, rng, "split construction");
}

TreeBall extract_ball(const Multigraph& g, Vertex x, std::size_t depth) {
  if (x >= g.num_vertices()) throw InvalidVertex(x);
  std::vector<std::size_t> dist(g.num_vertices(), SIZE_MAX);
  std::vector<Vertex> order{x};
  dist[x] = 0;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const Vertex u = order[head];
    if (dist[u] == depth) continue;
    for (Vertex w : g.neighbors(u))
      if (dist[w] == SIZE_MAX) {
        dist[w] = dist[u] + 1;
        order.push_back(w);
      }
  }
  std::vector<Vertex> local(g.num_vertices(), SIZE_MAX);
  for (std::size_t i = 0; i < order.size(); ++i) local[order[i]] = i;
  TreeBall ball;
  ball.tree = Multigraph(order.size());
  ball.center = 0;
  ball.depth = depth;
  for (Vertex u : order) {
    ball.level.push_back(dist[u]);
    for (Vertex w : g.neighbors(u))
      if (local[w] != SIZE_MAX && local[u] < local[w]) ball.tree.add_edge(local[u], local[w], g.multiplicity(u, w));
  }
  if (ball.tree.num_edges() + 1 != ball.tree.num_vertices())
    throw std::domain_error("ball of radius " + std::to_string(depth) + " around vertex " + std::to_string(x) +
                            " is not a tree");
  return ball;
}

TreeBall regular_tree_ball(std::size_t d, std::size_t depth) {
  if (d < 2) throw std::invalid_argument("regular tree needs degree >= 2");
  TreeBall ball;
  ball.depth = depth;
  ball.tree = Multigraph(1);
  ball.level = {0};
  std::vector<Vertex> frontier{0};
  for (std::size_t k = 0; k < depth; ++k) {
    std::vector<Vertex> next;
    for (Vertex u : frontier) {
      const std::size_t children = k == 0 ? d : d - 1;
      for (std::size_t c = 0; c < children; ++c) {
        const Vertex w = ball.tree.add_vertex();
        ball.tree.add_edge(u, w);
        ball.level.push_back(k + 1);
        next.push_back(w);
      }
    }
    frontier = std::move(next);
  }
  return ball;
}

double tree_resistance(const TreeBall& ball) {
  const Multigraph& t = ball.tree;
  const std::size_t n = t.num_vertices();
  if (n == 0) throw std::domain_error("empty ball");
  if (n == 1) throw std::domain_error("single-vertex ball; tree resistance is infinite");
  if (ball.level.size() != n) throw std::invalid_argument("ball levels do not match the tree");
  // Children conduct toward the identified depth-level vertices; process deepest first.
  std::vector<Vertex> order(n);
  for (Vertex v = 0; v < n; ++v) order[v] = v;
  std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return ball.level[a] > ball.level[b]; });
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> cond(n, 0.0);
  for (Vertex v : order) {
    if (ball.level[v] >= ball.depth) {
      cond[v] = inf;
      continue;
    }
    double c = 0.0;
    for (Vertex w : t.neighbors(v)) {
      if (ball.level[w] != ball.level[v] + 1) continue;
      const double k = t.multiplicity(v, w);
      c += std::isinf(cond[w]) ? k : k * cond[w] / (k + cond[w]);
    }
    cond[v] = c;
  }
  const double c0 = cond[ball.center];
  if (std::isinf(c0)) return 0.0;
  if (c0 <= 0.0) throw std::domain_error("ball has no vertex at full depth; tree resistance is infinite");
  return 1.0 / c0;
}

std::vector<double> ball_resistances(const Multigraph& g, std::size_t depth) {
  const std::size_t n = g.num_vertices();
  std::vector<double> out(n, 0.0);
  const std::size_t workers = std::min<std::size_t>(detail::worker_threads(), std::max<std::size_t>(n, 1));
  const std::size_t chunk = (n + workers - 1) / std::max<std::size_t>(workers, 1);
  detail::parallel_for(workers, [&](std::size_t w) {
    std::vector<std::size_t> dist(n, SIZE_MAX);
    std::vector<Vertex> parent(n, 0);
    std::vector<double> cond(n, 0.0);
    std::vector<Vertex> order;
    const Vertex lo = w * chunk;
    const Vertex hi = std::min(n, lo + chunk);
    for (Vertex x = lo; x < hi; ++x) {
      order.assign(1, x);
      dist[x] = 0;
      parent[x] = x;
      for (std::size_t head = 0; head < order.size(); ++head) {
        const Vertex u = order[head];
        for (Vertex v : g.neighbors(u)) {
          if (g.multiplicity(u, v) > 1)
            throw std::domain_error("ball around vertex " + std::to_string(x) + " contains a repeated edge");
          if (v == parent[u] && u != x) continue;
          if (dist[v] != SIZE_MAX) {
            throw std::domain_error("ball of radius " + std::to_string(depth) + " around vertex " +
                                    std::to_string(x) + " is not a tree");
          }
          if (dist[u] == depth) continue;
          dist[v] = dist[u] + 1;
          parent[v] = u;
          order.push_back(v);
        }
      }
      for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const Vertex v = *it;
        if (dist[v] == depth) continue;
        double c = 0.0;
        for (Vertex u : g.neighbors(v)) {
          if (dist[u] == SIZE_MAX || dist[u] != dist[v] + 1 || parent[u] != v) continue;
          const double k = g.multiplicity(u, v);
          c += dist[u] == depth ? k : k * cond[u] / (k + cond[u]);
        }
        cond[v] = c;
      }
      if (depth == 0) {
        out[x] = 0.0;
      } else if (cond[x] <= 0.0) {
        throw std::domain_error("vertex " + std::to_string(x) + " has no vertex at distance " +
                                std::to_string(depth));
      } else {
        out[x] = 1.0 / cond[x];
      }
      for (Vertex v : order) dist[v] = SIZE_MAX;
    }
  });
  return out;
}

GoldenRecursion golden_recursion(double tolerance) {
  GoldenRecursion r;
  double x = 1.0, y = 1.0;
  for (std::size_t it = 1; it <= 10000; ++it) {
    const double nx = 1.0 + y / 3.0;
    const double ny = 1.0 + 1.0 / (1.0 / nx + 1.0 / (1.0 + nx / 2.0));
    const double change = std::max(std::abs(nx - x), std::abs(ny - y));
    x = nx;
    y = ny;
    r.iterations = it;
    if (change < tolerance) break;
  }
  r.x = x;
  r.y = y;
  r.r3 = 1.0 / (2.0 / x + 1.0 / (1.0 + x / 2.0));
  r.r4 = y / 4.0;
  r.avg = (2.0 * r.r3 + r.r4) / 3.0;
  return r;
}

std::uint64_t ConstructionSpec::count(const std::string& key) const {
  auto it = params.find(key);
  if (it == params.end()) throw std::invalid_argument("family " + family + " needs parameter '" + key + "'");
  std::uint64_t value = 0;
  const std::string& s = it->second;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("parameter '" + key + "' must be a nonnegative integer, got '" + s + "'");
  return value;
}

std::uint64_t ConstructionSpec::count_or(const std::string& key, std::uint64_t fallback) const {
  return params.count(key) ? count(key) : fallback;
}

ConstructionSpec parse_construction_spec(const std::string& text) {
  ConstructionSpec spec;
  std::istringstream in(text);
  for (std::string token; in >> token;) {
    const auto eq = token.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == token.size())
      throw std::invalid_argument("expected key=value, got '" + token + "'");
    const std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    if (key == "family")
      spec.family = value;
    else if (!spec.params.emplace(key, value).second)
      throw std::invalid_argument("duplicate parameter '" + key + "'");
  }
  if (spec.family.empty()) throw std::invalid_argument("construction spec needs family=...");
  return spec;
}

Construction build(const ConstructionSpec& spec) {
  const std::string& f = spec.family;
  const std::uint64_t seed = spec.count_or("seed", 0);
  const std::uint64_t attempts = spec.count_or("max_attempts", kDefaultMaxAttempts);
  if (f == "star" || f == "multi_star")
    return {build_star(spec.count("n"), static_cast<Multiplicity>(spec.count_or("k", 1))), std::nullopt};
  if (f == "star_triangles_leaves") {
    RootedGraph r = build_star_triangles_leaves(spec.count("n"), spec.count("m"));
    return {r.graph(), r.root()};
  }
  if (f == "cycle_with_leaves") return {build_cycle_with_leaves(spec.count("n"), spec.count("cycle_len")), std::nullopt};
  if (f == "random_regular")
    return {build_random_regular_girth(spec.count("n"), spec.count("d"), spec.count_or("g_min", 3), seed, attempts),
            std::nullopt};
  if (f == "biregular_bipartite")
    return {build_biregular_bipartite(spec.count("n"), seed, spec.count_or("g_min", 4), attempts), std::nullopt};
  if (f == "split_4regular")
    return {build_split_4regular(spec.count("n_base"), seed, spec.count_or("g_min", 4), attempts), std::nullopt};
  if (f == "rooted_union") {
    // Copies of a star of triangles (part_n, part_m) sharing the root, plus leaves.
    const RootedGraph part = build_star_triangles_leaves(spec.count("part_n"), spec.count("part_m"));
    std::vector<RootedGraph> parts(spec.count_or("copies", 1), part);
    RootedGraph r = rooted_union(parts, spec.count_or("leaves", 0));
    return {r.graph(), r.root()};
  }
  throw std::invalid_argument("unknown construction family '" + f + "'");
}

}  // namespace resnet
