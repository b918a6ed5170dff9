#include "resnet/rooting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "resnet/constructions.hpp"

namespace resnet {

SinkRooting p_rooted(const Multigraph& g, double p, std::uint64_t seed) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("p must lie in (0, 1)");
  const std::size_t n = g.num_vertices();
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  Multigraph out = g;
  const Vertex root = out.add_vertex();
  SinkRooting r;
  for (Vertex x = 0; x < n; ++x) {
    if (!coin(rng)) continue;
    r.sinks.push_back(x);
    const std::uint64_t d = g.degree(x);
    if (d >= 2) {
      out.add_edge(x, root, static_cast<Multiplicity>(d - 1));
      r.added_edges += d - 1;
    }
  }
  r.rooted = RootedGraph(std::move(out), root);
  return r;
}

RootedGraph sink_graph(const Multigraph& g, std::span<const Vertex> sinks) {
  Multigraph out = g;
  const Vertex root = out.add_vertex();
  for (Vertex x : sinks) {
    if (x >= g.num_vertices()) throw InvalidVertex(x);
    out.add_edge(x, root);
  }
  return RootedGraph(std::move(out), root);
}

double sink_rooting_bound(double a_prime, std::size_t s) {
  if (s == 0) throw std::invalid_argument("sink count must be positive");
  const double sd = static_cast<double>(s);
  return a_prime / 2.0 + a_prime / (2.0 * sd) + 1.0 / sd;
}

SinkSampling root_via_sinks(const Multigraph& g, std::size_t s, std::size_t trials, std::uint64_t seed,
                            bool with_replacement) {
  const std::size_t n = g.num_vertices();
  if (s == 0) throw std::invalid_argument("sink count must be positive");
  if (trials == 0) throw std::invalid_argument("need at least one trial");
  if (!with_replacement && s > n) throw std::invalid_argument("cannot choose more distinct sinks than vertices");
  const auto summary = resistance_summary(g);
  if (is_disconnected(summary)) throw DisconnectedError(std::get<Disconnected>(summary).components);

  SinkSampling out;
  out.bound = sink_rooting_bound(std::get<ResistanceSummary>(summary).A_prime, s);
  out.trials = trials;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Vertex> pick(0, n - 1);
  std::vector<Vertex> all(n);
  for (Vertex v = 0; v < n; ++v) all[v] = v;
  double sum = 0.0, sum_sq = 0.0;
  std::vector<Vertex> sinks(s);
  for (std::size_t t = 0; t < trials; ++t) {
    if (with_replacement) {
      for (auto& x : sinks) x = pick(rng);
    } else {
      sinks.clear();
      std::sample(all.begin(), all.end(), std::back_inserter(sinks), s, rng);
    }
    RootedGraph candidate = sink_graph(g, sinks);
    const double b = finite(rooted_summary(candidate)).B;
    sum += b;
    sum_sq += b * b;
    if (t == 0 || b < out.best_B) {
      out.best_B = b;
      out.best = std::move(candidate);
    }
  }
  const double td = static_cast<double>(trials);
  out.mean_B = sum / td;
  const double var = trials > 1 ? std::max(0.0, (sum_sq - td * out.mean_B * out.mean_B) / (td - 1.0)) : 0.0;
  out.stderr_B = std::sqrt(var / td);
  return out;
}

std::vector<double> root_resistances(const RootedGraph& rg) {
  const Multigraph& g = rg.graph();
  const std::size_t n = g.num_vertices();
  const auto dist = bfs_distances(g, rg.root());
  std::vector<double> out(n, std::numeric_limits<double>::infinity());
  out[rg.root()] = 0.0;
  if (std::all_of(dist.begin(), dist.end(), [](std::size_t d) { return d != SIZE_MAX; })) {
    const RootedSummary s = finite(rooted_summary(rg));
    return s.per_vertex;
  }
  std::vector<Vertex> index(n, SIZE_MAX);
  std::size_t k = 0;
  for (Vertex v = 0; v < n; ++v)
    if (dist[v] != SIZE_MAX) index[v] = k++;
  Multigraph part(k);
  for (const auto& [uv, mult] : g.pairs())
    if (index[uv.first] != SIZE_MAX && index[uv.second] != SIZE_MAX)
      part.add_edge(index[uv.first], index[uv.second], mult);
  const RootedSummary s = finite(rooted_summary(RootedGraph(std::move(part), index[rg.root()])));
  for (Vertex v = 0; v < n; ++v)
    if (index[v] != SIZE_MAX) out[v] = s.per_vertex[index[v]];
  return out;
}

Theorem64Result theorem64_rooting(const Multigraph& g, std::size_t ell, double eps, std::optional<double> p,
                                  std::uint64_t seed) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
  if (ell == 0) throw std::invalid_argument("ell must be positive");
  const std::size_t n = g.num_vertices();
  if (n == 0) throw std::invalid_argument("empty graph");
  if (!girth_at_least(g, 2 * ell + 2))
    throw std::invalid_argument("girth must be at least 2*ell+2 = " + std::to_string(2 * ell + 2));

  Theorem64Result r;
  r.alpha_input = g.average_degree();
  r.p = p ? *p : eps / (8.0 * r.alpha_input);
  r.ball_resistance = ball_resistances(g, ell);

  SinkRooting sampled = p_rooted(g, r.p, seed);
  r.sinks = sampled.sinks;
  r.sink_edges = sampled.added_edges;
  r.sampled_resistance = root_resistances(sampled.rooted);

  Multigraph repaired = sampled.rooted.graph();
  const Vertex root = sampled.rooted.root();
  for (Vertex x = 0; x < n; ++x) {
    if (r.sampled_resistance[x] > (1.0 + eps) * r.ball_resistance[x]) {
      r.repaired.push_back(x);
      const std::uint64_t d = g.degree(x);
      repaired.add_edge(x, root, static_cast<Multiplicity>(d));
      r.repair_edges += d;
    }
  }
  r.rooted = RootedGraph(std::move(repaired), root);
  if (r.repaired.empty()) {
    r.root_resistance = r.sampled_resistance;
    double total = 0.0;
    for (Vertex x = 0; x < n; ++x) total += r.root_resistance[x];
    r.B = total / static_cast<double>(n);
  } else {
    const RootedSummary s = finite(rooted_summary(r.rooted));
    r.root_resistance = s.per_vertex;
    r.B = s.B;
  }
  r.alpha_output = r.rooted.average_degree();
  double ball_sum = 0.0;
  for (Vertex x = 0; x < n; ++x) {
    ball_sum += r.ball_resistance[x];
    r.max_ratio = std::max(r.max_ratio, r.root_resistance[x] / r.ball_resistance[x]);
  }
  r.ball_average = ball_sum / static_cast<double>(n);
  if (r.max_ratio > (1.0 + eps) * (1.0 + 1e-9))
    throw std::logic_error("rooting certificate violated: max ratio " + std::to_string(r.max_ratio));
  return r;
}

RootedGraph rooted_union(std::span<const RootedGraph> parts, std::size_t extra_leaves) {
  if (parts.empty()) throw std::invalid_argument("rooted union needs at least one part");
  std::size_t total = 1 + extra_leaves;
  for (const auto& part : parts) total += part.num_nonroot();
  Multigraph out(total);
  Vertex next = 1;
  for (const auto& part : parts) {
    std::vector<Vertex> map(part.graph().num_vertices());
    for (Vertex v = 0; v < map.size(); ++v) map[v] = v == part.root() ? 0 : next++;
    for (const auto& [uv, k] : part.graph().pairs()) out.add_edge(map[uv.first], map[uv.second], k);
  }
  for (std::size_t i = 0; i < extra_leaves; ++i) out.add_edge(0, next++);
  return RootedGraph(std::move(out), 0);
}

RootedGraph add_root_leaves(const RootedGraph& g, std::size_t leaves) {
  Multigraph out = g.graph();
  for (std::size_t i = 0; i < leaves; ++i) out.add_edge(g.root(), out.add_vertex());
  return RootedGraph(std::move(out), g.root());
}

std::size_t leaves_for_average_degree(const RootedGraph& g, double target) {
  if (!(target > 2.0)) throw std::invalid_argument("target average degree must exceed 2");
  const double m = static_cast<double>(g.num_edges());
  const double n = static_cast<double>(g.num_nonroot());
  const double need = (2.0 * m - target * n) / (target - 2.0);
  if (need <= 0.0) return 0;
  auto leaves = static_cast<std::size_t>(std::ceil(need - 1e-9));
  while (2.0 * (m + leaves) > target * (n + leaves) * (1.0 + 1e-12)) ++leaves;
  return leaves;
}

}  // namespace resnet
