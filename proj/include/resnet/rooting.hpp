#ifndef RESNET_ROOTING_HPP
#define RESNET_ROOTING_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "resnet/multigraph.hpp"
#include "resnet/resistance.hpp"

namespace resnet {

/// Rooted graph obtained by appending a root (vertex n) to an unrooted graph.
struct SinkRooting {
  RootedGraph rooted;
  std::vector<Vertex> sinks;
  std::uint64_t added_edges = 0;
};

/// Random p-rooted graph: each vertex independently becomes a sink with
/// probability p and receives d(x) - 1 parallel edges to a new root.
SinkRooting p_rooted(const Multigraph& g, double p, std::uint64_t seed);

/// G_S: a new root joined once to every element of the multiset S.
RootedGraph sink_graph(const Multigraph& g, std::span<const Vertex> sinks);

/// Upper bound on E B(G_S) for |S| = s: A'/2 + A'/(2s) + 1/s.
double sink_rooting_bound(double a_prime, std::size_t s);

struct SinkSampling {
  RootedGraph best;
  double best_B = 0.0;
  double mean_B = 0.0;
  double stderr_B = 0.0;
  double bound = 0.0;  // sink_rooting_bound(A'(G), s)
  std::size_t trials = 0;
};

/// Samples `trials` multisets S of size s (sets when with_replacement is false)
/// and keeps the G_S of smallest B.
SinkSampling root_via_sinks(const Multigraph& g, std::size_t s, std::size_t trials, std::uint64_t seed,
                            bool with_replacement = true);

struct Theorem64Result {
  RootedGraph rooted;                  // G'
  double p = 0.0;
  std::vector<double> ball_resistance;  // R(x, T_x)
  std::vector<double> sampled_resistance;  // R to the root in the p-rooted graph (inf if cut off)
  std::vector<double> root_resistance;  // R to the root in G'
  std::vector<Vertex> sinks;
  std::vector<Vertex> repaired;  // violators given d(x) extra root edges
  std::uint64_t sink_edges = 0;
  std::uint64_t repair_edges = 0;
  double alpha_input = 0.0;
  double alpha_output = 0.0;  // 2 e(G') / n
  double max_ratio = 0.0;     // max over x of R_x(G') / R(x, T_x)
  double ball_average = 0.0;
  double B = 0.0;
};

/// Roots g so that every vertex satisfies R_x(G') <= (1 + eps) R(x, T_x):
/// sample a p-rooted graph, then give each violating vertex d(x) root edges.
/// p defaults to eps / (8 alpha). Requires girth >= 2 ell + 2.
Theorem64Result theorem64_rooting(const Multigraph& g, std::size_t ell, double eps,
                                  std::optional<double> p, std::uint64_t seed);

/// Copies glued at a common root (vertex 0) plus extra leaves on the root.
RootedGraph rooted_union(std::span<const RootedGraph> parts, std::size_t extra_leaves);

/// g with `leaves` new vertices hanging off the root.
RootedGraph add_root_leaves(const RootedGraph& g, std::size_t leaves);

/// Fewest root leaves that bring 2m/n down to at most target (target > 2).
std::size_t leaves_for_average_degree(const RootedGraph& g, double target);

/// Resistance to the root per vertex; vertices cut off from the root get infinity.
std::vector<double> root_resistances(const RootedGraph& g);

}  // namespace resnet

#endif  // RESNET_ROOTING_HPP
