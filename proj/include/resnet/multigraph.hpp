#ifndef RESNET_MULTIGRAPH_HPP
#define RESNET_MULTIGRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace resnet {

using Vertex = std::size_t;
using Multiplicity = std::uint32_t;
using VertexPair = std::pair<Vertex, Vertex>;

/// Thrown for vertex ids outside [0, n).
class InvalidVertex : public std::out_of_range {
public:
  explicit InvalidVertex(Vertex v);
};

/// Undirected loopless multigraph of unit resistors.
///
/// Pairs are stored normalized (u < v) with a positive multiplicity; absent
/// pairs have multiplicity 0. Edges are added while a graph is being built and
/// the value is treated as immutable once handed to the analysis routines.
class Multigraph {
public:
  Multigraph() = default;
  explicit Multigraph(std::size_t n_vertices);

  std::size_t num_vertices() const { return adjacency_.size(); }
  /// Edge count m, counting multiplicity.
  std::uint64_t num_edges() const { return num_edges_; }
  /// 2m / n; zero for the empty graph.
  double average_degree() const;

  Vertex add_vertex();
  /// Adds k parallel copies of uv. Throws on self-loops and bad ids.
  void add_edge(Vertex u, Vertex v, Multiplicity k = 1);

  Multiplicity multiplicity(Vertex u, Vertex v) const;
  std::uint64_t degree(Vertex v) const;
  /// Distinct neighbours of v, in insertion order.
  const std::vector<Vertex>& neighbors(Vertex v) const;
  /// All pairs with positive multiplicity, sorted by (u, v) with u < v.
  const std::map<VertexPair, Multiplicity>& pairs() const { return mult_; }

  friend bool operator==(const Multigraph& a, const Multigraph& b) {
    return a.adjacency_.size() == b.adjacency_.size() && a.mult_ == b.mult_;
  }

private:
  void check_vertex(Vertex v) const;

  std::map<VertexPair, Multiplicity> mult_;
  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<std::uint64_t> degree_;
  std::uint64_t num_edges_ = 0;
};

inline VertexPair normalized(Vertex u, Vertex v) {
  return u < v ? VertexPair{u, v} : VertexPair{v, u};
}

/// A multigraph with a distinguished root vertex.
class RootedGraph {
public:
  RootedGraph() = default;
  RootedGraph(Multigraph graph, Vertex root);

  const Multigraph& graph() const { return graph_; }
  Vertex root() const { return root_; }
  /// Number of non-root vertices (the n of the rooted model).
  std::size_t num_nonroot() const { return graph_.num_vertices() - 1; }
  std::uint64_t num_edges() const { return graph_.num_edges(); }
  /// 2m / (number of non-root vertices).
  double average_degree() const;
  /// Number of edges joining x to the root.
  Multiplicity root_edges(Vertex x) const { return graph_.multiplicity(x, root_); }

  friend bool operator==(const RootedGraph&, const RootedGraph&) = default;

private:
  Multigraph graph_;
  Vertex root_ = 0;
};

/// Complete graph with nonnegative real conductances (siemens) on pairs.
class WeightedNetwork {
public:
  explicit WeightedNetwork(std::size_t n_vertices) : n_(n_vertices) {}

  std::size_t num_vertices() const { return n_; }
  /// Sets the conductance of uv; a zero value removes the pair.
  void set_conductance(Vertex u, Vertex v, double siemens);
  double conductance(Vertex u, Vertex v) const;
  double total_conductance() const;
  const std::map<VertexPair, double>& pairs() const { return conductance_; }

private:
  std::size_t n_;
  std::map<VertexPair, double> conductance_;
};

std::uint64_t degree(const Multigraph& g, Vertex v);

/// Length of the shortest cycle; a pair of multiplicity >= 2 is a 2-cycle.
/// Returns nullopt for forests.
std::optional<std::size_t> girth(const Multigraph& g);

/// True when every cycle has length >= k. Cheaper than girth() for small k.
bool girth_at_least(const Multigraph& g, std::size_t k);

bool is_connected(const Multigraph& g);
std::size_t count_components(const Multigraph& g);

/// Breadth-first distances from source; unreachable vertices get SIZE_MAX.
std::vector<std::size_t> bfs_distances(const Multigraph& g, Vertex source);

/// Graph with vertex v renamed to perm[v].
Multigraph relabel(const Multigraph& g, std::span<const Vertex> perm);

/// Contracts one edge incident with x, deletes the loops this creates and
/// attaches the freed vertex slot to the root as a new leaf (G+/x).
///
/// The contracted edge goes to the neighbour with the smallest entry of
/// root_resistance when that vector is given (indexed by vertex), otherwise to
/// the lowest-indexed neighbour. Vertex count is preserved and the edge count
/// never increases.
RootedGraph contract_edge_add_leaf(const RootedGraph& g, Vertex x,
                                   std::span<const double> root_resistance = {});

/// Number of degree-1 non-root vertices, split by whether they hang off the root.
struct LeafCounts {
  std::size_t on_root = 0;
  std::size_t elsewhere = 0;
};
LeafCounts count_leaves(const RootedGraph& g);

/// Canonical label of a small multigraph: two graphs get equal labels iff
/// they are isomorphic. With `fixed` set, that vertex is kept distinguished
/// (rooted isomorphism).
struct CanonicalLabel {
  std::size_t n = 0;
  std::vector<std::uint8_t> upper;  // row-major strict upper triangle
  std::vector<Vertex> order;        // order[i] = original vertex placed at i

  friend bool operator==(const CanonicalLabel& a, const CanonicalLabel& b) {
    return a.n == b.n && a.upper == b.upper;
  }
  std::string key() const;
};

inline constexpr std::size_t kCanonicalLimit = 9;

CanonicalLabel canonical_form(const Multigraph& g, std::optional<Vertex> fixed = std::nullopt);
Multigraph from_canonical(const CanonicalLabel& label);

}  // namespace resnet

#endif  // RESNET_MULTIGRAPH_HPP
