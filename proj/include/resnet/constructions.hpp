#ifndef RESNET_CONSTRUCTIONS_HPP
#define RESNET_CONSTRUCTIONS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "resnet/multigraph.hpp"

namespace resnet {

/// A random high-girth graph could not be produced within the attempt budget.
class GenerationFailed : public std::runtime_error {
public:
  GenerationFailed(const std::string& what, std::uint64_t attempts, std::size_t remaining_bad)
      : std::runtime_error(what), attempts_(attempts), remaining_bad_(remaining_bad) {}
  std::uint64_t attempts() const { return attempts_; }
  /// Edges still on a short cycle when the generator gave up.
  std::size_t remaining_bad() const { return remaining_bad_; }

private:
  std::uint64_t attempts_;
  std::size_t remaining_bad_;
};

inline constexpr std::uint64_t kDefaultMaxAttempts = 10000;

Multigraph build_path(std::size_t n);
Multigraph build_cycle(std::size_t n);
Multigraph build_complete(std::size_t n);

/// Vertex 0 joined to each of 1..n-1 by k parallel edges.
Multigraph build_star(std::size_t n, Multiplicity k = 1);

/// Star rooted at its centre (vertex 0).
RootedGraph build_rooted_star(std::size_t n_nonroot, Multiplicity k = 1);

/// m - n triangles through the root (vertex 0) plus leaves on the root.
/// Requires n <= m <= n + n/2.
RootedGraph build_star_triangles_leaves(std::size_t n_nonroot, std::uint64_t m);

/// Cycle on vertices 0..cycle_len-1 with the remaining vertices as leaves on vertex 0.
Multigraph build_cycle_with_leaves(std::size_t n, std::size_t cycle_len);

/// Simple d-regular graph of girth >= g_min: configuration model followed by
/// degree-preserving switches that remove loops, repeated pairs and short cycles.
Multigraph build_random_regular_girth(std::size_t n, std::size_t d, std::size_t g_min, std::uint64_t seed,
                                      std::uint64_t max_attempts = kDefaultMaxAttempts);

/// Bipartite graph with 3n/7 degree-4 vertices (ids 0..3n/7-1) and 4n/7
/// degree-3 vertices, girth >= g_min.
Multigraph build_biregular_bipartite(std::size_t n, std::uint64_t seed, std::size_t g_min,
                                     std::uint64_t max_attempts = kDefaultMaxAttempts);

/// 4-regular bipartite base with n_base/2 vertices per side in which every
/// vertex of the second side is split into two adjacent degree-3 vertices,
/// each keeping two of the four base neighbours. Degree-4 vertices are
/// 0..n_base/2-1; split pairs are (n_base/2 + 2i, n_base/2 + 2i + 1).
/// Average degree 10/3, girth >= g_min.
Multigraph build_split_4regular(std::size_t n_base, std::uint64_t seed, std::size_t g_min,
                                std::uint64_t max_attempts = kDefaultMaxAttempts);

/// Radius-`depth` ball around a vertex, relabelled so the centre is 0.
struct TreeBall {
  Multigraph tree;
  Vertex center = 0;
  std::size_t depth = 0;
  std::vector<std::size_t> level;  // distance from the centre, per tree vertex
};

/// Induced ball of radius `depth` around x. Throws std::domain_error when it contains a cycle.
TreeBall extract_ball(const Multigraph& g, Vertex x, std::size_t depth);

/// Ball of radius `depth` in the infinite d-regular tree.
TreeBall regular_tree_ball(std::size_t d, std::size_t depth);

/// R(x,T): resistance from the centre to the depth-level vertices identified
/// together. Throws std::domain_error when the ball has no vertex at full depth.
double tree_resistance(const TreeBall& ball);

/// R(x,T_x) for every vertex, without materializing the balls.
std::vector<double> ball_resistances(const Multigraph& g, std::size_t depth);

struct GoldenRecursion {
  double x = 0.0;
  double y = 0.0;
  double r3 = 0.0;   // resistance to infinity from a degree-3 vertex
  double r4 = 0.0;   // from a degree-4 vertex
  double avg = 0.0;  // (2 r3 + r4) / 3
  std::size_t iterations = 0;
};

/// Fixed point of x = 1 + y/3, y = 1 + 1/(1/x + 1/(1 + x/2)) by iteration from (1, 1).
GoldenRecursion golden_recursion(double tolerance = 1e-12);

struct ConstructionSpec {
  std::string family;
  std::map<std::string, std::string> params;

  std::uint64_t count(const std::string& key) const;
  std::uint64_t count_or(const std::string& key, std::uint64_t fallback) const;
};

/// Parses `family=split_4regular n_base=600 g_min=8 seed=42`.
ConstructionSpec parse_construction_spec(const std::string& text);

struct Construction {
  Multigraph graph;
  std::optional<Vertex> root;
};

/// Builds any family: star, multi_star, star_triangles_leaves, cycle_with_leaves,
/// random_regular, biregular_bipartite, split_4regular, rooted_union.
Construction build(const ConstructionSpec& spec);

}  // namespace resnet

#endif  // RESNET_CONSTRUCTIONS_HPP
