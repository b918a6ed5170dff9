#ifndef RESNET_SEARCH_HPP
#define RESNET_SEARCH_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "resnet/multigraph.hpp"

namespace resnet {

enum class Objective { A, B, B_queen_bee };

std::string to_string(Objective o);
/// Accepts "A", "B" and "B_queen_bee".
Objective parse_objective(const std::string& text);

inline constexpr double kTieTolerance = 1e-9;
inline constexpr std::size_t kMaxSearchVertices = 8;
inline constexpr std::uint64_t kMaxSearchEdges = 12;

struct SearchResult {
  Objective objective = Objective::A;
  std::size_t n = 0;    // vertices for A, non-root vertices for B
  std::uint64_t m = 0;  // edges, root edges included
  double best_value = 0.0;
  /// Canonical representatives; for rooted objectives the root is vertex 0.
  std::vector<Multigraph> witnesses;
  std::uint64_t explored = 0;   // isomorphism classes evaluated
  std::uint64_t labelled = 0;   // connected labelled graphs visited
  bool found = false;           // false when no admissible graph exists
};

struct SearchOptions {
  std::uint64_t mult_cap = 0;  // 0 means m
  bool dedupe = true;
  /// Called from worker threads with the running total of explored classes.
  std::function<void(std::uint64_t)> progress;
};

/// Exhaustive minimum of the objective over connected multigraphs with exactly
/// m edges. Rooted objectives use n + 1 vertices with the root at vertex 0;
/// B_queen_bee also requires a root edge at every non-root vertex.
SearchResult enumerate_optimal(Objective objective, std::size_t n, std::uint64_t m,
                               const SearchOptions& options = {});

/// Calls visit on every connected multigraph on n vertices with m edges and
/// multiplicities <= mult_cap. With dedupe, one graph per isomorphism class
/// (rooted at `fixed` when given). Single-threaded, in a fixed order.
void for_each_connected_multigraph(std::size_t n, std::uint64_t m, std::uint64_t mult_cap, bool dedupe,
                                   const std::function<void(const Multigraph&)>& visit,
                                   std::optional<Vertex> fixed = std::nullopt);

/// Applies the contract-and-leaf move with the largest drop in R_tot until no
/// move lowers R_tot or max_steps moves were made. Ties go to the lowest vertex.
RootedGraph local_improve(const RootedGraph& g, std::size_t max_steps);

struct ClaimCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Star optimality (m = n-1, n <= 8), the unicyclic optimum being a cycle
/// with leaves on one vertex (n <= 8), the rooted unicyclic optimum
/// 1 - 2/(3n), the claimed 3-cycle/4-cycle crossover at n = 13, and
/// Queen-Bee optimality of the star of triangles for n_nonroot <= 6, m <= 9.
std::vector<ClaimCheck> verify_small_claims();

void to_json(nlohmann::json& j, const SearchResult& r);

}  // namespace resnet

#endif  // RESNET_SEARCH_HPP
