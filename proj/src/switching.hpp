#ifndef RESNET_SRC_SWITCHING_HPP
#define RESNET_SRC_SWITCHING_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "resnet/multigraph.hpp"

namespace resnet::detail {

/// Edge list of a configuration-model sample; loops and repeated pairs allowed.
struct EdgeSoup {
  std::size_t n = 0;
  std::vector<VertexPair> edges;
  std::vector<bool> switchable;  // fixed edges are never moved
  /// When true, switchable edges are stored (side-0 end, side-1 end) and a switch
  /// (a1,b1),(a2,b2) -> (a1,b2),(a2,b1) keeps the bipartition.
  bool bipartite = false;
};

struct SwitchOutcome {
  Multigraph graph;
  std::uint64_t accepted = 0;
  std::uint64_t proposals = 0;
  bool success = false;
  std::size_t remaining_bad = 0;
};

/// Degree-preserving double-edge switches until no switchable edge is a loop,
/// a repeated pair, or lies on a cycle shorter than g_min. A switch is accepted
/// only when both new edges avoid such cycles, so the bad set only shrinks.
/// Gives up after max_attempts consecutive rejected proposals for one edge.
SwitchOutcome remove_short_cycles(EdgeSoup soup, std::size_t g_min, std::mt19937_64& rng,
                                  std::uint64_t max_attempts);

}  // namespace resnet::detail

#endif  // RESNET_SRC_SWITCHING_HPP
