#ifndef RESNET_SPANNING_TREES_HPP
#define RESNET_SPANNING_TREES_HPP

#include <cstdint>

#include "resnet/multigraph.hpp"

namespace resnet {

inline constexpr std::size_t kSpanningTreeLimit = 9;

/// Number of spanning trees, parallel copies counted as distinct edges.
std::uint64_t count_spanning_trees(const Multigraph& g);

/// Current through one copy of the pair xy, oriented x -> y, for a unit
/// s -> t flow, by enumerating spanning trees:
/// (N(s,t,x,y) - N(s,t,y,x)) / N.
double current_via_spanning_trees(const Multigraph& g, Vertex s, Vertex t, Vertex x, Vertex y);

/// Effective s-t resistance as the power of the tree-derived currents.
double resistance_via_spanning_trees(const Multigraph& g, Vertex s, Vertex t);

}  // namespace resnet

#endif  // RESNET_SPANNING_TREES_HPP
