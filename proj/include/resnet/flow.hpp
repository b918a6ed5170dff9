#ifndef RESNET_FLOW_HPP
#define RESNET_FLOW_HPP

#include <iosfwd>
#include <map>
#include <vector>

#include "resnet/multigraph.hpp"
#include "resnet/resistance.hpp"

namespace resnet {

/// Current on one copy of a parallel pair, oriented from u to v (u < v).
struct FlowEdge {
  Vertex u = 0;
  Vertex v = 0;
  Multiplicity copy = 0;
  double current = 0.0;
};

struct CurrentFlow {
  std::size_t n_vertices = 0;
  std::map<Vertex, double> injection;  // source-sinks; values sum to zero
  std::vector<FlowEdge> edges;         // sorted by (u, v, copy)
  std::vector<double> potential;

  /// Net current leaving v through the edges.
  double net_outflow(Vertex v) const;
};

/// Current flow with +1 injected at x and -1 at y; potentials are zero at y.
/// Vertices outside the x-y component carry no current and zero potential.
OrDisconnected<CurrentFlow> unit_current_flow(const Multigraph& g, Vertex x, Vertex y);

/// The flow with no injections on g.
CurrentFlow zero_flow(const Multigraph& g);

/// Edgewise sum. Throws std::invalid_argument when the flows live on different graphs.
CurrentFlow superpose(const CurrentFlow& a, const CurrentFlow& b);

/// Sum of squared currents over every unit edge.
double flow_power(const CurrentFlow& f);

/// Largest violation of current conservation at any vertex.
double kcl_residual(const CurrentFlow& f);
/// Largest |I_uv - (V_u - V_v)| over the edges.
double ohm_residual(const CurrentFlow& f);

/// CSV with header `u,v,copy,current`.
void write_flow_csv(std::ostream& out, const CurrentFlow& f);

}  // namespace resnet

#endif  // RESNET_FLOW_HPP
