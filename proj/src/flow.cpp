#include "resnet/flow.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "linalg.hpp"

namespace resnet {

double CurrentFlow::net_outflow(Vertex v) const {
  double net = 0.0;
  for (const FlowEdge& e : edges) {
    if (e.u == v) net += e.current;
    if (e.v == v) net -= e.current;
  }
  return net;
}

namespace {

std::vector<FlowEdge> edges_with_currents(const Multigraph& g, const std::vector<double>& potential) {
  std::vector<FlowEdge> edges;
  edges.reserve(g.num_edges());
  for (const auto& [uv, k] : g.pairs())
    for (Multiplicity c = 0; c < k; ++c)
      edges.push_back({uv.first, uv.second, c, potential[uv.first] - potential[uv.second]});
  return edges;
}

}  // namespace

OrDisconnected<CurrentFlow> unit_current_flow(const Multigraph& g, Vertex x, Vertex y) {
  const std::size_t n = g.num_vertices();
  if (x >= n) throw InvalidVertex(x);
  if (y >= n) throw InvalidVertex(y);
  if (x == y) throw std::invalid_argument("unit flow needs distinct endpoints");
  const auto dist = bfs_distances(g, y);
  if (dist[x] == SIZE_MAX) return Disconnected{count_components(g)};

  // Vertices outside y's component are grounded through a zero-current tie so
  // the reduced system stays nonsingular.
  Multigraph tied = g;
  for (Vertex v = 0; v < n; ++v)
    if (dist[v] == SIZE_MAX) tied.add_edge(v, y);
  detail::GroundedSolver solver(detail::laplacian(tied), y);
  Eigen::VectorXd inj = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  inj[static_cast<Eigen::Index>(x)] = 1.0;
  const Eigen::VectorXd pot = solver.potentials(inj);

  CurrentFlow f;
  f.n_vertices = n;
  f.injection = {{x, 1.0}, {y, -1.0}};
  f.potential.assign(pot.data(), pot.data() + pot.size());
  f.edges = edges_with_currents(g, f.potential);
  return f;
}

CurrentFlow zero_flow(const Multigraph& g) {
  CurrentFlow f;
  f.n_vertices = g.num_vertices();
  f.potential.assign(g.num_vertices(), 0.0);
  f.edges = edges_with_currents(g, f.potential);
  return f;
}

CurrentFlow superpose(const CurrentFlow& a, const CurrentFlow& b) {
  if (a.n_vertices != b.n_vertices || a.edges.size() != b.edges.size())
    throw std::invalid_argument("superpose: flows are on different graphs");
  CurrentFlow out = a;
  for (std::size_t i = 0; i < a.edges.size(); ++i) {
    const FlowEdge& e = b.edges[i];
    if (e.u != a.edges[i].u || e.v != a.edges[i].v || e.copy != a.edges[i].copy)
      throw std::invalid_argument("superpose: flows are on different graphs");
    out.edges[i].current += e.current;
  }
  for (const auto& [v, c] : b.injection) out.injection[v] += c;
  std::erase_if(out.injection, [](const auto& kv) { return std::abs(kv.second) < 1e-15; });
  for (std::size_t v = 0; v < out.potential.size(); ++v) out.potential[v] += b.potential[v];
  return out;
}

double flow_power(const CurrentFlow& f) {
  double p = 0.0;
  for (const FlowEdge& e : f.edges) p += e.current * e.current;
  return p;
}

double kcl_residual(const CurrentFlow& f) {
  std::vector<double> net(f.n_vertices, 0.0);
  for (const FlowEdge& e : f.edges) {
    net[e.u] += e.current;
    net[e.v] -= e.current;
  }
  for (const auto& [v, c] : f.injection) net[v] -= c;
  double worst = 0.0;
  for (double r : net) worst = std::max(worst, std::abs(r));
  return worst;
}

double ohm_residual(const CurrentFlow& f) {
  double worst = 0.0;
  for (const FlowEdge& e : f.edges)
    worst = std::max(worst, std::abs(e.current - (f.potential[e.u] - f.potential[e.v])));
  return worst;
}

void write_flow_csv(std::ostream& out, const CurrentFlow& f) {
  out << "u,v,copy,current\n";
  for (const FlowEdge& e : f.edges)
    out << e.u << ',' << e.v << ',' << e.copy << ',' << format_number(e.current) << '\n';
}

}  // namespace resnet
