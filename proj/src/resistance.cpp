#include "resnet/resistance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <ostream>

#include <Eigen/Eigenvalues>

#include "linalg.hpp"

namespace resnet {

namespace {

// Component label per vertex for the adjacency lists of g.
std::vector<std::size_t> component_labels(std::size_t n, const std::vector<std::vector<Vertex>>& adj,
                                          std::size_t& count) {
  std::vector<std::size_t> label(n, SIZE_MAX);
  count = 0;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n; ++s) {
    if (label[s] != SIZE_MAX) continue;
    label[s] = count;
    stack.push_back(s);
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      for (Vertex w : adj[u])
        if (label[w] == SIZE_MAX) {
          label[w] = count;
          stack.push_back(w);
        }
    }
    ++count;
  }
  return label;
}

std::vector<std::vector<Vertex>> adjacency(const Multigraph& g) {
  std::vector<std::vector<Vertex>> adj(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) adj[v] = g.neighbors(v);
  return adj;
}

std::vector<std::vector<Vertex>> adjacency(const WeightedNetwork& w) {
  std::vector<std::vector<Vertex>> adj(w.num_vertices());
  for (const auto& [uv, c] : w.pairs()) {
    adj[uv.first].push_back(uv.second);
    adj[uv.second].push_back(uv.first);
  }
  return adj;
}

// Restriction of a network to the vertices carrying `label`; index[v] is the new id.
template <class Network>
Network restrict_to(const Network& net, const std::vector<std::size_t>& comp, std::size_t label,
                    std::vector<Vertex>& index) {
  index.assign(comp.size(), SIZE_MAX);
  std::size_t k = 0;
  for (Vertex v = 0; v < comp.size(); ++v)
    if (comp[v] == label) index[v] = k++;
  Network out(k);
  for (const auto& [uv, value] : net.pairs()) {
    if (comp[uv.first] != label || comp[uv.second] != label) continue;
    if constexpr (std::is_same_v<Network, Multigraph>)
      out.add_edge(index[uv.first], index[uv.second], value);
    else
      out.set_conductance(index[uv.first], index[uv.second], value);
  }
  return out;
}

template <class Network>
OrDisconnected<double> pair_on_component(const Network& net, Vertex x, Vertex y) {
  const std::size_t n = net.num_vertices();
  if (x >= n) throw InvalidVertex(x);
  if (y >= n) throw InvalidVertex(y);
  if (x == y) return 0.0;
  std::size_t count = 0;
  const auto comp = component_labels(n, adjacency(net), count);
  if (comp[x] != comp[y]) return Disconnected{count};

  auto solve = [](const Network& h, Vertex a, Vertex b) {
    const auto lap = detail::laplacian(h);
    detail::GroundedSolver forward(lap, b);
    Eigen::VectorXd inj = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(h.num_vertices()));
    inj[static_cast<Eigen::Index>(a)] = 1.0;
    const double rab = forward.potentials(inj)[static_cast<Eigen::Index>(a)];
    detail::GroundedSolver backward(lap, a);
    inj.setZero();
    inj[static_cast<Eigen::Index>(b)] = 1.0;
    const double rba = backward.potentials(inj)[static_cast<Eigen::Index>(b)];
    if (std::abs(rab - rba) >= 1e-8 * std::max(1.0, std::abs(rab)))
      throw std::runtime_error("asymmetric resistance solve: " + std::to_string(rab) + " vs " +
                               std::to_string(rba));
    return 0.5 * (rab + rba);
  };
  if (count == 1) return solve(net, x, y);
  std::vector<Vertex> index;
  const Network part = restrict_to(net, comp, comp[x], index);
  return solve(part, index[x], index[y]);
}

struct PairTotals {
  double total = 0.0;
  double max_pair = 0.0;
};

// Sum and maximum of R_xy over unordered pairs of a connected network.
PairTotals pair_totals(const detail::SparseMatrix& lap) {
  const auto n = static_cast<std::size_t>(lap.rows());
  PairTotals out;
  if (n < 2) return out;
  const Vertex ground = n - 1;
  const auto dim = static_cast<Eigen::Index>(n - 1);
  if (n - 1 <= detail::kDenseLimit) {
    const Eigen::MatrixXd m = detail::grounded_inverse(lap, ground);
    out.total = static_cast<double>(n) * m.trace() - m.sum();
    for (Eigen::Index j = 0; j < dim; ++j) {
      out.max_pair = std::max(out.max_pair, m(j, j));
      for (Eigen::Index i = 0; i < j; ++i)
        out.max_pair = std::max(out.max_pair, m(i, i) + m(j, j) - 2.0 * m(i, j));
    }
    return out;
  }
  // Column-at-a-time fallback: one pass for the diagonal and sums, one for the maximum.
  detail::GroundedSolver solver(lap, ground);
  std::vector<double> diag(n - 1), colsum(n - 1);
  auto column = [&](std::size_t j) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    e[static_cast<Eigen::Index>(j)] = 1.0;
    return Eigen::VectorXd(solver.potentials(e).head(dim));
  };
  detail::parallel_for(n - 1, [&](std::size_t j) {
    const Eigen::VectorXd c = column(j);
    diag[j] = c[static_cast<Eigen::Index>(j)];
    colsum[j] = c.sum();
  });
  double trace = 0.0, sum = 0.0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    trace += diag[j];
    sum += colsum[j];
  }
  out.total = static_cast<double>(n) * trace - sum;
  std::vector<double> col_max(n - 1, 0.0);
  detail::parallel_for(n - 1, [&](std::size_t j) {
    const Eigen::VectorXd c = column(j);
    double best = diag[j];
    for (std::size_t i = 0; i < j; ++i)
      best = std::max(best, diag[i] + diag[j] - 2.0 * c[static_cast<Eigen::Index>(i)]);
    col_max[j] = best;
  });
  out.max_pair = *std::max_element(col_max.begin(), col_max.end());
  return out;
}

}  // namespace

OrDisconnected<double> pair_resistance(const Multigraph& g, Vertex x, Vertex y) {
  return pair_on_component(g, x, y);
}

OrDisconnected<double> weighted_pair_resistance(const WeightedNetwork& w, Vertex x, Vertex y) {
  return pair_on_component(w, x, y);
}

OrDisconnected<ResistanceSummary> resistance_summary(const Multigraph& g) {
  const std::size_t n = g.num_vertices();
  if (n == 0) throw std::invalid_argument("resistance summary of the empty graph");
  if (const std::size_t c = count_components(g); c > 1) return Disconnected{c};
  ResistanceSummary s;
  s.n = n;
  s.m = g.num_edges();
  s.alpha = g.average_degree();
  if (n == 1) return s;
  const PairTotals t = pair_totals(detail::laplacian(g));
  const double nd = static_cast<double>(n);
  s.pairwise_total = t.total;
  s.A = t.total / (nd * (nd - 1.0) / 2.0);
  s.A_prime = 2.0 * t.total / (nd * nd);
  s.max_pair_resistance = t.max_pair;
  return s;
}

OrDisconnected<double> weighted_average_resistance(const WeightedNetwork& w) {
  const std::size_t n = w.num_vertices();
  if (n < 2) throw std::invalid_argument("average resistance needs at least two vertices");
  std::size_t count = 0;
  component_labels(n, adjacency(w), count);
  if (count > 1) return Disconnected{count};
  const PairTotals t = pair_totals(detail::laplacian(w));
  const double nd = static_cast<double>(n);
  return t.total / (nd * (nd - 1.0) / 2.0);
}

OrDisconnected<RootedSummary> rooted_summary(const RootedGraph& rg) {
  const Multigraph& g = rg.graph();
  const std::size_t n = g.num_vertices();
  if (const std::size_t c = count_components(g); c > 1) return Disconnected{c};

  // Peel vertices with a single distinct neighbour; their resistance is the
  // neighbour's plus the parallel resistance of the connecting edges.
  std::vector<std::size_t> live(n);
  std::vector<bool> peeled(n, false);
  std::vector<Vertex> parent(n, 0);
  std::vector<Vertex> order;
  std::deque<Vertex> queue;
  for (Vertex v = 0; v < n; ++v) {
    live[v] = g.neighbors(v).size();
    if (v != rg.root() && live[v] == 1) queue.push_back(v);
  }
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    if (peeled[v] || live[v] != 1) continue;
    peeled[v] = true;
    order.push_back(v);
    for (Vertex u : g.neighbors(v))
      if (!peeled[u]) {
        parent[v] = u;
        if (--live[u] == 1 && u != rg.root()) queue.push_back(u);
      }
  }

  std::vector<std::size_t> core_label(n, 1);
  for (Vertex v = 0; v < n; ++v)
    if (peeled[v]) core_label[v] = 0;
  std::vector<Vertex> index;
  const Multigraph core = restrict_to(g, core_label, 1, index);

  RootedSummary s;
  s.n_nonroot = n - 1;
  s.per_vertex.assign(n, 0.0);
  if (core.num_vertices() > 1) {
    const Vertex core_root = index[rg.root()];
    const Eigen::VectorXd diag = detail::grounded_inverse_diagonal(detail::laplacian(core), core_root);
    for (Vertex v = 0; v < n; ++v) {
      if (peeled[v] || v == rg.root()) continue;
      const Vertex c = index[v];
      s.per_vertex[v] = diag[static_cast<Eigen::Index>(c > core_root ? c - 1 : c)];
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    s.per_vertex[*it] = s.per_vertex[parent[*it]] + 1.0 / g.multiplicity(*it, parent[*it]);
  for (double r : s.per_vertex) s.R_tot += r;
  s.B = s.n_nonroot == 0 ? 0.0 : s.R_tot / static_cast<double>(s.n_nonroot);
  return s;
}

std::vector<double> laplacian_spectrum(const Multigraph& g) {
  const std::size_t n = g.num_vertices();
  if (n == 0) return {};
  const Eigen::MatrixXd lap = Eigen::MatrixXd(detail::laplacian(g));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalue computation failed");
  const std::size_t zeros = count_components(g);
  std::vector<double> out;
  for (std::size_t i = zeros; i < n; ++i) out.push_back(solver.eigenvalues()[static_cast<Eigen::Index>(i)]);
  return out;
}

OrDisconnected<double> kirchhoff_index_by_eigenvalues(const Multigraph& g) {
  if (g.num_vertices() == 0) throw std::invalid_argument("empty graph");
  if (const std::size_t c = count_components(g); c > 1) return Disconnected{c};
  double s = 0.0;
  for (double lambda : laplacian_spectrum(g)) s += 1.0 / lambda;
  return static_cast<double>(g.num_vertices()) * s;
}

double round15(double v) {
  if (!std::isfinite(v)) return v;
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 15);
  double out = v;
  std::from_chars(buf, res.ptr, out);
  return out;
}

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, round15(v));
  return std::string(buf, res.ptr);
}

void to_json(nlohmann::json& j, const ResistanceSummary& s) {
  j = nlohmann::json{{"n", s.n},
                     {"m", s.m},
                     {"alpha", round15(s.alpha)},
                     {"pairwise_total", round15(s.pairwise_total)},
                     {"A", round15(s.A)},
                     {"A_prime", round15(s.A_prime)},
                     {"max_pair_resistance", round15(s.max_pair_resistance)}};
}

void to_json(nlohmann::json& j, const RootedSummary& s) {
  std::vector<double> per_vertex;
  per_vertex.reserve(s.per_vertex.size());
  for (double r : s.per_vertex) per_vertex.push_back(round15(r));
  j = nlohmann::json{{"n_nonroot", s.n_nonroot},
                     {"B", round15(s.B)},
                     {"R_tot", round15(s.R_tot)},
                     {"per_vertex", per_vertex}};
}

void write_csv(std::ostream& out, const ResistanceSummary& s) {
  out << "n,m,alpha,pairwise_total,A,A_prime,max_pair_resistance\n"
      << s.n << ',' << s.m << ',' << format_number(s.alpha) << ',' << format_number(s.pairwise_total)
      << ',' << format_number(s.A) << ',' << format_number(s.A_prime) << ','
      << format_number(s.max_pair_resistance) << '\n';
}

void write_csv(std::ostream& out, const RootedSummary& s) {
  out << "n_nonroot,B,R_tot\n"
      << s.n_nonroot << ',' << format_number(s.B) << ',' << format_number(s.R_tot) << '\n';
}

}  // namespace resnet
