#include "resnet/multigraph.hpp"

#include <algorithm>
#include <sstream>

namespace resnet {

namespace {

using Cells = std::vector<std::vector<Vertex>>;

struct Search {
  const Multigraph& g;
  std::size_t n;
  std::vector<Multiplicity> adj;  // dense n*n multiplicity matrix
  std::vector<std::uint8_t> best;
  std::vector<Vertex> best_order;
  bool have_best = false;

  explicit Search(const Multigraph& graph) : g(graph), n(graph.num_vertices()), adj(n * n, 0) {
    for (const auto& [uv, k] : g.pairs()) {
      adj[uv.first * n + uv.second] = k;
      adj[uv.second * n + uv.first] = k;
    }
  }

  // Splits cells by the multiset of multiplicities each vertex sends into every
  // cell, until stable. Sub-cells are ordered by signature so the result does
  // not depend on the input labelling.
  void refine(Cells& cells) const {
    std::vector<std::size_t> cell_of(n);
    for (;;) {
      for (std::size_t c = 0; c < cells.size(); ++c)
        for (Vertex v : cells[c]) cell_of[v] = c;
      Cells next;
      next.reserve(n);
      for (const auto& cell : cells) {
        if (cell.size() == 1) {
          next.push_back(cell);
          continue;
        }
        std::vector<std::pair<std::vector<Multiplicity>, Vertex>> sig;
        sig.reserve(cell.size());
        for (Vertex v : cell) {
          std::vector<std::vector<Multiplicity>> per_cell(cells.size());
          for (Vertex w = 0; w < n; ++w)
            if (adj[v * n + w] != 0) per_cell[cell_of[w]].push_back(adj[v * n + w]);
          std::vector<Multiplicity> flat;
          for (auto& ms : per_cell) {
            std::sort(ms.begin(), ms.end());
            flat.push_back(static_cast<Multiplicity>(ms.size()));
            flat.insert(flat.end(), ms.begin(), ms.end());
          }
          sig.emplace_back(std::move(flat), v);
        }
        std::stable_sort(sig.begin(), sig.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<Vertex> current{sig[0].second};
        for (std::size_t i = 1; i < sig.size(); ++i) {
          if (sig[i].first != sig[i - 1].first) {
            next.push_back(std::move(current));
            current.clear();
          }
          current.push_back(sig[i].second);
        }
        next.push_back(std::move(current));
      }
      const bool stable = next.size() == cells.size();
      cells = std::move(next);
      if (stable) return;
    }
  }

  void leaf(const Cells& cells) {
    std::vector<Vertex> order;
    order.reserve(n);
    for (const auto& cell : cells) order.push_back(cell.front());
    std::vector<std::uint8_t> code;
    code.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        code.push_back(static_cast<std::uint8_t>(std::min<Multiplicity>(adj[order[i] * n + order[j]], 255)));
    if (!have_best || code < best) {
      best = std::move(code);
      best_order = std::move(order);
      have_best = true;
    }
  }

  void run(Cells cells) {
    refine(cells);
    auto target = std::find_if(cells.begin(), cells.end(), [](const auto& c) { return c.size() > 1; });
    if (target == cells.end()) {
      leaf(cells);
      return;
    }
    const std::size_t idx = static_cast<std::size_t>(target - cells.begin());
    const std::vector<Vertex> members = *target;
    for (Vertex v : members) {
      Cells child;
      child.reserve(cells.size() + 1);
      child.insert(child.end(), cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(idx));
      child.push_back({v});
      std::vector<Vertex> rest;
      for (Vertex w : members)
        if (w != v) rest.push_back(w);
      child.push_back(std::move(rest));
      child.insert(child.end(), cells.begin() + static_cast<std::ptrdiff_t>(idx) + 1, cells.end());
      run(std::move(child));
    }
  }
};

}  // namespace

std::string CanonicalLabel::key() const {
  std::ostringstream out;
  out << n << ':';
  static const char* hex = "0123456789abcdef";
  for (std::uint8_t b : upper) out << hex[b >> 4] << hex[b & 15];
  return out.str();
}

CanonicalLabel canonical_form(const Multigraph& g, std::optional<Vertex> fixed) {
  const std::size_t n = g.num_vertices();
  if (n > kCanonicalLimit)
    throw std::invalid_argument("canonical form limited to " + std::to_string(kCanonicalLimit) +
                                " vertices, got " + std::to_string(n));
  CanonicalLabel label;
  label.n = n;
  if (n == 0) return label;
  Cells cells;
  if (fixed) {
    if (*fixed >= n) throw InvalidVertex(*fixed);
    cells.push_back({*fixed});
  }
  std::vector<Vertex> rest;
  for (Vertex v = 0; v < n; ++v)
    if (!fixed || v != *fixed) rest.push_back(v);
  if (!rest.empty()) cells.push_back(std::move(rest));

  Search search(g);
  search.run(std::move(cells));
  label.upper = std::move(search.best);
  label.order = std::move(search.best_order);
  return label;
}

Multigraph from_canonical(const CanonicalLabel& label) {
  Multigraph g(label.n);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < label.n; ++i)
    for (std::size_t j = i + 1; j < label.n; ++j, ++idx)
      if (idx < label.upper.size() && label.upper[idx] != 0) g.add_edge(i, j, label.upper[idx]);
  return g;
}

}  // namespace resnet
