#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "doctest.h"
#include "exact_oracle.hpp"
#include "resnet/constructions.hpp"
#include "resnet/edge_list.hpp"
#include "resnet/multigraph.hpp"
#include "resnet/resistance.hpp"

using namespace resnet;

namespace {

Multigraph random_multigraph(std::mt19937_64& rng, std::size_t n, std::size_t m, Multiplicity cap) {
  Multigraph g(n);
  std::uniform_int_distribution<Vertex> pick(0, n - 1);
  m = std::min<std::size_t>(m, cap * n * (n - 1) / 2);
  std::size_t placed = 0;
  while (placed < m) {
    const Vertex u = pick(rng), v = pick(rng);
    if (u == v || g.multiplicity(u, v) >= cap) continue;
    g.add_edge(u, v);
    ++placed;
  }
  return g;
}

}  // namespace

TEST_CASE("degree counts multiplicity") {
  const Multigraph k3 = build_complete(3);
  for (Vertex v = 0; v < 3; ++v) CHECK(degree(k3, v) == 2);
  CHECK(degree(build_star(5), 0) == 4);
  Multigraph dbl(2);
  dbl.add_edge(0, 1, 2);
  CHECK(degree(dbl, 0) == 2);
  CHECK(dbl.num_edges() == 2);
  CHECK(dbl.average_degree() == doctest::Approx(2.0));
  CHECK_THROWS_AS(degree(k3, 3), InvalidVertex);
}

TEST_CASE("self loops and bad ids are rejected") {
  Multigraph g(3);
  CHECK_THROWS_AS(g.add_edge(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(g.add_edge(0, 5), InvalidVertex);
  g.add_edge(2, 0, 3);
  CHECK(g.multiplicity(0, 2) == 3);
  CHECK(g.pairs().begin()->first == VertexPair{0, 2});
}

TEST_CASE("girth") {
  CHECK(girth(build_complete(3)) == 3);
  CHECK_FALSE(girth(build_path(4)).has_value());
  Multigraph dbl(2);
  dbl.add_edge(0, 1, 2);
  CHECK(girth(dbl) == 2);
  CHECK(girth(build_cycle(7)) == 7);
  CHECK(girth_at_least(build_cycle(7), 7));
  CHECK_FALSE(girth_at_least(build_cycle(7), 8));
  CHECK(girth_at_least(build_path(5), 100));
}

TEST_CASE("connectivity") {
  CHECK(is_connected(build_complete(3)));
  Multigraph two(4);
  two.add_edge(0, 1);
  two.add_edge(2, 3);
  CHECK_FALSE(is_connected(two));
  CHECK(count_components(two) == 2);
  CHECK(is_connected(Multigraph(1)));
  const auto d = bfs_distances(two, 0);
  CHECK(d[1] == 1);
  CHECK(d[2] == SIZE_MAX);
}

TEST_CASE("contract and add leaf on small rooted graphs") {
  SUBCASE("path root-a-b, contract b") {
    Multigraph g(3);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    const RootedGraph rg(g, 0);
    CHECK(finite(rooted_summary(rg)).R_tot == doctest::Approx(3.0));
    const RootedGraph h = contract_edge_add_leaf(rg, 2);
    CHECK(h.graph().num_vertices() == 3);
    CHECK(h.num_edges() == 2);
    CHECK(finite(rooted_summary(h)).R_tot == doctest::Approx(2.0));
    CHECK(count_leaves(h).on_root == 2);
  }
  SUBCASE("triangle, contract a along ab") {
    const RootedGraph rg(build_complete(3), 0);
    const RootedGraph h = contract_edge_add_leaf(rg, 1);
    CHECK(h.num_edges() == 3);
    CHECK(finite(rooted_summary(h)).R_tot == doctest::Approx(1.5));
  }
  SUBCASE("a root leaf is unchanged up to isomorphism") {
    const RootedGraph rg = build_rooted_star(4);
    const RootedGraph h = contract_edge_add_leaf(rg, 2);
    CHECK(canonical_form(h.graph(), h.root()) == canonical_form(rg.graph(), rg.root()));
  }
  SUBCASE("errors") {
    const RootedGraph rg(build_complete(3), 0);
    CHECK_THROWS(contract_edge_add_leaf(rg, 0));
    Multigraph iso(3);
    iso.add_edge(0, 1);
    CHECK_THROWS(contract_edge_add_leaf(RootedGraph(iso, 0), 2));
  }
}

TEST_CASE("contract and add leaf picks the neighbour closest to the root when told") {
  // x = 3 has neighbours 1 (far) and 2 (near).
  Multigraph g(4);
  g.add_edge(0, 1);
  g.add_edge(1, 3);
  g.add_edge(3, 2);
  g.add_edge(2, 0, 3);
  const RootedGraph rg(g, 0);
  const auto s = finite(rooted_summary(rg));
  const RootedGraph h = contract_edge_add_leaf(rg, 3, s.per_vertex);
  const RootedGraph plain = contract_edge_add_leaf(rg, 3);
  CHECK(finite(rooted_summary(h)).R_tot <= finite(rooted_summary(plain)).R_tot + 1e-12);
}

TEST_CASE("canonical form") {
  std::mt19937_64 rng(11);
  SUBCASE("examples") {
    const Multigraph k3 = build_complete(3);
    std::vector<Vertex> perm{2, 0, 1};
    CHECK(canonical_form(relabel(k3, perm)) == canonical_form(k3));
    Multigraph path(3);
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    CHECK(canonical_form(path) == canonical_form(build_star(3)));
    Multigraph one(2), two(2);
    one.add_edge(0, 1);
    two.add_edge(0, 1, 2);
    CHECK_FALSE(canonical_form(one) == canonical_form(two));
    CHECK_THROWS(canonical_form(Multigraph(kCanonicalLimit + 1)));
  }
  SUBCASE("permutation invariance on random multigraphs") {
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t n = 2 + rng() % 8;
      const std::size_t m = rng() % (2 * n);
      const Multigraph g = random_multigraph(rng, n, m, 3);
      std::vector<Vertex> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      const Multigraph h = relabel(g, perm);
      CHECK(canonical_form(g) == canonical_form(h));
      CHECK(canonical_form(g, 0) == canonical_form(h, perm[0]));
      CHECK(from_canonical(canonical_form(g)).num_edges() == g.num_edges());
      CHECK(canonical_form(from_canonical(canonical_form(g))) == canonical_form(g));
    }
  }
  SUBCASE("rooted labels separate non-equivalent roots") {
    Multigraph path(3);
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    CHECK_FALSE(canonical_form(path, 0) == canonical_form(path, 1));
    CHECK(canonical_form(path, 0) == canonical_form(path, 2));
  }
}

TEST_CASE("structural invariants on random multigraphs") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 10;
    const Multigraph g = random_multigraph(rng, n, rng() % (3 * n), 3);
    std::uint64_t sum = 0;
    for (Vertex v = 0; v < n; ++v) sum += degree(g, v);
    CHECK(sum == 2 * g.num_edges());
    const bool has_parallel =
        std::any_of(g.pairs().begin(), g.pairs().end(), [](const auto& p) { return p.second >= 2; });
    if (has_parallel) CHECK(girth(g).value() <= 2);
  }
}

TEST_CASE("contraction never adds edges and keeps the vertex count") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3 + rng() % 6;
    Multigraph g = random_multigraph(rng, n, n + rng() % n, 2);
    for (Vertex v = 1; v < n; ++v)
      if (bfs_distances(g, 0)[v] == SIZE_MAX) g.add_edge(0, v);
    const RootedGraph rg(g, 0);
    const Vertex x = 1 + rng() % (n - 1);
    const RootedGraph h = contract_edge_add_leaf(rg, x);
    CHECK(h.graph().num_vertices() == n);
    CHECK(h.num_edges() <= rg.num_edges());
    CHECK(is_connected(h.graph()));
  }
}

TEST_CASE("edge list round trip and parse errors") {
  std::istringstream in("# a comment\nn 4\nroot 0\n0 1 2\n1 2\n  2   3 1  # trailing\n0 1\n");
  const EdgeListFile f = read_edge_list(in);
  CHECK(f.graph.num_vertices() == 4);
  CHECK(f.root == Vertex{0});
  CHECK(f.graph.multiplicity(0, 1) == 3);
  CHECK(f.graph.num_edges() == 5);
  std::ostringstream out;
  write_edge_list(out, f.rooted());
  std::istringstream back(out.str());
  const EdgeListFile g = read_edge_list(back);
  CHECK(g.graph == f.graph);
  CHECK(g.root == f.root);

  std::istringstream bad("n 3\n0 1\n0 7\n");
  try {
    read_edge_list(bad);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  std::istringstream loop("n 3\n1 1\n");
  CHECK_THROWS_AS(read_edge_list(loop), ParseError);
  std::istringstream zero("n 3\n0 1 0\n");
  CHECK_THROWS_AS(read_edge_list(zero), ParseError);
  std::istringstream missing("0 1\n");
  CHECK_THROWS_AS(read_edge_list(missing), ParseError);
}
