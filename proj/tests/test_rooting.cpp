#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "exact_oracle.hpp"
#include "resnet/constructions.hpp"
#include "resnet/resistance.hpp"
#include "resnet/rooting.hpp"
#include "resnet/verify.hpp"

using namespace resnet;

TEST_CASE("p-rooted graphs") {
  const Multigraph cubic = build_random_regular_girth(300, 3, 5, 2);
  SUBCASE("every sink gets d-1 root edges") {
    const SinkRooting r = p_rooted(cubic, 0.2, 7);
    CHECK(r.rooted.root() == 300);
    CHECK(r.added_edges == 2 * r.sinks.size());
    for (Vertex x = 0; x < 300; ++x) {
      const bool sink = std::find(r.sinks.begin(), r.sinks.end(), x) != r.sinks.end();
      CHECK(r.rooted.root_edges(x) == (sink ? 2u : 0u));
    }
    CHECK(r.rooted.num_edges() == cubic.num_edges() + r.added_edges);
  }
  SUBCASE("expected edge count") {
    const double p = 0.1;
    const int trials = 400;
    double sum = 0.0, sum_sq = 0.0;
    for (int t = 0; t < trials; ++t) {
      const double e = static_cast<double>(p_rooted(cubic, p, 100 + t).added_edges);
      sum += e;
      sum_sq += e * e;
    }
    const double mean = sum / trials;
    const double sd = std::sqrt((sum_sq - trials * mean * mean) / (trials - 1));
    CHECK(std::abs(mean - p * 300 * 2) <= 3.0 * sd / std::sqrt(trials));
  }
  SUBCASE("degree-one sinks add nothing") {
    const SinkRooting r = p_rooted(build_path(2), 0.999999, 1);
    CHECK(r.sinks.size() == 2);
    CHECK(r.added_edges == 0);
    CHECK(std::isinf(root_resistances(r.rooted)[0]));
  }
  CHECK_THROWS(p_rooted(cubic, 0.0, 1));
  CHECK_THROWS(p_rooted(cubic, 1.0, 1));
}

TEST_CASE("sink graphs") {
  const std::vector<Vertex> s0{0};
  const RootedGraph g = sink_graph(build_path(2), s0);
  CHECK(finite(rooted_summary(g)).B == doctest::Approx(1.5));
  const Multigraph k3 = build_complete(3);
  const std::vector<Vertex> all{0, 1, 2};
  const RootedGraph h = sink_graph(k3, all);
  const double b = finite(rooted_summary(h)).B;
  CHECK(b == doctest::Approx(oracle::to_double(oracle::rooted_B(h))));
  CHECK(b == doctest::Approx(0.5));  // the result is K4
  const double a_prime = finite(resistance_summary(k3)).A_prime;
  CHECK(b <= sink_rooting_bound(a_prime, 3));
  const std::vector<Vertex> repeated{1, 1};
  CHECK(sink_graph(k3, repeated).root_edges(1) == 2);
  const std::vector<Vertex> bad{5};
  CHECK_THROWS_AS(sink_graph(k3, bad), InvalidVertex);
  CHECK_THROWS(sink_rooting_bound(1.0, 0));
}

TEST_CASE("sink rooting meets the expectation bound") {
  const Multigraph star = build_star(8);
  for (std::size_t s : {1u, 2u, 7u}) {
    const SinkSampling r = root_via_sinks(star, s, 300, 5);
    CHECK(r.mean_B <= r.bound + 3.0 * r.stderr_B);
    CHECK(r.best_B <= r.mean_B);
    CHECK(finite(rooted_summary(r.best)).B == doctest::Approx(r.best_B));
  }
  const SinkSampling sets = root_via_sinks(build_cycle(6), 3, 100, 1, false);
  for (Vertex v = 0; v < 6; ++v) CHECK(sets.best.root_edges(v) <= 1);
  Multigraph two(4);
  two.add_edge(0, 1);
  two.add_edge(2, 3);
  CHECK_THROWS_AS(root_via_sinks(two, 1, 10, 0), DisconnectedError);
  CHECK_THROWS(root_via_sinks(build_cycle(4), 5, 10, 0, false));
}

TEST_CASE("theorem64 rooting certificate") {
  const Multigraph cubic = build_random_regular_girth(600, 3, 8, 3);
  const Theorem64Result t = theorem64_rooting(cubic, 3, 0.05, std::nullopt, 11);
  CHECK(t.p == doctest::Approx(0.05 / 24.0));
  CHECK(t.max_ratio <= 1.05 + 1e-9);
  for (Vertex x = 0; x < 600; ++x) CHECK(t.root_resistance[x] <= 1.05 * t.ball_resistance[x] * (1 + 1e-9));
  CHECK(t.rooted.num_edges() == cubic.num_edges() + t.sink_edges + t.repair_edges);
  std::uint64_t repair = 0;
  for (Vertex x : t.repaired) repair += cubic.degree(x);
  CHECK(repair == t.repair_edges);
  CHECK(t.alpha_output == doctest::Approx(2.0 * t.rooted.num_edges() / 600.0));
  CHECK(t.B <= 1.05 * t.ball_average + 1e-12);
  const double b = finite(rooted_summary(t.rooted)).B;
  CHECK(t.B == doctest::Approx(b));

  CHECK_THROWS(theorem64_rooting(cubic, 4, 0.05, std::nullopt, 1));  // girth 8 < 10
  CHECK_THROWS(theorem64_rooting(cubic, 3, 0.0, std::nullopt, 1));
  CHECK_THROWS(theorem64_rooting(cubic, 3, 1.0, std::nullopt, 1));
  CHECK_THROWS(theorem64_rooting(cubic, 0, 0.1, std::nullopt, 1));
}

TEST_CASE("theorem64 with an explicit p keeps the certificate") {
  const Multigraph g = build_split_4regular(600, 3, 10);
  for (double p : {0.01, 0.1, 0.3}) {
    const Theorem64Result t = theorem64_rooting(g, 4, 0.05, p, 2);
    CHECK(t.p == p);
    CHECK(t.max_ratio <= 1.05 * (1 + 1e-9));
    CHECK(t.B < 0.554);
  }
}

TEST_CASE("rooted union and leaves") {
  const RootedGraph tri = build_star_triangles_leaves(2, 3);
  const std::vector<RootedGraph> one{tri};
  const RootedGraph u = rooted_union(one, 1);
  CHECK(u.num_nonroot() == 3);
  CHECK(finite(rooted_summary(u)).B == doctest::Approx(7.0 / 9.0));
  const std::vector<RootedGraph> copies(4, tri);
  CHECK(finite(rooted_summary(rooted_union(copies, 0))).B == doctest::Approx(2.0 / 3.0));
  CHECK_THROWS(rooted_union(std::vector<RootedGraph>{}, 0));

  // Mixing triangles and leaves traces (5 - alpha)/3 on [2, 3].
  for (std::size_t leaves = 0; leaves <= 12; ++leaves) {
    const RootedGraph mix = rooted_union(copies, leaves);
    const double alpha = mix.average_degree();
    CHECK(finite(rooted_summary(mix)).B == doctest::Approx((5.0 - alpha) / 3.0));
  }

  const RootedGraph more = add_root_leaves(tri, 3);
  CHECK(more.num_nonroot() == 5);
  CHECK(more.root() == tri.root());
  CHECK(finite(rooted_summary(more)).B == doctest::Approx((2 * 2.0 / 3.0 + 3.0) / 5.0));
}

TEST_CASE("leaves needed for a target average degree") {
  const RootedGraph tri = build_star_triangles_leaves(6, 9);  // alpha 3
  CHECK(leaves_for_average_degree(tri, 3.0) == 0);
  const std::size_t k = leaves_for_average_degree(tri, 2.5);
  CHECK(add_root_leaves(tri, k).average_degree() <= 2.5 + 1e-12);
  CHECK(add_root_leaves(tri, k - 1).average_degree() > 2.5);
  CHECK_THROWS(leaves_for_average_degree(tri, 2.0));
}

TEST_CASE("root resistances mark cut-off vertices") {
  Multigraph g(4);
  g.add_edge(0, 1);
  g.add_edge(2, 3);
  const auto r = root_resistances(RootedGraph(g, 0));
  CHECK(r[0] == 0.0);
  CHECK(r[1] == doctest::Approx(1.0));
  CHECK(std::isinf(r[2]));
  CHECK(std::isinf(r[3]));
}

TEST_CASE("random eps-rootings of regular trees") {
  for (std::size_t depth : {4u, 6u}) {
    const Lemma63Report r = lemma63_frequency(3, depth, 0.4, 2000, 8);
    CHECK(r.tree_resistance == doctest::Approx(tree_resistance(regular_tree_ball(3, depth))));
    CHECK(r.samples == 2000);
    CHECK(r.frequency == doctest::Approx(static_cast<double>(r.exceed) / 2000.0));
    CHECK(r.bound == doctest::Approx(4.0 * std::pow(0.6, static_cast<double>(depth)) / 0.4));
    CHECK(r.frequency <= r.bound);
  }
}
