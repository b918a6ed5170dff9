#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include "doctest.h"
#include "exact_oracle.hpp"
#include "resnet/bounds.hpp"
#include "resnet/constructions.hpp"
#include "resnet/resistance.hpp"

using namespace resnet;
using oracle::Rational;

namespace {

Rational l_exact(const Rational& x) { return (x - 1) / (x * (x - 2)); }

// b^2 - 4ac of the chord-versus-1/(x-3/2) quadratic, straight from its coefficients.
Rational discriminant_from_coefficients(long t) {
  const Rational tt(t);
  const Rational dl = l_exact(tt + 1) - l_exact(tt);
  const Rational a = dl;
  const Rational b = l_exact(tt) - dl * (tt + Rational(3, 2));
  const Rational c = Rational(3) * tt * dl / 2 - Rational(3) * l_exact(tt) / 2 - 1;
  return b * b - 4 * a * c;
}

Rational printed_t_form(long t) {
  const Rational x(t);
  const Rational num = 8 * x * x * x * x * x - 41 * x * x * x * x + 66 * x * x * x - 71 * x * x + 38 * x - 1;
  const Rational den = 4 * (x + 1) * (x + 1) * (x - 1) * (x - 1) * x * x * (x - 2) * (x - 2);
  return -num / den;
}

std::string to_string(const Rational& r) { return r.str(); }

}  // namespace

TEST_CASE("closed-form lower bounds") {
  CHECK(lower_bound_one_step(2.0) == 0.5);
  CHECK(lower_bound_one_step(4.0) == 0.25);
  CHECK(lower_bound_one_step(3.0) == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS(lower_bound_one_step(1.5));
  CHECK(lower_bound_two_step_closed(2.0) == 1.0);
  CHECK(lower_bound_two_step_closed(3.0) == 0.5);
  CHECK(lower_bound_two_step_closed(10.0 / 3.0) == doctest::Approx(3.0 / 7.0));
  CHECK(lower_bound_two_step_closed(10.0 / 3.0) < kSplitConstant);
  CHECK(lower_bound_two_step_closed_a(3.0) == 1.0);
  CHECK_THROWS(lower_bound_two_step_closed(1.0));
  CHECK(lower_bound_neighbourhood(5, 4) == doctest::Approx(5.0 / 4.0 - 16.0 / 20.0));
}

TEST_CASE("one-step and neighbourhood bounds hold on small graphs") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 3 + rng() % 10;
    Multigraph g(n);
    for (Vertex v = 1; v < n; ++v) g.add_edge(rng() % v, v);
    for (std::size_t k = rng() % (2 * n); k > 0; --k) {
      const Vertex u = rng() % n, v = rng() % n;
      if (u != v) g.add_edge(u, v);
    }
    const double A = finite(resistance_summary(g)).A;
    CHECK(A >= 1.0 / g.average_degree() - 1e-12);
    if (g.average_degree() >= 2.0) CHECK(A >= lower_bound_one_step(g.average_degree()) - 1e-12);
    CHECK(A >= lower_bound_neighbourhood(n, g.num_edges()) - 1e-12);
  }
}

TEST_CASE("two-step certificate") {
  SUBCASE("star of triangles") {
    const TwoStepCertificate c = two_step_certificate(build_star_triangles_leaves(6, 9));
    CHECK(c.applicable);
    for (Vertex v = 1; v <= 6; ++v) CHECK(c.per_vertex_conductance_bound[v] == doctest::Approx(1.5));
    CHECK(c.per_vertex_conductance_bound[0] == 0.0);
    CHECK(c.total == doctest::Approx(9.0));
    CHECK(c.budget == doctest::Approx(12.0));
    CHECK(c.implied_B_lower == doctest::Approx(6.0 / 9.0));
  }
  SUBCASE("rooted star is tight") {
    const TwoStepCertificate c = two_step_certificate(build_rooted_star(5));
    CHECK(c.total == doctest::Approx(5.0));
    CHECK(c.budget == doctest::Approx(5.0));
    CHECK(c.implied_B_lower == doctest::Approx(1.0));
  }
  SUBCASE("stray leaf makes it inapplicable") {
    Multigraph g(4);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(0, 3);
    CHECK_FALSE(two_step_certificate(RootedGraph(g, 0)).applicable);
  }
  SUBCASE("consistency with measured B") {
    const RootedGraph g = build_star_triangles_leaves(9, 12);
    const TwoStepCertificate c = two_step_certificate(g);
    CHECK(c.total <= c.budget + 1e-12);
    CHECK(finite(rooted_summary(g)).B >= c.implied_B_lower - 1e-12);
  }
}

TEST_CASE("upper envelope") {
  const BoundEnvelope env = default_upper_envelope();
  CHECK(env(3.0) == doctest::Approx(0.6454).epsilon(1e-4));
  CHECK(env(10.0 / 3.0) == doctest::Approx(kSplitConstant));
  CHECK(env(4.0) == doctest::Approx(0.375));
  CHECK(env(2.0) == 1.0);
  CHECK(env(2.5) == doctest::Approx(0.8227).epsilon(1e-4));
  CHECK(env.min_alpha() == 2.0);
  CHECK(env.max_alpha() == static_cast<double>(kDefaultEnvelopeK));
  CHECK_THROWS_AS(env(1.9), std::domain_error);
  CHECK_THROWS_AS(env(100.0), std::domain_error);
  // The 3-regular point lies above the hull.
  CHECK(env(3.0) < regular_curve(3.0));

  for (const auto& [a, v] : env.points()) CHECK(env(a) <= v + 1e-12);
  double prev_slope = -1e300;
  for (double a = 2.0; a + 0.02 <= 20.0; a += 0.01) {
    const double slope = (env(a + 0.01) - env(a)) / 0.01;
    CHECK(slope >= prev_slope - 1e-9);
    prev_slope = slope;
  }
  CHECK_THROWS(upper_envelope({{2.0, 1.0}}));
  CHECK_THROWS(upper_envelope({{2.0, 1.0}, {2.0, 0.5}}));
  const BoundEnvelope two = upper_envelope({{2.0, 1.0}, {4.0, 0.0}});
  CHECK(two(3.0) == doctest::Approx(0.5));
}

TEST_CASE("conjectured envelope") {
  CHECK(conjecture_f(2.0) == doctest::Approx(1.0));
  for (int k = 4; k <= 16; ++k) CHECK(conjecture_f(k) == doctest::Approx(regular_curve(k)).epsilon(1e-9));
  CHECK(conjecture_f(3.0) < 2.0 / 3.0);
  for (double a = 2.0; a <= 16.0; a += 0.05) CHECK(conjecture_f(a) <= std::min(1.0, a > 2.0 ? regular_curve(a) : 1.0) + 1e-9);
  CHECK_THROWS(conjecture_f(3.0, 8));
  CHECK_THROWS(conjecture_f(1.0));
}

TEST_CASE("queen-bee component bound") {
  CHECK(qb_component_lower(3, 0) == doctest::Approx(5.0 / 3.0));
  CHECK(qb_component_lower(1, 0) == doctest::Approx(1.0));
  CHECK(qb_component_lower(2, 1) == doctest::Approx(2.0 / 3.0));
  CHECK(qb_component_lower(1, 3, true) == doctest::Approx(0.25));
  for (std::size_t s = 1; s <= 20; ++s)
    for (std::size_t t = 0; t <= 20; ++t) CHECK(qb_component_lower(s, t) > 0.0);

  // Two vertices, four units of conductance: internal 1 + root 3 or internal 2 + root 2.
  double best = 1e300;
  for (double c : {1.0, 2.0}) {
    const double root = 4.0 - c;
    for (int i = 0; i <= 4000; ++i) {
      const double ra = root * i / 4000.0, rb = root - ra;
      const double det = ra * rb + c * root;
      best = std::min(best, (root + 2.0 * c) / det);
    }
  }
  CHECK(best > qb_component_lower(2, 1) + 0.2);
  CHECK(best == doctest::Approx(20.0 / 21.0).epsilon(1e-6));
}

TEST_CASE("queen-bee lower bound and gap") {
  CHECK(qb_lower(3.0) == doctest::Approx(2.0 / 3.0));
  CHECK(qb_lower(3.5) == doctest::Approx(0.5));
  CHECK(qb_lower(4.0) == doctest::Approx(0.4));
  CHECK(qb_lower(4.0) > default_upper_envelope()(4.0));
  CHECK_THROWS(qb_lower(1.0));

  const BoundEnvelope env = default_upper_envelope();
  std::vector<double> grid;
  for (int i = 0; i <= 999; ++i) grid.push_back(2.01 + i * (12.0 - 2.01) / 999.0);
  for (const GapRow& row : qb_gap_check(grid, env)) {
    CHECK(row.strict);
    CHECK(row.margin == doctest::Approx(row.qb - row.envelope));
  }
  const auto at2 = qb_gap_check({2.0}, env);
  CHECK(at2[0].margin == doctest::Approx(0.0));
  CHECK_FALSE(at2[0].strict);
  const auto mid = qb_gap_check({2.5}, env);
  CHECK(mid[0].envelope == doctest::Approx(0.8227).epsilon(1e-4));
  CHECK(mid[0].qb == doctest::Approx(2.5 / 3.0));
}

TEST_CASE("chord discriminant against an independent exact computation") {
  CHECK(printed_t_form(4) == Rational(-187, 11520));
  for (long t = 4; t <= 80; ++t) {
    const Rational d = discriminant_from_coefficients(t);
    CHECK(d == printed_t_form(t));
    CHECK(d < 0);
    const ExactDiscriminant e = appendixB_discriminant_exact(t);
    CHECK(e.direct == to_string(d));
    CHECK(e.forms_agree);
    CHECK(e.negative);
    CHECK(appendixB_discriminant(t) == doctest::Approx(oracle::to_double(d)).epsilon(1e-9));
  }
  CHECK(appendixB_discriminant(10) < 0.0);
  CHECK(appendixB_discriminant(100) < 0.0);
  CHECK_THROWS(appendixB_discriminant(3));
  CHECK_THROWS(appendixB_discriminant_exact(3));
}

TEST_CASE("segment checks") {
  const SegmentChecks s = appendixB_segment_checks();
  CHECK(s.slope == doctest::Approx(-0.2295));
  CHECK(s.qa == doctest::Approx(-0.2295));
  CHECK(s.qb == doctest::Approx(1.63725));
  CHECK(s.qc == doctest::Approx(-2.9395));
  CHECK(s.discriminant < 0.0);
  CHECK(s.discriminant == doctest::Approx(1.63725 * 1.63725 - 4 * 0.2295 * 2.9395));
  CHECK(s.discriminant_exact_point < 0.0);
  CHECK(s.lin_c0 == doctest::Approx(0.373666667));
  CHECK(s.lin_c1 == doctest::Approx(-0.1038333333));
  CHECK(s.crossover == doctest::Approx(0.373666667 / 0.1038333333));
  CHECK(s.crossover == doctest::Approx(3.5987).epsilon(1e-4));
  CHECK(s.matches_printed);
}

TEST_CASE("bound sweep csv") {
  std::ostringstream out;
  write_bound_sweep(out, 2.0, 6.0, 0.01);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "alpha,lower_two_step,qb_lower,upper_envelope,conjecture_f,qb_margin");
  std::size_t rows = 0;
  bool saw3 = false, saw4 = false;
  while (std::getline(in, line)) {
    ++rows;
    if (line.rfind("3,", 0) == 0) {
      saw3 = true;
      CHECK(line.find(",0.64538") != std::string::npos);
    }
    if (line.rfind("4,", 0) == 0) {
      saw4 = true;
      CHECK(line.substr(line.rfind(',') + 1) == "0.025");
    }
  }
  CHECK(rows == 401);
  CHECK(saw3);
  CHECK(saw4);
  std::ostringstream bad;
  CHECK_THROWS(write_bound_sweep(bad, 3.0, 2.0, 0.1));
  CHECK_THROWS(write_bound_sweep(bad, 2.0, 3.0, 0.0));
}
