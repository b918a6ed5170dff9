#include "resnet/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "resnet/bounds.hpp"
#include "resnet/constructions.hpp"
#include "resnet/flow.hpp"
#include "resnet/resistance.hpp"
#include "resnet/rooting.hpp"
#include "resnet/search.hpp"
#include "resnet/spanning_trees.hpp"

namespace resnet {

OracleAgreement oracle_agreement(const Multigraph& g) {
  const std::size_t n = g.num_vertices();
  OracleAgreement out;
  out.used_spanning_trees = n <= kSpanningTreeLimit;
  double total = 0.0;
  for (Vertex x = 0; x < n; ++x) {
    for (Vertex y = x + 1; y < n; ++y) {
      const double r = finite(pair_resistance(g, x, y));
      const double power = flow_power(finite(unit_current_flow(g, x, y)));
      out.max_deviation = std::max(out.max_deviation, std::abs(r - power));
      if (out.used_spanning_trees)
        out.max_deviation = std::max(out.max_deviation, std::abs(r - resistance_via_spanning_trees(g, x, y)));
      total += r;
      ++out.pairs;
    }
  }
  const double kirchhoff = finite(kirchhoff_index_by_eigenvalues(g));
  out.max_deviation = std::max(out.max_deviation, std::abs(total - kirchhoff) / std::max(1.0, total));
  return out;
}

Lemma63Report lemma63_frequency(std::size_t d, std::size_t depth, double eps, std::size_t samples,
                                std::uint64_t seed) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
  const TreeBall ball = regular_tree_ball(d, depth);
  const Multigraph& t = ball.tree;
  const std::size_t n = t.num_vertices();
  Lemma63Report r;
  r.depth = depth;
  r.eps = eps;
  r.samples = samples;
  r.tree_resistance = tree_resistance(ball);
  r.bound = 4.0 * std::pow(1.0 - eps, static_cast<double>(depth)) / eps;

  // Vertices deepest first, each with its parent.
  std::vector<Vertex> order(n);
  for (Vertex v = 0; v < n; ++v) order[v] = v;
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return ball.level[a] > ball.level[b]; });
  std::vector<Vertex> parent(n, SIZE_MAX);
  for (Vertex v = 0; v < n; ++v)
    for (Vertex w : t.neighbors(v))
      if (ball.level[w] + 1 == ball.level[v]) parent[v] = w;
  std::vector<double> sink_conductance(n);
  for (Vertex v = 0; v < n; ++v) sink_conductance[v] = static_cast<double>(t.degree(v)) - 1.0;

  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(eps);
  std::vector<double> cond(n);
  const double threshold = (1.0 + eps) * r.tree_resistance;
  for (std::size_t s = 0; s < samples; ++s) {
    std::fill(cond.begin(), cond.end(), 0.0);
    for (Vertex v = 0; v < n; ++v)
      if (coin(rng)) cond[v] += sink_conductance[v];
    for (Vertex v : order) {
      if (parent[v] == SIZE_MAX) continue;
      cond[parent[v]] += cond[v] / (1.0 + cond[v]);
    }
    const double c = cond[ball.center];
    const double resistance = c > 0.0 ? 1.0 / c : std::numeric_limits<double>::infinity();
    if (resistance > threshold) ++r.exceed;
  }
  r.frequency = samples ? static_cast<double>(r.exceed) / static_cast<double>(samples) : 0.0;
  return r;
}

namespace {

Multigraph random_connected(std::size_t n, std::mt19937_64& rng) {
  Multigraph g(n);
  for (Vertex v = 1; v < n; ++v) g.add_edge(std::uniform_int_distribution<Vertex>(0, v - 1)(rng), v);
  const std::size_t extra = std::uniform_int_distribution<std::size_t>(0, n)(rng);
  std::uniform_int_distribution<Vertex> pick(0, n - 1);
  for (std::size_t i = 0; i < extra; ++i) {
    const Vertex a = pick(rng), b = pick(rng);
    if (a != b) g.add_edge(a, b);
  }
  return g;
}

}  // namespace

std::vector<Theorem2Row> theorem2_check(std::size_t graphs, std::size_t max_n, const std::vector<std::size_t>& sizes,
                                        std::size_t trials, std::uint64_t seed) {
  if (max_n < 5) throw std::invalid_argument("graphs need up to at least 5 vertices");
  std::mt19937_64 rng(seed);
  std::vector<Theorem2Row> rows;
  for (std::size_t i = 0; i < graphs; ++i) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(5, max_n)(rng);
    const Multigraph g = random_connected(n, rng);
    const double a_prime = finite(resistance_summary(g)).A_prime;
    for (std::size_t s : sizes) {
      const SinkSampling sampling = root_via_sinks(g, s, trials, rng());
      Theorem2Row row;
      row.graph_index = i;
      row.n = n;
      row.s = s;
      row.A_prime = a_prime;
      row.mean_B = sampling.mean_B;
      row.stderr_B = sampling.stderr_B;
      row.bound = sampling.bound;
      row.passed = sampling.mean_B <= sampling.bound + 3.0 * sampling.stderr_B;
      rows.push_back(row);
    }
  }
  return rows;
}

DeskScaleReport desk_scale_pipeline(std::size_t n_target, std::size_t g_min, std::size_t ell, double eps,
                                    std::optional<double> p, std::uint64_t seed) {
  const std::size_t h = std::max<std::size_t>(2, (n_target + 2) / 3);
  const Multigraph base = build_split_4regular(2 * h, seed, g_min, 200000);
  DeskScaleReport r;
  r.n = base.num_vertices();
  r.girth = girth(base).value_or(0);
  r.ell = ell;
  r.eps = eps;
  const Theorem64Result t = theorem64_rooting(base, ell, eps, p, seed + 1);
  r.p = t.p;
  r.alpha_stage = t.alpha_output;
  r.B_stage = t.B;
  r.ball_average = t.ball_average;
  r.max_ratio = t.max_ratio;
  r.repaired = t.repaired.size();

  const ResistanceSummary stage = finite(resistance_summary(t.rooted.graph()));
  r.A_stage = stage.A;

  r.leaves = leaves_for_average_degree(t.rooted, 3.0);
  const double n = static_cast<double>(t.rooted.num_nonroot());
  const double L = static_cast<double>(r.leaves);
  const double m = static_cast<double>(t.rooted.num_edges());
  const double r_tot = t.B * n;
  r.alpha_mix = 2.0 * (m + L) / (n + L);
  r.B_mix = (r_tot + L) / (n + L);
  // A leaf on the root sits at 1 + R_v from every stage vertex and 2 from every other leaf.
  const double vertices = n + 1.0 + L;
  const double total = stage.pairwise_total + L * ((n + 1.0) + r_tot) + L * (L - 1.0);
  r.A_mix = total / (vertices * (vertices - 1.0) / 2.0);
  return r;
}

CubicReport cubic_rooting(std::size_t n, std::size_t ell, double eps, std::optional<double> p, std::uint64_t seed) {
  const Multigraph g = build_random_regular_girth(n, 3, 2 * ell + 2, seed, 200000);
  CubicReport r;
  r.n = n;
  r.girth = girth(g).value_or(0);
  r.ball_average_by_depth.assign(ell + 1, 0.0);
  for (std::size_t depth = 1; depth <= ell; ++depth) {
    const auto balls = ball_resistances(g, depth);
    double sum = 0.0;
    for (double b : balls) sum += b;
    r.ball_average_by_depth[depth] = sum / static_cast<double>(n);
  }
  const Theorem64Result t = theorem64_rooting(g, ell, eps, p, seed + 1);
  r.B = t.B;
  r.max_ratio = t.max_ratio;
  r.alpha_output = t.alpha_output;
  r.repaired = t.repaired.size();
  return r;
}

std::vector<std::string> verification_groups() {
  return {"appendixA", "appendixB", "small_claims", "certificates", "theorem2",
          "lemma63",   "qb_gap",    "golden",       "corollary65",  "theorem1"};
}

namespace {

std::string num(double v) { return format_number(round15(v)); }

struct Battery {
  const VerifyOptions& options;
  std::vector<CheckResult> results;

  bool selected(const std::string& group, const std::string& name) const {
    if (!options.filter) return true;
    const std::string& f = *options.filter;
    return group == f || name.find(f) != std::string::npos;
  }

  // body fills detail and returns pass/fail; exceptions count as failures.
  void run(const std::string& group, const std::string& name, const std::function<bool(std::string&)>& body) {
    if (!selected(group, name)) return;
    CheckResult c;
    c.group = group;
    c.name = name;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.passed = body(c.detail);
    } catch (const std::exception& e) {
      c.passed = false;
      c.detail = std::string("exception: ") + e.what();
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    results.push_back(std::move(c));
  }
};

void appendix_a(Battery& b) {
  b.run("appendixA", "appendixA_oracles", [](std::string& detail) {
    double worst = 0.0;
    std::size_t graphs = 0;
    for (std::size_t n = 2; n <= 5; ++n)
      for (std::uint64_t m = n - 1; m <= 7; ++m)
        for_each_connected_multigraph(n, m, 3, true, [&](const Multigraph& g) {
          worst = std::max(worst, oracle_agreement(g).max_deviation);
          ++graphs;
        });
    detail = std::to_string(graphs) + " graphs, max deviation " + num(worst);
    return worst < 1e-9;
  });

  b.run("appendixA", "appendixA_flow_laws", [](std::string& detail) {
    std::mt19937_64 rng(11);
    double worst = 0.0;
    for (int i = 0; i < 30; ++i) {
      const Multigraph g = random_connected(12, rng);
      const CurrentFlow xy = finite(unit_current_flow(g, 0, 5));
      const CurrentFlow yz = finite(unit_current_flow(g, 5, 9));
      const CurrentFlow xz = finite(unit_current_flow(g, 0, 9));
      const CurrentFlow sum = superpose(xy, yz);
      worst = std::max({worst, kcl_residual(xy), ohm_residual(xy), kcl_residual(sum), ohm_residual(sum)});
      for (std::size_t e = 0; e < sum.edges.size(); ++e)
        worst = std::max(worst, std::abs(sum.edges[e].current - xz.edges[e].current));
      const double rxy = flow_power(xy), ryz = flow_power(yz), rxz = flow_power(xz);
      if (rxz > rxy + ryz + 1e-12) worst = std::max(worst, rxz - rxy - ryz);
    }
    detail = "max KCL/Ohm/superposition residual " + num(worst);
    return worst < 1e-9;
  });

  b.run("appendixA", "appendixA_series_parallel_monotone", [](std::string& detail) {
    double worst = 0.0;
    for (std::size_t k = 1; k <= 10; ++k) {
      worst = std::max(worst, std::abs(finite(pair_resistance(build_path(k + 1), 0, k)) - static_cast<double>(k)));
      Multigraph par(2);
      par.add_edge(0, 1, static_cast<Multiplicity>(k));
      worst = std::max(worst, std::abs(finite(pair_resistance(par, 0, 1)) - 1.0 / static_cast<double>(k)));
    }
    std::mt19937_64 rng(12);
    bool monotone = true;
    for (int i = 0; i < 20; ++i) {
      Multigraph g = random_connected(10, rng);
      const auto before = finite(resistance_summary(g));
      g.add_edge(2, 7);
      const auto after = finite(resistance_summary(g));
      monotone = monotone && after.pairwise_total <= before.pairwise_total + 1e-12;
    }
    detail = "series/parallel deviation " + num(worst) + (monotone ? ", monotone" : ", monotonicity violated");
    return worst < 1e-9 && monotone;
  });
}

void appendix_b(Battery& b) {
  b.run("appendixB", "appendixB_discriminant", [](std::string& detail) {
    std::int64_t bad = 0;
    std::int64_t first_bad = -1;
    for (std::int64_t t = 4; t <= 10000; ++t) {
      const ExactDiscriminant e = appendixB_discriminant_exact(t);
      if (!(e.forms_agree && e.negative)) {
        if (first_bad < 0) first_bad = t;
        ++bad;
      }
    }
    detail = "t = 4..10000 exact: " + std::to_string(bad) + " failures" +
             (first_bad >= 0 ? " (first t=" + std::to_string(first_bad) + ")" : "") +
             "; t=4 value " + appendixB_discriminant_exact(4).direct;
    return bad == 0;
  });
  const SegmentChecks s = appendixB_segment_checks();
  b.run("appendixB", "appendixB_quadratic", [&](std::string& detail) {
    detail = "quadratic " + num(s.qa) + " x^2 + " + num(s.qb) + " x + " + num(s.qc) + ", discriminant " +
             num(s.discriminant) + " (with 0.5271865: " + num(s.discriminant_exact_point) + ")";
    return s.matches_printed && s.discriminant < 0.0 && s.discriminant_exact_point < 0.0;
  });
  b.run("appendixB", "appendixB_crossover", [&](std::string& detail) {
    detail = num(s.lin_c0) + " + " + num(s.lin_c1) + " x vanishes at " + num(s.crossover);
    return s.matches_printed && std::abs(s.crossover - 3.5987) < 1e-3;
  });
}

void small_claims(Battery& b) {
  const std::vector<std::string> stems{"star_optimal_n", "unicyclic_rooted_n", "unicyclic_shape_n",
                                       "cycle_crossover_n", "queen_bee_n"};
  if (b.options.filter) {
    const std::string& f = *b.options.filter;
    bool any = f == "small_claims";
    for (const auto& s : stems) any = any || s.find(f) != std::string::npos || f.find(s) != std::string::npos;
    if (!any) return;
  }
  for (const ClaimCheck& c : verify_small_claims()) {
    b.run("small_claims", c.name, [&](std::string& detail) {
      detail = c.detail;
      return c.passed;
    });
  }
}

void certificates(Battery& b) {
  b.run("certificates", "certificates_one_step", [](std::string& detail) {
    std::size_t graphs = 0, violations = 0;
    for (std::size_t n = 2; n <= 6; ++n)
      for (std::uint64_t m = n - 1; m <= 8; ++m)
        for_each_connected_multigraph(n, m, 3, true, [&](const Multigraph& g) {
          const ResistanceSummary s = finite(resistance_summary(g));
          const double bound = std::max(1.0 / s.alpha, lower_bound_neighbourhood(n, m));
          if (s.A < bound - 1e-12) ++violations;
          ++graphs;
        });
    detail = std::to_string(graphs) + " graphs, " + std::to_string(violations) + " violations";
    return violations == 0;
  });
  b.run("certificates", "certificates_two_step", [](std::string& detail) {
    std::size_t rooted = 0, applicable = 0, violations = 0;
    for (std::size_t n = 2; n <= 6; ++n)
      for (std::uint64_t m = n - 1; m <= 8; ++m)
        for_each_connected_multigraph(
            n, m, 3, true,
            [&](const Multigraph& g) {
              const RootedGraph rg(g, 0);
              const TwoStepCertificate c = two_step_certificate(rg);
              ++rooted;
              if (c.total > c.budget + 1e-9) ++violations;
              if (!c.applicable) return;
              ++applicable;
              const double B = finite(rooted_summary(rg)).B;
              if (B < c.implied_B_lower - 1e-12) ++violations;
            },
            Vertex{0});
    detail = std::to_string(rooted) + " rooted graphs (" + std::to_string(applicable) + " applicable), " +
             std::to_string(violations) + " violations";
    return violations == 0;
  });
}

void theorem2(Battery& b) {
  b.run("theorem2", "theorem2_sink_rooting", [&](std::string& detail) {
    const auto rows = theorem2_check(5, 40, {1, 2, 5, 10}, 200, b.options.seed);
    std::size_t failed = 0;
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& r : rows) {
      if (!r.passed) ++failed;
      worst = std::max(worst, (r.mean_B - r.bound) / std::max(r.stderr_B, 1e-15));
    }
    detail = std::to_string(rows.size()) + " (graph, s) cases, " + std::to_string(failed) +
             " above bound + 3 se; worst z " + num(worst);
    return failed == 0;
  });
}

void lemma63(Battery& b) {
  b.run("lemma63", "lemma63_frequency", [&](std::string& detail) {
    std::ostringstream os;
    bool ok = true;
    for (double eps : {0.2, 0.4})
      for (std::size_t ell = 4; ell <= 8; ++ell) {
        const Lemma63Report r = lemma63_frequency(3, ell, eps, 10000, b.options.seed + ell);
        ok = ok && r.frequency <= r.bound;
        os << "eps=" << eps << " l=" << ell << ": " << num(r.frequency) << "<=" << num(r.bound) << "; ";
      }
    detail = os.str();
    return ok;
  });
}

void qb_gap(Battery& b) {
  b.run("qb_gap", "qb_gap_strict", [](std::string& detail) {
    std::vector<double> grid;
    for (int i = 0; i <= 9990; ++i) grid.push_back(2.01 + 0.001 * i);
    grid.push_back(12.0);
    const auto rows = qb_gap_check(grid, default_upper_envelope());
    double smallest = std::numeric_limits<double>::infinity();
    double where = 0.0;
    bool ok = true;
    for (const auto& r : rows) {
      ok = ok && r.strict;
      if (r.margin < smallest) {
        smallest = r.margin;
        where = r.alpha;
      }
    }
    detail = std::to_string(rows.size()) + " grid points, smallest margin " + num(smallest) + " at alpha " + num(where);
    return ok;
  });
}

void golden(Battery& b) {
  b.run("golden", "golden_recursion", [](std::string& detail) {
    const GoldenRecursion g = golden_recursion();
    const double x = (1.0 + std::sqrt(5.0)) / 2.0;
    const double avg = (-3.0 + 7.0 * std::sqrt(5.0)) / 24.0;
    detail = "x " + num(g.x) + ", avg " + num(g.avg) + " after " + std::to_string(g.iterations) + " iterations";
    return std::abs(g.x - x) < 1e-10 && std::abs(g.avg - avg) < 1e-10;
  });
}

void corollary65(Battery& b) {
  b.run("corollary65", "corollary65_cubic", [&](std::string& detail) {
    const CubicReport r = cubic_rooting(2000, 5, 0.05, 0.05, b.options.seed);
    const double target = 2.0 / 3.0;
    const double ball = r.ball_average_by_depth.back();
    detail = "girth " + std::to_string(r.girth) + ", B " + num(r.B) + ", ball average " + num(ball) +
             ", max ratio " + num(r.max_ratio) + ", alpha' " + num(r.alpha_output);
    return r.B >= 0.5 && r.B <= 0.70 && std::abs(ball - target) <= 0.05 * target && r.max_ratio <= 1.05 + 1e-9;
  });
}

void theorem1(Battery& b) {
  b.run("theorem1", "theorem1_desk_scale", [&](std::string& detail) {
    const DeskScaleReport r = desk_scale_pipeline(b.options.theorem1_n, 14, 6, 0.02, 0.016, b.options.seed);
    detail = "n " + std::to_string(r.n) + ", girth " + std::to_string(r.girth) + ", alpha' " + num(r.alpha_stage) +
             ", B(10/3 stage) " + num(r.B_stage) + ", A " + num(r.A_stage) + ", B(mix, alpha 3) " + num(r.B_mix) +
             ", A(mix) " + num(r.A_mix);
    const bool large = r.n >= 10000;
    return r.B_mix <= 0.66 && (!large || r.B_stage <= 0.54) && r.A_stage <= 2.0 * r.B_stage &&
           r.A_mix <= 2.0 * r.B_mix;
  });
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  Battery b{options, {}};
  appendix_a(b);
  appendix_b(b);
  small_claims(b);
  certificates(b);
  theorem2(b);
  lemma63(b);
  qb_gap(b);
  golden(b);
  corollary65(b);
  theorem1(b);
  return b.results;
}

}  // namespace resnet
