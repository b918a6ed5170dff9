#ifndef RESNET_VERIFY_HPP
#define RESNET_VERIFY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "resnet/multigraph.hpp"

namespace resnet {

/// Largest disagreement between the independent resistance oracles on one graph.
struct OracleAgreement {
  double max_deviation = 0.0;
  std::size_t pairs = 0;
  bool used_spanning_trees = false;
};

/// Compares, for every pair, the grounded solve, the power of the unit
/// current flow and (up to 9 vertices) the spanning-tree current formula;
/// then the pairwise total against n * sum(1/lambda).
OracleAgreement oracle_agreement(const Multigraph& g);

/// Resistance from the centre of a tree ball to the root of its random
/// eps-rooted version (infinite when no sink is reachable).
struct Lemma63Report {
  std::size_t depth = 0;
  double eps = 0.0;
  double tree_resistance = 0.0;  // R(x,T)
  std::size_t samples = 0;
  std::size_t exceed = 0;        // samples with R > (1+eps) R(x,T)
  double frequency = 0.0;
  double bound = 0.0;            // 4 (1-eps)^depth / eps
};

Lemma63Report lemma63_frequency(std::size_t d, std::size_t depth, double eps, std::size_t samples,
                                std::uint64_t seed);

struct Theorem2Row {
  std::size_t graph_index = 0;
  std::size_t n = 0;
  std::size_t s = 0;
  double A_prime = 0.0;
  double mean_B = 0.0;
  double stderr_B = 0.0;
  double bound = 0.0;
  bool passed = false;  // mean <= bound + 3 stderr
};

/// Random connected graphs with n <= max_n; for each s, `trials` sampled multisets.
std::vector<Theorem2Row> theorem2_check(std::size_t graphs, std::size_t max_n, const std::vector<std::size_t>& sizes,
                                        std::size_t trials, std::uint64_t seed);

struct DeskScaleReport {
  std::size_t n = 0;           // vertices of the base graph
  std::size_t girth = 0;
  std::size_t ell = 0;
  double eps = 0.0;
  double p = 0.0;
  double alpha_stage = 0.0;    // average degree after rooting
  double B_stage = 0.0;        // B of the 10/3 stage rooted graph
  double A_stage = 0.0;        // A of that graph viewed as unrooted
  double ball_average = 0.0;
  double max_ratio = 0.0;
  std::size_t repaired = 0;
  std::size_t leaves = 0;      // root leaves added to reach alpha = 3
  double alpha_mix = 0.0;
  double B_mix = 0.0;
  double A_mix = 0.0;
};

/// Split 4-regular base, Theorem-6.4 style rooting, then root leaves down to
/// average degree 3. n_target is rounded up to a multiple of 3.
DeskScaleReport desk_scale_pipeline(std::size_t n_target, std::size_t g_min, std::size_t ell, double eps,
                                    std::optional<double> p, std::uint64_t seed);

struct CubicReport {
  std::size_t n = 0;
  std::size_t girth = 0;
  std::vector<double> ball_average_by_depth;  // index = depth
  double B = 0.0;
  double max_ratio = 0.0;
  double alpha_output = 0.0;
  std::size_t repaired = 0;
};

/// Random cubic graph of girth >= 2 ell + 2 rooted with the local-resistance
/// construction at depth ell.
CubicReport cubic_rooting(std::size_t n, std::size_t ell, double eps, std::optional<double> p, std::uint64_t seed);

struct CheckResult {
  std::string group;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyOptions {
  std::optional<std::string> filter;  // group name or substring of a check name
  std::uint64_t seed = 0;
  std::size_t theorem1_n = 10002;
};

/// Every check group: appendixA, appendixB, small_claims, certificates,
/// theorem2, lemma63, qb_gap, golden, corollary65, theorem1.
std::vector<std::string> verification_groups();

std::vector<CheckResult> run_verification(const VerifyOptions& options);

}  // namespace resnet

#endif  // RESNET_VERIFY_HPP
