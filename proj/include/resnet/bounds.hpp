#ifndef RESNET_BOUNDS_HPP
#define RESNET_BOUNDS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "resnet/multigraph.hpp"

namespace resnet {

/// 1/alpha, the one-step lower bound on b (2/alpha on a). Requires alpha >= 2.
double lower_bound_one_step(double alpha);

/// 1/(alpha-1), the two-step lower bound on b. Requires alpha > 1.
double lower_bound_two_step_closed(double alpha);
/// Same bound for the unrooted average: 2/(alpha-1).
double lower_bound_two_step_closed_a(double alpha);

/// Refined one-step bound on A for a graph with n vertices and m edges:
/// 2/alpha - 4m/(n(n-1)).
double lower_bound_neighbourhood(std::size_t n, std::uint64_t m);

struct TwoStepCertificate {
  std::vector<double> per_vertex_conductance_bound;  // indexed by vertex; 0 at the root
  double total = 0.0;
  double implied_B_lower = 0.0;  // n / total
  double budget = 0.0;           // (alpha - 1) n
  /// False when some non-root leaf hangs off a non-root vertex.
  bool applicable = true;
};

/// Upper bound on each vertex's conductance to the root after shorting
/// everything at distance >= 2 to the root.
TwoStepCertificate two_step_certificate(const RootedGraph& g);

/// Lower convex hull of a point set, evaluated piecewise linearly.
class BoundEnvelope {
public:
  explicit BoundEnvelope(std::vector<std::pair<double, double>> points);

  /// Throws std::domain_error outside [first alpha, last alpha].
  double operator()(double alpha) const;
  const std::vector<std::pair<double, double>>& hull() const { return hull_; }
  const std::vector<std::pair<double, double>>& points() const { return points_; }
  double min_alpha() const { return hull_.front().first; }
  double max_alpha() const { return hull_.back().first; }

private:
  std::vector<std::pair<double, double>> points_;
  std::vector<std::pair<double, double>> hull_;
};

/// (alpha-1)/(alpha(alpha-2)), the regular-graph value.
double regular_curve(double alpha);

inline constexpr double kSplitConstant = 0.5271865;
inline constexpr std::size_t kDefaultEnvelopeK = 64;

BoundEnvelope upper_envelope(std::vector<std::pair<double, double>> points);
/// (2,1), (10/3, 0.5271865) and the regular points for k = 3..K.
BoundEnvelope default_upper_envelope(std::size_t K = kDefaultEnvelopeK);

/// Largest convex f on [2, K] with f(2) <= 1 and f <= regular_curve.
double conjecture_f(double alpha, std::size_t K = 16);

/// Total resistance lower bound for a legal component with s vertices and
/// 2s-1+t conductance. In exact mode s = 1 returns 1/(t+1).
double qb_component_lower(std::size_t s, std::size_t t, bool exact = false);

/// (5-alpha)/3 up to 3.5, then 1/(alpha-3/2).
double qb_lower(double alpha);

struct GapRow {
  double alpha = 0.0;
  double envelope = 0.0;
  double qb = 0.0;
  double margin = 0.0;  // qb - envelope
  bool strict = false;
};

std::vector<GapRow> qb_gap_check(const std::vector<double>& alpha_grid, const BoundEnvelope& envelope);

/// Discriminant of the chord-versus-1/(x-3/2) quadratic between t and t+1, in doubles.
double appendixB_discriminant(std::int64_t t);

struct ExactDiscriminant {
  std::int64_t t = 0;
  std::string direct;     // b^2 - 4ac as a reduced fraction
  std::string quintic_t;  // closed form in t
  std::string quintic_s;  // closed form in s = t - 4
  bool forms_agree = false;
  bool negative = false;
};

/// The same discriminant in exact rational arithmetic, compared with both closed forms.
ExactDiscriminant appendixB_discriminant_exact(std::int64_t t);

struct SegmentChecks {
  double slope = 0.0;  // chord slope through (10/3, 0.528) and (4, 3/8)
  double qa = 0.0, qb = 0.0, qc = 0.0;
  double discriminant = 0.0;
  double discriminant_exact_point = 0.0;  // same quadratic with 0.5271865
  double lin_c0 = 0.0, lin_c1 = 0.0;      // (5-x)/3 - y(x) = c0 + c1 x
  double crossover = 0.0;
  bool matches_printed = false;  // every printed coefficient to 4 decimals
};

SegmentChecks appendixB_segment_checks();

/// CSV `alpha,lower_two_step,qb_lower,upper_envelope,conjecture_f,qb_margin`.
void write_bound_sweep(std::ostream& out, double lo, double hi, double step,
                       std::size_t K = kDefaultEnvelopeK);

}  // namespace resnet

#endif  // RESNET_BOUNDS_HPP
