#include "resnet/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <ostream>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

#include "resnet/resistance.hpp"

namespace resnet {

double lower_bound_one_step(double alpha) {
  if (!(alpha >= 2.0)) throw std::domain_error("average degree below 2 is outside the model");
  return 1.0 / alpha;
}

double lower_bound_two_step_closed(double alpha) {
  if (!(alpha > 1.0)) throw std::domain_error("two-step bound needs alpha > 1");
  return 1.0 / (alpha - 1.0);
}

double lower_bound_two_step_closed_a(double alpha) { return 2.0 * lower_bound_two_step_closed(alpha); }

double lower_bound_neighbourhood(std::size_t n, std::uint64_t m) {
  if (n < 2 || m == 0) throw std::domain_error("need at least two vertices and one edge");
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m);
  return nd / md - 4.0 * md / (nd * (nd - 1.0));
}

TwoStepCertificate two_step_certificate(const RootedGraph& rg) {
  const Multigraph& g = rg.graph();
  const Vertex root = rg.root();
  const std::size_t n = g.num_vertices();
  TwoStepCertificate c;
  c.per_vertex_conductance_bound.assign(n, 0.0);
  for (Vertex x = 0; x < n; ++x) {
    if (x == root) continue;
    double bound = static_cast<double>(g.multiplicity(x, root));
    for (Vertex y : g.neighbors(x)) {
      if (y == root) continue;
      const double d = static_cast<double>(g.degree(y));
      if (g.degree(y) == 1) c.applicable = false;
      bound += static_cast<double>(g.multiplicity(x, y)) * (d - 1.0) / d;
    }
    c.per_vertex_conductance_bound[x] = bound;
    c.total += bound;
  }
  const double nn = static_cast<double>(rg.num_nonroot());
  c.budget = (rg.average_degree() - 1.0) * nn;
  c.implied_B_lower = c.total > 0.0 ? nn / c.total : 0.0;
  return c;
}

namespace {

double cross(const std::pair<double, double>& o, const std::pair<double, double>& a,
             const std::pair<double, double>& b) {
  return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
}

}  // namespace

BoundEnvelope::BoundEnvelope(std::vector<std::pair<double, double>> points) : points_(std::move(points)) {
  if (points_.size() < 2) throw std::invalid_argument("envelope needs at least two points");
  std::vector<std::pair<double, double>> sorted = points_;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i].first == sorted[i - 1].first) throw std::invalid_argument("envelope points need distinct alphas");
  for (const auto& p : sorted) {
    while (hull_.size() >= 2 && cross(hull_[hull_.size() - 2], hull_.back(), p) <= 0.0) hull_.pop_back();
    hull_.push_back(p);
  }
}

double BoundEnvelope::operator()(double alpha) const {
  if (!(alpha >= min_alpha() && alpha <= max_alpha()))
    throw std::domain_error("alpha " + format_number(alpha) + " outside envelope domain [" +
                            format_number(min_alpha()) + ", " + format_number(max_alpha()) + "]");
  auto it = std::lower_bound(hull_.begin(), hull_.end(), alpha,
                             [](const std::pair<double, double>& p, double a) { return p.first < a; });
  if (it->first == alpha) return it->second;
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double t = (alpha - lo.first) / (hi.first - lo.first);
  return lo.second + t * (hi.second - lo.second);
}

double regular_curve(double alpha) {
  if (!(alpha > 2.0)) throw std::domain_error("regular curve defined for alpha > 2");
  return (alpha - 1.0) / (alpha * (alpha - 2.0));
}

BoundEnvelope upper_envelope(std::vector<std::pair<double, double>> points) {
  return BoundEnvelope(std::move(points));
}

BoundEnvelope default_upper_envelope(std::size_t K) {
  if (K < 3) throw std::invalid_argument("envelope needs K >= 3");
  std::vector<std::pair<double, double>> pts{{2.0, 1.0}, {10.0 / 3.0, kSplitConstant}};
  for (std::size_t k = 3; k <= K; ++k) {
    const double kd = static_cast<double>(k);
    pts.emplace_back(kd, regular_curve(kd));
  }
  return BoundEnvelope(std::move(pts));
}

namespace {

double regular_slope(double x) { return -0.5 / (x * x) - 0.5 / ((x - 2.0) * (x - 2.0)); }

// Point where the tangent to the regular curve passes through (2, 1).
double tangent_point() {
  auto h = [](double t) { return regular_curve(t) + regular_slope(t) * (2.0 - t) - 1.0; };
  double lo = 2.0 + 1e-9, hi = 3.0;
  while (h(hi) > 0.0) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double conjecture_f(double alpha, std::size_t K) {
  if (K < 16) throw std::invalid_argument("conjecture_f needs K >= 16");
  const double kd = static_cast<double>(K);
  if (!(alpha >= 2.0 && alpha <= kd)) throw std::domain_error("conjecture_f defined on [2, K]");
  static const double t_star = tangent_point();
  const double t = std::min(t_star, kd);
  if (alpha >= t) return regular_curve(alpha);
  const double slope = (regular_curve(t) - 1.0) / (t - 2.0);
  return 1.0 + slope * (alpha - 2.0);
}

double qb_component_lower(std::size_t s, std::size_t t, bool exact) {
  if (s == 0) throw std::invalid_argument("component needs at least one vertex");
  const double sd = static_cast<double>(s);
  const double td = static_cast<double>(t);
  if (exact && s == 1) return 1.0 / (td + 1.0);
  const double formula = (sd + 2.0 - 2.0 * td) / 3.0;
  const double floor = sd * sd / (2.0 * (2.0 * sd - 1.0 + td));
  return std::max(formula, floor);
}

double qb_lower(double alpha) {
  if (!(alpha >= 2.0)) throw std::domain_error("qb_lower needs alpha >= 2");
  return alpha <= 3.5 ? (5.0 - alpha) / 3.0 : 1.0 / (alpha - 1.5);
}

std::vector<GapRow> qb_gap_check(const std::vector<double>& alpha_grid, const BoundEnvelope& envelope) {
  std::vector<GapRow> rows;
  rows.reserve(alpha_grid.size());
  for (double a : alpha_grid) {
    GapRow r;
    r.alpha = a;
    r.envelope = envelope(a);
    r.qb = qb_lower(a);
    r.margin = r.qb - r.envelope;
    r.strict = r.margin > 0.0;
    rows.push_back(r);
  }
  return rows;
}

namespace {

using boost::multiprecision::cpp_rational;

template <class T>
T curve(const T& x) {
  return (x - 1) / (x * (x - 2));
}

template <class T>
T discriminant_direct(const T& t) {
  const T l = curve(t);
  const T dl = curve(T(t + 1)) - l;
  const T a = dl;
  const T b = l - dl * (t + T(3) / 2);
  const T c = T(3) * t * dl / 2 - T(3) * l / 2 - 1;
  return b * b - 4 * a * c;
}

cpp_rational horner(std::initializer_list<int> coeffs, const cpp_rational& x) {
  cpp_rational acc = 0;
  for (int c : coeffs) acc = acc * x + c;
  return acc;
}

}  // namespace

double appendixB_discriminant(std::int64_t t) {
  if (t < 4) throw std::domain_error("discriminant check covers t >= 4");
  return discriminant_direct(static_cast<double>(t));
}

ExactDiscriminant appendixB_discriminant_exact(std::int64_t t) {
  if (t < 4) throw std::domain_error("discriminant check covers t >= 4");
  const cpp_rational tr(t);
  const cpp_rational direct = discriminant_direct(tr);

  const cpp_rational qt = horner({8, -41, 66, -71, 38, -1}, tr);
  const cpp_rational dt = 4 * (tr + 1) * (tr + 1) * (tr - 1) * (tr - 1) * tr * tr * (tr - 2) * (tr - 2);
  const cpp_rational by_t = -qt / dt;

  const cpp_rational s(t - 4);
  const cpp_rational qs = horner({8, 119, 690, 1905, 2382, 935}, s);
  const cpp_rational ds = 4 * (s + 5) * (s + 5) * (s + 3) * (s + 3) * (s + 4) * (s + 4) * (s + 2) * (s + 2);
  const cpp_rational by_s = -qs / ds;

  ExactDiscriminant r;
  r.t = t;
  r.direct = direct.str();
  r.quintic_t = by_t.str();
  r.quintic_s = by_s.str();
  r.forms_agree = direct == by_t && direct == by_s;
  r.negative = direct < 0;
  return r;
}

SegmentChecks appendixB_segment_checks() {
  SegmentChecks r;
  auto quadratic = [](double y0, double& a, double& b, double& c) {
    const double slope = (0.375 - y0) / (4.0 - 10.0 / 3.0);
    const double icpt = y0 - slope * 10.0 / 3.0;
    // y(x)(x - 3/2) - 1 = 0
    a = slope;
    b = icpt - 1.5 * slope;
    c = -1.5 * icpt - 1.0;
    return slope;
  };
  r.slope = quadratic(0.528, r.qa, r.qb, r.qc);
  r.discriminant = r.qb * r.qb - 4.0 * r.qa * r.qc;
  double a2, b2, c2;
  quadratic(kSplitConstant, a2, b2, c2);
  r.discriminant_exact_point = b2 * b2 - 4.0 * a2 * c2;

  const double icpt = 0.528 - r.slope * 10.0 / 3.0;
  r.lin_c0 = 5.0 / 3.0 - icpt;
  r.lin_c1 = -1.0 / 3.0 - r.slope;
  r.crossover = -r.lin_c0 / r.lin_c1;

  auto close = [](double got, double printed) { return std::abs(got - printed) < 5e-5; };
  r.matches_printed = close(r.slope, -0.2295) && close(r.qa, -0.2295) && close(r.qb, 1.63725) &&
                      close(r.qc, -2.9395) && close(r.lin_c0, 0.373666667) && close(r.lin_c1, -0.1038333333) &&
                      std::abs(r.crossover - 3.59) < 0.01;
  return r;
}

void write_bound_sweep(std::ostream& out, double lo, double hi, double step, std::size_t K) {
  if (!(lo >= 2.0 && hi > lo && step > 0.0)) throw std::invalid_argument("sweep needs 2 <= lo < hi and step > 0");
  const BoundEnvelope env = default_upper_envelope(K);
  if (hi > env.max_alpha()) throw std::domain_error("sweep exceeds the envelope domain");
  const std::size_t conj_k = std::max<std::size_t>(16, static_cast<std::size_t>(std::ceil(hi)));
  const auto rows = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  out << "alpha,lower_two_step,qb_lower,upper_envelope,conjecture_f,qb_margin\n";
  for (std::size_t i = 0; i < rows; ++i) {
    const double a = round15(lo + static_cast<double>(i) * step);
    const double e = env(a);
    const double q = qb_lower(a);
    out << format_number(a) << ',' << format_number(round15(lower_bound_two_step_closed(a))) << ','
        << format_number(round15(q)) << ',' << format_number(round15(e)) << ','
        << format_number(round15(conjecture_f(a, conj_k))) << ',' << format_number(round15(q - e)) << '\n';
  }
}

}  // namespace resnet
