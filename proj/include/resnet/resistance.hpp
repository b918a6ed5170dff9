#ifndef RESNET_RESISTANCE_HPP
#define RESNET_RESISTANCE_HPP

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "resnet/multigraph.hpp"

namespace resnet {

/// Result variant for quantities that are infinite on disconnected graphs.
struct Disconnected {
  std::size_t components = 0;
};

template <class T>
using OrDisconnected = std::variant<T, Disconnected>;

class DisconnectedError : public std::runtime_error {
public:
  explicit DisconnectedError(std::size_t components)
      : std::runtime_error("infinite average resistance: graph has " + std::to_string(components) +
                           " components") {}
};

template <class T>
bool is_disconnected(const OrDisconnected<T>& r) {
  return std::holds_alternative<Disconnected>(r);
}

/// The finite value, or DisconnectedError.
template <class T>
const T& finite(const OrDisconnected<T>& r) {
  if (const T* v = std::get_if<T>(&r)) return *v;
  throw DisconnectedError(std::get<Disconnected>(r).components);
}

struct ResistanceSummary {
  std::size_t n = 0;
  std::uint64_t m = 0;
  double alpha = 0.0;
  double pairwise_total = 0.0;  // sum over unordered pairs of R_xy
  double A = 0.0;               // mean over unordered pairs
  double A_prime = 0.0;         // mean over ordered pairs, x = y included
  double max_pair_resistance = 0.0;
};

struct RootedSummary {
  std::size_t n_nonroot = 0;
  double B = 0.0;
  double R_tot = 0.0;
  std::vector<double> per_vertex;  // R to the root, indexed by vertex; 0 at the root
};

/// Effective resistance between x and y (0 when x == y). Solves with each
/// endpoint grounded in turn and returns the mean.
OrDisconnected<double> pair_resistance(const Multigraph& g, Vertex x, Vertex y);

/// All pairwise resistances from one dense grounded inverse.
OrDisconnected<ResistanceSummary> resistance_summary(const Multigraph& g);

/// Resistances to the root. Pendant trees are peeled off before solving.
OrDisconnected<RootedSummary> rooted_summary(const RootedGraph& g);

OrDisconnected<double> weighted_pair_resistance(const WeightedNetwork& w, Vertex x, Vertex y);
/// Mean of R_xy over unordered pairs of a weighted network.
OrDisconnected<double> weighted_average_resistance(const WeightedNetwork& w);

/// Nonzero Laplacian eigenvalues in ascending order (n-1 of them when connected).
std::vector<double> laplacian_spectrum(const Multigraph& g);

/// Sum of R_xy over unordered pairs computed as n * sum(1/lambda).
OrDisconnected<double> kirchhoff_index_by_eigenvalues(const Multigraph& g);

/// Rounds to 15 significant digits, the precision used in every JSON output.
double round15(double v);
/// Locale-independent shortest text for CSV and text output.
std::string format_number(double v);

void to_json(nlohmann::json& j, const ResistanceSummary& s);
void to_json(nlohmann::json& j, const RootedSummary& s);

void write_csv(std::ostream& out, const ResistanceSummary& s);
void write_csv(std::ostream& out, const RootedSummary& s);

}  // namespace resnet

#endif  // RESNET_RESISTANCE_HPP
