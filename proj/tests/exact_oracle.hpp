#ifndef RESNET_TESTS_EXACT_ORACLE_HPP
#define RESNET_TESTS_EXACT_ORACLE_HPP

#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "resnet/multigraph.hpp"

namespace oracle {

using Rational = boost::multiprecision::cpp_rational;
using Matrix = std::vector<std::vector<Rational>>;

// Inverse of the Laplacian with row and column `ground` removed, by
// Gauss-Jordan elimination over the rationals. Row i >= ground is vertex i+1.
inline Matrix grounded_inverse(const resnet::Multigraph& g, resnet::Vertex ground) {
  const std::size_t n = g.num_vertices();
  const std::size_t k = n - 1;
  auto idx = [ground](resnet::Vertex v) { return v > ground ? v - 1 : v; };
  Matrix a(k, std::vector<Rational>(2 * k, Rational(0)));
  for (const auto& [uv, mult] : g.pairs()) {
    const auto [u, v] = uv;
    if (u != ground) a[idx(u)][idx(u)] += mult;
    if (v != ground) a[idx(v)][idx(v)] += mult;
    if (u != ground && v != ground) {
      a[idx(u)][idx(v)] -= mult;
      a[idx(v)][idx(u)] -= mult;
    }
  }
  for (std::size_t i = 0; i < k; ++i) a[i][k + i] = 1;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t piv = c;
    while (piv < k && a[piv][c] == 0) ++piv;
    if (piv == k) throw std::runtime_error("singular grounded Laplacian");
    std::swap(a[piv], a[c]);
    const Rational inv = 1 / a[c][c];
    for (auto& x : a[c]) x *= inv;
    for (std::size_t r = 0; r < k; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rational f = a[r][c];
      for (std::size_t j = c; j < 2 * k; ++j) a[r][j] -= f * a[c][j];
    }
  }
  Matrix out(k, std::vector<Rational>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) out[i][j] = a[i][k + j];
  return out;
}

inline Rational pair_resistance(const resnet::Multigraph& g, resnet::Vertex x, resnet::Vertex y) {
  if (x == y) return 0;
  const Matrix m = grounded_inverse(g, y);
  const std::size_t i = x > y ? x - 1 : x;
  return m[i][i];
}

// Sum of R_xy over unordered pairs.
inline Rational pairwise_total(const resnet::Multigraph& g) {
  const std::size_t n = g.num_vertices();
  if (n < 2) return 0;
  const Matrix m = grounded_inverse(g, n - 1);
  Rational trace = 0, sum = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    trace += m[i][i];
    for (std::size_t j = 0; j + 1 < n; ++j) sum += m[i][j];
  }
  return Rational(n) * trace - sum;
}

inline Rational average_resistance(const resnet::Multigraph& g) {
  const std::size_t n = g.num_vertices();
  return pairwise_total(g) / Rational(n * (n - 1) / 2);
}

// Sum over non-root vertices of the resistance to the root.
inline Rational root_total(const resnet::RootedGraph& rg) {
  const Matrix m = grounded_inverse(rg.graph(), rg.root());
  Rational t = 0;
  for (std::size_t i = 0; i < m.size(); ++i) t += m[i][i];
  return t;
}

inline Rational rooted_B(const resnet::RootedGraph& rg) {
  return root_total(rg) / Rational(rg.num_nonroot());
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace oracle

#endif  // RESNET_TESTS_EXACT_ORACLE_HPP
