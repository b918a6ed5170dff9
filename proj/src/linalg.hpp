#ifndef RESNET_SRC_LINALG_HPP
#define RESNET_SRC_LINALG_HPP

#include <cstddef>
#include <functional>
#include <memory>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "resnet/multigraph.hpp"

namespace resnet::detail {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Sparse solves switch from LDLT to Jacobi-preconditioned CG above this size.
inline constexpr std::size_t kDirectLimit = 2000;
/// Largest grounded system inverted densely; beyond it diagonals come from CG solves.
inline constexpr std::size_t kDenseLimit = 16000;
inline constexpr double kCgTolerance = 1e-10;

SparseMatrix laplacian(const Multigraph& g);
SparseMatrix laplacian(const WeightedNetwork& w);

/// Laplacian with row and column `ground` deleted; index i >= ground maps to vertex i+1.
SparseMatrix grounded(const SparseMatrix& lap, Vertex ground);

/// Factorization of a grounded Laplacian that returns full-length potential
/// vectors (zero at the ground). Read-only after construction.
class GroundedSolver {
public:
  GroundedSolver(const SparseMatrix& lap, Vertex ground);
  ~GroundedSolver();
  GroundedSolver(GroundedSolver&&) noexcept;
  GroundedSolver& operator=(GroundedSolver&&) noexcept;

  std::size_t size() const { return n_; }
  Vertex ground() const { return ground_; }
  /// Potentials for the given injections; the ground's entry of `injection` is ignored.
  Eigen::VectorXd potentials(const Eigen::VectorXd& injection) const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::size_t n_ = 0;
  Vertex ground_ = 0;
};

/// Dense inverse of the grounded Laplacian (symmetric, both triangles filled).
Eigen::MatrixXd grounded_inverse(const SparseMatrix& lap, Vertex ground);

/// Diagonal of the grounded inverse, indexed like grounded(lap, ground).
Eigen::VectorXd grounded_inverse_diagonal(const SparseMatrix& lap, Vertex ground);

/// Worker count from RESNET_THREADS (unset or 0 means hardware concurrency).
std::size_t worker_threads();

/// Runs body(i) for i in [0, count) on worker_threads() threads.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace resnet::detail

#endif  // RESNET_SRC_LINALG_HPP
