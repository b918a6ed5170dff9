#include "linalg.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>

extern "C" {
void dpotrf_(const char* uplo, const int* n, double* a, const int* lda, int* info);
void dpotri_(const char* uplo, const int* n, double* a, const int* lda, int* info);
}

namespace resnet::detail {

namespace {

SparseMatrix from_pairs(std::size_t n, const std::vector<Eigen::Triplet<double>>& offdiag) {
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(2 * offdiag.size() + n);
  std::vector<double> diag(n, 0.0);
  for (const auto& t : offdiag) {
    trips.emplace_back(t.row(), t.col(), -t.value());
    trips.emplace_back(t.col(), t.row(), -t.value());
    diag[static_cast<std::size_t>(t.row())] += t.value();
    diag[static_cast<std::size_t>(t.col())] += t.value();
  }
  for (std::size_t i = 0; i < n; ++i)
    trips.emplace_back(static_cast<int>(i), static_cast<int>(i), diag[i]);
  SparseMatrix lap(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  lap.setFromTriplets(trips.begin(), trips.end());
  lap.makeCompressed();
  return lap;
}

}  // namespace

SparseMatrix laplacian(const Multigraph& g) {
  std::vector<Eigen::Triplet<double>> pairs;
  pairs.reserve(g.pairs().size());
  for (const auto& [uv, k] : g.pairs())
    pairs.emplace_back(static_cast<int>(uv.first), static_cast<int>(uv.second), static_cast<double>(k));
  return from_pairs(g.num_vertices(), pairs);
}

SparseMatrix laplacian(const WeightedNetwork& w) {
  std::vector<Eigen::Triplet<double>> pairs;
  pairs.reserve(w.pairs().size());
  for (const auto& [uv, c] : w.pairs())
    pairs.emplace_back(static_cast<int>(uv.first), static_cast<int>(uv.second), c);
  return from_pairs(w.num_vertices(), pairs);
}

SparseMatrix grounded(const SparseMatrix& lap, Vertex ground) {
  const auto n = static_cast<std::size_t>(lap.rows());
  if (ground >= n) throw InvalidVertex(ground);
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(lap.nonZeros()));
  auto shrink = [ground](Eigen::Index i) {
    return static_cast<int>(static_cast<std::size_t>(i) > ground ? i - 1 : i);
  };
  for (Eigen::Index col = 0; col < lap.outerSize(); ++col)
    for (SparseMatrix::InnerIterator it(lap, col); it; ++it) {
      if (static_cast<std::size_t>(it.row()) == ground || static_cast<std::size_t>(it.col()) == ground)
        continue;
      trips.emplace_back(shrink(it.row()), shrink(it.col()), it.value());
    }
  SparseMatrix out(static_cast<Eigen::Index>(n - 1), static_cast<Eigen::Index>(n - 1));
  out.setFromTriplets(trips.begin(), trips.end());
  out.makeCompressed();
  return out;
}

struct GroundedSolver::Impl {
  SparseMatrix matrix;
  std::unique_ptr<Eigen::SimplicialLDLT<SparseMatrix>> direct;
};

namespace {

// CG keeps per-solve statistics in the solver object, so each solve gets its own.
Eigen::VectorXd cg_solve(const SparseMatrix& a, const Eigen::VectorXd& rhs) {
  Eigen::ConjugateGradient<SparseMatrix, Eigen::Lower | Eigen::Upper> cg(a);
  cg.setTolerance(kCgTolerance);
  cg.setMaxIterations(std::max<Eigen::Index>(1000, 10 * a.rows()));
  Eigen::VectorXd x = cg.solve(rhs);
  if (cg.info() != Eigen::Success) throw std::runtime_error("conjugate gradient did not converge");
  return x;
}

}  // namespace

GroundedSolver::GroundedSolver(const SparseMatrix& lap, Vertex ground)
    : impl_(std::make_unique<Impl>()), n_(static_cast<std::size_t>(lap.rows())), ground_(ground) {
  if (n_ < 2) return;
  impl_->matrix = grounded(lap, ground);
  if (n_ <= kDirectLimit) {
    impl_->direct = std::make_unique<Eigen::SimplicialLDLT<SparseMatrix>>(impl_->matrix);
    if (impl_->direct->info() != Eigen::Success)
      throw std::runtime_error("grounded Laplacian factorization failed (graph disconnected?)");
  }
}

GroundedSolver::~GroundedSolver() = default;
GroundedSolver::GroundedSolver(GroundedSolver&&) noexcept = default;
GroundedSolver& GroundedSolver::operator=(GroundedSolver&&) noexcept = default;

Eigen::VectorXd GroundedSolver::potentials(const Eigen::VectorXd& injection) const {
  if (static_cast<std::size_t>(injection.size()) != n_)
    throw std::invalid_argument("injection vector has wrong size");
  Eigen::VectorXd full = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_));
  if (n_ < 2) return full;
  const auto g = static_cast<Eigen::Index>(ground_);
  const auto m = static_cast<Eigen::Index>(n_ - 1);
  Eigen::VectorXd rhs(m);
  rhs.head(g) = injection.head(g);
  rhs.tail(m - g) = injection.tail(m - g);
  Eigen::VectorXd sol;
  if (impl_->direct)
    sol = impl_->direct->solve(rhs);
  else
    sol = cg_solve(impl_->matrix, rhs);
  full.head(g) = sol.head(g);
  full.tail(m - g) = sol.tail(m - g);
  return full;
}

Eigen::MatrixXd grounded_inverse(const SparseMatrix& lap, Vertex ground) {
  const SparseMatrix reduced = grounded(lap, ground);
  Eigen::MatrixXd a = Eigen::MatrixXd(reduced);
  const int n = static_cast<int>(a.rows());
  if (n == 0) return a;
  int info = 0;
  const char uplo = 'L';
  dpotrf_(&uplo, &n, a.data(), &n, &info);
  if (info != 0)
    throw std::runtime_error("Cholesky factorization failed (info " + std::to_string(info) + ")");
  dpotri_(&uplo, &n, a.data(), &n, &info);
  if (info != 0) throw std::runtime_error("Cholesky inverse failed (info " + std::to_string(info) + ")");
  a.triangularView<Eigen::StrictlyUpper>() = a.transpose().triangularView<Eigen::StrictlyUpper>();
  return a;
}

Eigen::VectorXd grounded_inverse_diagonal(const SparseMatrix& lap, Vertex ground) {
  const auto n = static_cast<std::size_t>(lap.rows());
  if (n <= 1) return Eigen::VectorXd();
  if (n - 1 <= kDenseLimit) return grounded_inverse(lap, ground).diagonal();

  const SparseMatrix reduced = grounded(lap, ground);
  Eigen::VectorXd diag(static_cast<Eigen::Index>(n - 1));
  parallel_for(n - 1, [&](std::size_t i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n - 1));
    e[static_cast<Eigen::Index>(i)] = 1.0;
    const Eigen::VectorXd x = cg_solve(reduced, e);
    diag[static_cast<Eigen::Index>(i)] = x[static_cast<Eigen::Index>(i)];
  });
  return diag;
}

std::size_t worker_threads() {
  if (const char* env = std::getenv("RESNET_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min(worker_threads(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace resnet::detail
