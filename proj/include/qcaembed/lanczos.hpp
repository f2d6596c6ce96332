#pragma once

#include <Eigen/Dense>

#include <functional>
#include <span>
#include <vector>

namespace qcaembed {

using LinearOperator = std::function<void(std::span<const double> x, std::span<double> y)>;

struct EigenPair {
  double value = 0.0;
  Eigen::VectorXd vector;
  int iterations = 0;
};

struct LanczosOptions {
  int krylov_dim = 60;
  int max_restarts = 200;
  double tolerance = 1e-11;  // residual norm of the Ritz pair
};

/// Lowest eigenpair of a symmetric operator restricted to the orthogonal
/// complement of `deflate` (orthonormal vectors). Thick-free restarted Lanczos
/// with full reorthogonalisation, started from `start` (projected and
/// normalised; may be empty).
EigenPair lanczos_lowest(const LinearOperator& op, int dim, const Eigen::VectorXd& start,
                         const std::vector<Eigen::VectorXd>& deflate, const LanczosOptions& options = {});

} // namespace qcaembed
