#include "qcaembed/lanczos.hpp"

#include <cmath>
#include <stdexcept>

namespace qcaembed {

namespace {

void project_out(Eigen::VectorXd& v, const std::vector<Eigen::VectorXd>& basis) {
  for (const auto& b : basis) v -= b.dot(v) * b;
}

Eigen::VectorXd fallback_start(int dim) {
  // Fixed, non-symmetric start so no symmetry sector is missed.
  Eigen::VectorXd v(dim);
  for (int k = 0; k < dim; ++k) v[k] = 1.0 + 0.5 * std::sin(1.0 + 0.7 * k) + 1e-3 * (k % 7);
  return v;
}

} // namespace

EigenPair lanczos_lowest(const LinearOperator& op, int dim, const Eigen::VectorXd& start,
                         const std::vector<Eigen::VectorXd>& deflate, const LanczosOptions& options) {
  if (dim <= static_cast<int>(deflate.size())) throw std::invalid_argument("nothing left after deflation");
  Eigen::VectorXd v = start.size() == dim ? start : fallback_start(dim);
  project_out(v, deflate);
  if (v.norm() < 1e-8) {
    v = fallback_start(dim);
    project_out(v, deflate);
  }
  v.normalize();

  const int m_max = std::min(options.krylov_dim, dim - static_cast<int>(deflate.size()));
  Eigen::MatrixXd basis(dim, m_max + 1);
  Eigen::VectorXd w(dim);
  EigenPair best;
  for (int restart = 0; restart < options.max_restarts; ++restart) {
    std::vector<double> alpha, beta;
    basis.col(0) = v;
    int m = 0;
    for (int j = 0; j < m_max; ++j) {
      op(std::span<const double>(basis.col(j).data(), dim), std::span<double>(w.data(), dim));
      project_out(w, deflate);
      const double a = basis.col(j).dot(w);
      alpha.push_back(a);
      // Two passes of classical Gram-Schmidt against the whole basis.
      for (int pass = 0; pass < 2; ++pass) {
        const Eigen::VectorXd coeff = basis.leftCols(j + 1).transpose() * w;
        w -= basis.leftCols(j + 1) * coeff;
        project_out(w, deflate);
      }
      m = j + 1;
      const double b = w.norm();
      if (b < 1e-13 || j + 1 == m_max) {
        beta.push_back(b);
        break;
      }
      beta.push_back(b);
      basis.col(j + 1) = w / b;
    }
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      t(i, i) = alpha[i];
      if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(t);
    const Eigen::VectorXd y = small.eigenvectors().col(0);
    best.value = small.eigenvalues()[0];
    best.vector = basis.leftCols(m) * y;
    best.vector.normalize();
    best.iterations += m;
    const double residual = std::abs(beta[m - 1] * y[m - 1]);
    if (residual < options.tolerance * std::max(1.0, std::abs(best.value)) || beta[m - 1] < 1e-13) return best;
    v = best.vector;
  }
  throw std::runtime_error("Lanczos did not converge");
}

} // namespace qcaembed
