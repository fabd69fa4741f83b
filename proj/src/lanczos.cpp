#include "eam/lanczos.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace eam {
namespace {

void project_out(Eigen::VectorXd& v, std::span<const Eigen::VectorXd> basis) {
  for (const auto& b : basis) v -= b.dot(v) * b;
}

Eigen::VectorXd start_vector(Eigen::Index dim, std::uint64_t seed) {
  // Integer draws only, so the start vector is identical on every platform.
  std::mt19937_64 gen(seed);
  Eigen::VectorXd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    v(i) = static_cast<double>(gen() >> 11) * 0x1.0p-53 - 0.5;
  }
  return v;
}

}  // namespace

LanczosResult lanczos_lowest(const MatVec& apply, Eigen::Index dim, const LanczosOptions& opts,
                             std::span<const Eigen::VectorXd> deflate) {
  if (dim <= 0) throw std::invalid_argument("empty operator");
  const Eigen::Index m_max =
      std::min<Eigen::Index>(std::max(opts.krylov_dim, 2), dim - static_cast<Eigen::Index>(deflate.size()));
  if (m_max < 1) throw std::invalid_argument("deflation space fills the whole operator");

  LanczosResult res;
  Eigen::VectorXd v = start_vector(dim, opts.seed);
  project_out(v, deflate);
  project_out(v, deflate);
  v.normalize();

  Eigen::MatrixXd basis(dim, m_max);
  Eigen::VectorXd w(dim);
  std::vector<double> alpha, beta;

  for (int restart = 0; restart <= opts.max_restarts; ++restart) {
    alpha.clear();
    beta.clear();
    basis.col(0) = v;
    Eigen::Index m = 0;
    for (Eigen::Index j = 0; j < m_max; ++j) {
      apply({basis.col(j).data(), static_cast<std::size_t>(dim)}, {w.data(), static_cast<std::size_t>(dim)});
      ++res.matvecs;
      project_out(w, deflate);
      const double a = basis.col(j).dot(w);
      alpha.push_back(a);
      m = j + 1;
      // two passes of classical Gram-Schmidt against the whole Krylov basis
      for (int pass = 0; pass < 2; ++pass) {
        const Eigen::VectorXd coeff = basis.leftCols(m).transpose() * w;
        w.noalias() -= basis.leftCols(m) * coeff;
      }
      project_out(w, deflate);
      const double b = w.norm();
      if (j + 1 == m_max || b < 1e-13 * std::max(1.0, std::abs(a))) break;
      beta.push_back(b);
      basis.col(j + 1) = w / b;
    }

    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      tri(i, i) = alpha[static_cast<std::size_t>(i)];
      if (i + 1 < m) tri(i, i + 1) = tri(i + 1, i) = beta[static_cast<std::size_t>(i)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(tri);
    const Eigen::VectorXd y = eig.eigenvectors().col(0);
    v = basis.leftCols(m) * y;
    project_out(v, deflate);
    v.normalize();

    apply({v.data(), static_cast<std::size_t>(dim)}, {w.data(), static_cast<std::size_t>(dim)});
    ++res.matvecs;
    project_out(w, deflate);
    const double theta = v.dot(w);
    res.eigenvalue = theta;
    res.residual = (w - theta * v).norm();
    res.eigenvector = v;
    if (res.residual <= opts.tolerance) {
      res.converged = true;
      return res;
    }
  }
  return res;
}

}  // namespace eam
