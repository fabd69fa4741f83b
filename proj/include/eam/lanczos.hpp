#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace eam {

using MatVec = std::function<void(std::span<const double>, std::span<double>)>;

struct LanczosOptions {
  int krylov_dim = 120;
  int max_restarts = 400;
  double tolerance = 1e-10;  // on ||H x - E x||
  std::uint64_t seed = 0x5eed;
};

struct LanczosResult {
  double eigenvalue = 0.0;
  Eigen::VectorXd eigenvector;
  double residual = 0.0;
  int matvecs = 0;
  bool converged = false;
};

/// Lowest eigenpair of a real symmetric operator by explicitly restarted
/// Lanczos with full reorthogonalisation. The search is kept orthogonal to
/// `deflate` (orthonormal vectors), which yields the next level up.
LanczosResult lanczos_lowest(const MatVec& apply, Eigen::Index dim, const LanczosOptions& opts,
                             std::span<const Eigen::VectorXd> deflate = {});

}  // namespace eam
