#include "eam/metric.hpp"

#include <algorithm>
#include <stdexcept>

#include "eam/error.hpp"

namespace eam {

void MetricConfig::validate() const {
  if (!(l0 > 0.0)) throw std::invalid_argument("l0 must be positive");
  if (!(j_max > 0.0)) throw std::invalid_argument("J_max must be positive");
  if (!(exponent < 0.0)) throw std::invalid_argument("exponent must be negative");
}

double phi(double j, const MetricConfig& config) {
  if (j < 0.0) {
    if (config.negative == NegativePolicy::error) {
      throw Error("negative EAM entry " + std::to_string(j) + " under the error policy");
    }
    return kUnreachable;
  }
  if (j == 0.0) return kUnreachable;
  return config.l0 * std::pow(j / config.j_max, config.exponent);
}

Eigen::MatrixXd single_step_distances(const Eam& eam, const MetricConfig& config, int* negative_count) {
  config.validate();
  const int n = eam.n_sites();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  int negatives = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (eam(i, j) < 0.0) ++negatives;
      d(i, j) = d(j, i) = phi(eam(i, j), config);
    }
  }
  if (negative_count) *negative_count = negatives;
  return d;
}

ShortestPaths shortest_paths(const Eigen::MatrixXd& weights) {
  const auto n = weights.rows();
  if (weights.cols() != n) throw std::invalid_argument("weight matrix must be square");
  ShortestPaths sp{weights, Eigen::MatrixXi::Constant(n, n, -1)};
  for (Eigen::Index i = 0; i < n; ++i) {
    sp.d(i, i) = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (weights(i, j) < 0.0) throw std::invalid_argument("negative edge weight");
      if (std::isfinite(sp.d(i, j))) sp.next(i, j) = static_cast<int>(j);
    }
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    // Row k and column k are fixed points of pivot k, so rows are independent.
#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < n; ++i) {
      const double dik = sp.d(i, k);
      if (!std::isfinite(dik) || i == k) continue;
      for (Eigen::Index j = 0; j < n; ++j) {
        const double via = dik + sp.d(k, j);
        if (via < sp.d(i, j)) {
          sp.d(i, j) = via;
          sp.next(i, j) = sp.next(i, k);
        }
      }
    }
  }
  return sp;
}

GeodesicResult geodesic_distances(const Eam& eam, const MetricConfig& config) {
  GeodesicResult r;
  const Eigen::MatrixXd w = single_step_distances(eam, config, &r.negative_count);
  r.paths = shortest_paths(w);
  for (int i = 0; i < eam.n_sites(); ++i) {
    bool linked = false;
    for (int j = 0; j < eam.n_sites(); ++j) linked = linked || (j != i && std::isfinite(w(i, j)));
    if (!linked) r.disconnected.push_back(i);
  }
  return r;
}

std::vector<int> witness_path(const ShortestPaths& sp, int i, int j) {
  const auto n = sp.d.rows();
  if (i < 0 || j < 0 || i >= n || j >= n) throw std::out_of_range("site out of range");
  if (sp.next(i, j) < 0 && i != j) return {};
  std::vector<int> path{i};
  int at = i;
  while (at != j) {
    at = sp.next(at, j);
    path.push_back(at);
    if (static_cast<Eigen::Index>(path.size()) > n) throw Error("next-hop table contains a cycle");
  }
  return path;
}

TriangleReport triangle_audit(const Eigen::MatrixXd& d, double tolerance) {
  const auto n = d.rows();
  TriangleReport r;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (d(i, i) != 0.0) r.zero_diagonal = false;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (d(i, j) != d(j, i)) r.symmetric = false;
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index k = 0; k < n; ++k) {
        ++r.triples;
        const double excess = d(i, k) - (d(i, j) + d(j, k));
        if (excess > tolerance) {
          ++r.violations;
          r.worst_excess = std::max(r.worst_excess, excess);
          if (r.listed.size() < 100) {
            r.listed.push_back({static_cast<int>(i), static_cast<int>(j), static_cast<int>(k), excess});
          }
        }
      }
    }
  }
  return r;
}

}  // namespace eam
