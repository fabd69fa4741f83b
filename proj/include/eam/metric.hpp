#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "eam/solver.hpp"

namespace eam {

enum class NegativePolicy { treat_as_zero, error };

struct MetricConfig {
  double l0 = 1.0;
  double j_max = std::numbers::ln2;
  double exponent = -0.5;
  NegativePolicy negative = NegativePolicy::treat_as_zero;
  void validate() const;
};

/// Infinite distances are IEEE +inf, never a large finite number.
inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

/// Single-step length l0 (J / J_max)^exponent; J = 0 maps to kUnreachable.
double phi(double j, const MetricConfig& config);

/// d_ij = phi(J_ij), zero diagonal. Counts negative entries in `negative_count`.
Eigen::MatrixXd single_step_distances(const Eam& eam, const MetricConfig& config, int* negative_count = nullptr);

struct ShortestPaths {
  Eigen::MatrixXd d;
  Eigen::MatrixXi next;  // next hop on a shortest i -> j path, -1 if unreachable
};

/// Floyd-Warshall over a symmetric nonnegative weight matrix (inf = no edge).
/// Rows are relaxed in parallel for each pivot; the result equals the serial one.
ShortestPaths shortest_paths(const Eigen::MatrixXd& weights);

struct GeodesicResult {
  ShortestPaths paths;
  int negative_count = 0;
  std::vector<int> disconnected;  // sites with no finite link
};

GeodesicResult geodesic_distances(const Eam& eam, const MetricConfig& config);

/// Site sequence i ... j of a shortest path; empty when unreachable.
std::vector<int> witness_path(const ShortestPaths& sp, int i, int j);

struct TriangleViolation {
  int i, j, k;
  double excess;  // D_ik - (D_ij + D_jk)
};

struct TriangleReport {
  std::size_t triples = 0;
  std::size_t violations = 0;
  double worst_excess = 0.0;
  bool symmetric = true;
  bool zero_diagonal = true;
  std::vector<TriangleViolation> listed;  // first 100
};

TriangleReport triangle_audit(const Eigen::MatrixXd& d, double tolerance = 1e-12);

}  // namespace eam
