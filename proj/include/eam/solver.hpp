#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "eam/bitmask.hpp"
#include "eam/entropy_table.hpp"

namespace eam {

/// Link columns are the pairs (i,j), i<j, in lexicographic order.
constexpr int link_count(int n_sites) { return n_sites * (n_sites - 1) / 2; }
constexpr int link_index(int i, int j, int n_sites) {
  return i * n_sites - i * (i + 1) / 2 + (j - i - 1);
}
std::pair<int, int> link_sites(int index, int n_sites);

struct FitDiagnostics {
  std::string method;
  std::size_t rows_used = 0;
  int n_params = 0;
  int rank = 0;
  bool rank_deficient = false;
  double condition = 1.0;      // of the design matrix (singular-value ratio)
  double residual_norm = 0.0;  // sqrt(sum (S - S_hat)^2) over the rows used
  std::vector<std::string> warnings;
};

/// Symmetric link weights J_ij (nats) with zero diagonal, plus an optional
/// offset s0. Stored through the link vector, so symmetry is structural.
class EntanglementAdjacencyMatrix {
 public:
  EntanglementAdjacencyMatrix(int n_sites, const Eigen::VectorXd& links,
                              std::optional<double> s0 = std::nullopt);
  /// Reads the upper triangle; throws unless the matrix is symmetric with zero diagonal.
  static EntanglementAdjacencyMatrix from_matrix(const Eigen::MatrixXd& j,
                                                 std::optional<double> s0 = std::nullopt);

  int n_sites() const { return n_sites_; }
  double operator()(int i, int j) const { return j_(i, j); }
  const Eigen::MatrixXd& matrix() const { return j_; }
  Eigen::VectorXd links() const;
  std::optional<double> s0() const { return s0_; }

  FitDiagnostics diagnostics;

 private:
  int n_sites_;
  Eigen::MatrixXd j_;
  std::optional<double> s0_;
};

using Eam = EntanglementAdjacencyMatrix;

/// S_hat_A = sum_{i in A, j not in A} J_ij + s0; 0 for the empty and full masks.
double predict_entropy(const Eam& eam, const BlockMask& mask);

/// A^T A over all 2^N masks: 2^{N-2}(I + 11^T) on the links; with s0 the extra
/// column (1 on every nontrivial mask) adds 2^{N-1} cross terms and 2^N - 2 on
/// its diagonal.
Eigen::MatrixXd normal_matrix_full(int n_sites, bool with_s0);

/// (A^T A)^{-1} = 2^{-(N-2)} (I - 11^T / (N_p + 1)) without s0.
Eigen::MatrixXd normal_inverse_closed_form(int n_sites);

/// A^T S over the masks present in the table, as a deterministic parallel reduction.
Eigen::VectorXd design_rhs(const EntropyTable& table, bool with_s0);

/// Least-squares fit over an exhaustive table through the normal equations.
Eam fit_full(const EntropyTable& table, bool with_s0 = false);

/// Least-squares fit over whatever masks the table holds (SVD, minimum-norm
/// when rank-deficient).
Eam fit_sampled(const EntropyTable& table, bool with_s0 = false);

struct MeanError {
  double value = 0.0;
  std::size_t masks = 0;
  bool exhaustive = false;  // false: mean over the available masks only
};

/// 2^{-N} sum_I |S_I - S_hat_I|.
MeanError error_mean(const Eam& eam, const EntropyTable& table);

struct BoundaryGroupError {
  int n_boundaries = 0;
  std::size_t count = 0;
  double mean_abs = 0.0;
  double mean_rel = 0.0;          // over masks with S_X > 0
  std::size_t zero_entropy = 0;   // masks left out of mean_rel
};

/// Errors grouped by boundary_count of the mask; empty and full masks are skipped.
std::vector<BoundaryGroupError> error_by_boundary(const Eam& eam, const EntropyTable& table,
                                                  Boundary boundary);

struct NegativeEntry {
  int i = 0;
  int j = 0;
  double value = 0.0;
};
std::vector<NegativeEntry> negative_entries(const Eam& eam, double threshold = -1e-8);

void save_eam(const Eam& eam, const std::string& path, TableFormat format,
              const std::string& config_json = {}, int display_log_base = 0);
Eam load_eam(const std::string& path, TableFormat format);

}  // namespace eam
