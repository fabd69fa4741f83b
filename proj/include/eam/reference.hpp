#pragma once

#include <span>

#include <Eigen/Dense>

#include "eam/entropy_table.hpp"
#include "eam/metric.hpp"
#include "eam/solver.hpp"
#include "eam/spin.hpp"

/// Straightforward serial versions of the parallel kernels, used as test
/// oracles and benchmark baselines.
namespace eam::reference {

/// Evaluates every mask (no complement mirroring) or the sampled masks, in order.
EntropyTable build_table(const EntropyFn& entropy, int n_sites, const SampleSpec& spec, TableMeta meta = {});

/// A^T S by explicit design rows and naive summation.
Eigen::VectorXd design_rhs(const EntropyTable& table, bool with_s0);

/// A^T A by enumerating all 2^N design rows.
Eigen::MatrixXd normal_matrix_brute(int n_sites, bool with_s0);

/// Scatter-style XXZ matvec: each basis state pushes into its neighbours.
void apply_xxz(const SpinHamiltonian& ham, std::span<const double> in, std::span<double> out);

/// Serial Floyd-Warshall.
ShortestPaths shortest_paths(const Eigen::MatrixXd& weights);

}  // namespace eam::reference
