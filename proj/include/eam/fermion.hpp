#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "eam/bitmask.hpp"

namespace eam {

enum class HoppingProfile { uniform, dimerized, rainbow };

struct HoppingSpec {
  HoppingProfile profile = HoppingProfile::uniform;
  double delta = 0.0;      // dimerization, |delta| <= 1
  double h = 0.0;          // rainbow inhomogeneity, h >= 0
  bool flip_sign = false;  // dimerized: make bond (0,1) the weak one
};

/// Hopping amplitudes t_ij of H = -1/2 sum_ij t_ij c_i^dag c_j.
struct HoppingMatrix {
  int n_sites = 0;
  Eigen::MatrixXd t;
  Boundary boundary = Boundary::open;
};

/// Nearest-neighbour profiles. Bond (i, i+1) in 1-based labels gets
///   uniform:   1
///   dimerized: 1 + (-1)^{i+1} delta   (bond (1,2) strong)
///   rainbow:   exp(-h (|i - N/2| - 1/2)), centre bond fixed to 1, open chain only.
/// Periodic adds the (N,1) bond; antiperiodic adds it with a minus sign.
HoppingMatrix build_hopping(const HoppingSpec& spec, int n_sites, Boundary boundary);

/// Two-point function C_ij = <c_i^dag c_j> of a Slater determinant.
struct CorrelationMatrix {
  int n_sites = 0;
  Eigen::MatrixXcd c;
  int n_occupied = 0;
  std::vector<std::string> warnings;
};

/// Fills the `n_occupied` lowest orbitals (default: half filling, floor(N/2)).
/// A degenerate Fermi level is resolved by the eigensolver's ascending order
/// and reported in `warnings`.
CorrelationMatrix ground_state_correlation(const HoppingMatrix& hopping,
                                           std::optional<int> n_occupied = std::nullopt);

/// H(x) = -x log x - (1-x) log(1-x), with x clamped to [0,1].
/// Throws eam::Error for x outside [-1e-9, 1+1e-9].
double binary_entropy(double x);

/// Contribution of one restricted eigenvalue to the Renyi-n entropy (n = 1: von Neumann).
double mode_entropy(double nu, int renyi_n);

/// Eigen-decomposition of C restricted to the sites of `block` (ascending eigenvalues).
struct RestrictedSpectrum {
  Eigen::VectorXd nu;
  Eigen::MatrixXcd modes;  // columns are eigenvectors, rows follow block.sites()
};
RestrictedSpectrum restricted_spectrum(const CorrelationMatrix& corr, const BlockMask& block,
                                       bool want_modes);

double fermion_block_entropy(const CorrelationMatrix& corr, const BlockMask& block,
                             int renyi_n = 1);

}  // namespace eam
