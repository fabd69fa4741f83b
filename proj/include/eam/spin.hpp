#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "eam/bitmask.hpp"
#include "eam/lanczos.hpp"

namespace eam {

/// 2^N amplitudes; basis index bit k is the state of site k.
struct PureStateVector {
  int n_sites = 0;
  Eigen::VectorXcd amplitudes;

  double norm() const { return amplitudes.norm(); }
};

PureStateVector product_state(int n_sites, std::uint64_t bits);
PureStateVector ghz_state(int n_sites);
/// Product of singlets (|01> - |10>)/sqrt(2) on the given site pairs.
PureStateVector singlet_product(int n_sites, std::span<const std::pair<int, int>> pairs);

/// Periodic XXZ ring H = sum_<ij> [S^x S^x + S^y S^y + delta S^z S^z] with
/// spin-1/2 operators. Bonds are the distinct pairs {i, i+1 mod N}.
struct SpinHamiltonian {
  int n_sites = 0;
  double delta = 1.0;
  int max_sites = 14;
};

/// H |in>, parallel over basis states.
void apply_xxz(const SpinHamiltonian& ham, std::span<const double> in, std::span<double> out);
Eigen::VectorXd xxz_diagonal(const SpinHamiltonian& ham);

struct GroundState {
  PureStateVector state;
  double energy = 0.0;
  double residual = 0.0;
  double gap = 0.0;  // to the next level found by a deflated run
  int matvecs = 0;
  std::vector<std::string> warnings;
};

/// Exact diagonalisation in the full 2^N space. The returned vector is real,
/// normalised, with its largest-magnitude amplitude positive.
GroundState ground_state_vector(const SpinHamiltonian& ham, const LanczosOptions& opts = {});

/// Entropy of rho_A from the Gram matrix of the amplitude reshaping M (2^|A| x 2^|Abar|),
/// built on the smaller side.
double spin_block_entropy(const PureStateVector& psi, const BlockMask& block, int renyi_n = 1);

}  // namespace eam
