#include "eam/fermion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "eam/error.hpp"

namespace eam {
namespace {

constexpr double kClampTol = 1e-12;
constexpr double kRangeTol = 1e-9;
constexpr double kFermiDegeneracyTol = 1e-10;

double bond_value(const HoppingSpec& spec, int bond, int n_sites) {
  // `bond` is the 1-based label i of the pair (i, i+1).
  switch (spec.profile) {
    case HoppingProfile::uniform:
      return 1.0;
    case HoppingProfile::dimerized: {
      const double sign = (bond % 2 == 1) ? 1.0 : -1.0;  // (-1)^{i+1}
      return 1.0 + (spec.flip_sign ? -sign : sign) * spec.delta;
    }
    case HoppingProfile::rainbow: {
      if (2 * bond == n_sites) return 1.0;
      return std::exp(-spec.h * (std::abs(bond - n_sites / 2.0) - 0.5));
    }
  }
  return 0.0;
}

void check_value_range(double x) {
  if (x < -kRangeTol || x > 1.0 + kRangeTol || std::isnan(x)) {
    throw Error("correlation-matrix eigenvalue " + std::to_string(x) + " outside [0,1]");
  }
}

}  // namespace

HoppingMatrix build_hopping(const HoppingSpec& spec, int n_sites, Boundary boundary) {
  if (n_sites < 2) throw std::invalid_argument("hopping chain needs at least 2 sites");
  if (spec.profile == HoppingProfile::dimerized && std::abs(spec.delta) > 1.0) {
    throw std::invalid_argument("dimerization requires |delta| <= 1");
  }
  if (spec.profile == HoppingProfile::rainbow) {
    if (n_sites % 2 != 0) throw std::invalid_argument("rainbow chain requires even n_sites");
    if (spec.h < 0.0) throw std::invalid_argument("rainbow chain requires h >= 0");
    if (boundary != Boundary::open) throw std::invalid_argument("rainbow chain is open");
  }

  HoppingMatrix out{n_sites, Eigen::MatrixXd::Zero(n_sites, n_sites), boundary};
  for (int i = 0; i + 1 < n_sites; ++i) {
    const double v = bond_value(spec, i + 1, n_sites);
    out.t(i, i + 1) = out.t(i + 1, i) = v;
  }
  // For N = 2 the closing bond is the same pair as (0,1) and is not doubled.
  if (boundary != Boundary::open && n_sites > 2) {
    double v = bond_value(spec, n_sites, n_sites);
    if (boundary == Boundary::antiperiodic) v = -v;
    out.t(n_sites - 1, 0) = out.t(0, n_sites - 1) = v;
  }
  return out;
}

CorrelationMatrix ground_state_correlation(const HoppingMatrix& hopping,
                                           std::optional<int> n_occupied) {
  const int n = hopping.n_sites;
  const int n_occ = n_occupied.value_or(n / 2);
  if (n_occ < 0 || n_occ > n) throw std::invalid_argument("n_occupied out of range");

  const Eigen::MatrixXd single_particle = -0.5 * hopping.t;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(single_particle);
  if (eig.info() != Eigen::Success) throw Error("hopping-matrix diagonalisation failed");

  CorrelationMatrix out;
  out.n_sites = n;
  out.n_occupied = n_occ;
  const Eigen::MatrixXd occupied = eig.eigenvectors().leftCols(n_occ);
  // C_ij = sum_k conj(U_ik) U_jk; eigenvectors are real here.
  out.c = (occupied * occupied.transpose()).cast<std::complex<double>>();

  if (n_occ > 0 && n_occ < n) {
    const auto& e = eig.eigenvalues();
    if (e(n_occ) - e(n_occ - 1) < kFermiDegeneracyTol) {
      out.warnings.push_back("degenerate Fermi level (gap " +
                             std::to_string(e(n_occ) - e(n_occ - 1)) +
                             "); occupied orbitals chosen by eigensolver order, block "
                             "entropies depend on this choice");
    }
  }
  return out;
}

double binary_entropy(double x) {
  check_value_range(x);
  if (x <= kClampTol || x >= 1.0 - kClampTol) return 0.0;
  return -(x * std::log(x) + (1.0 - x) * std::log1p(-x));
}

double mode_entropy(double nu, int renyi_n) {
  if (renyi_n == 1) return binary_entropy(nu);
  if (renyi_n < 2) throw std::invalid_argument("Renyi order must be 1 or >= 2");
  check_value_range(nu);
  nu = std::clamp(nu, 0.0, 1.0);
  return std::log(std::pow(nu, renyi_n) + std::pow(1.0 - nu, renyi_n)) / (1.0 - renyi_n);
}

RestrictedSpectrum restricted_spectrum(const CorrelationMatrix& corr, const BlockMask& block,
                                       bool want_modes) {
  const auto sites = block.sites();
  const auto m = static_cast<Eigen::Index>(sites.size());
  Eigen::MatrixXcd sub(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b < m; ++b) sub(a, b) = corr.c(sites[a], sites[b]);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(
      sub, want_modes ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw Error("restricted correlation matrix diagonalisation failed");
  RestrictedSpectrum out;
  out.nu = eig.eigenvalues();
  for (Eigen::Index p = 0; p < m; ++p) check_value_range(out.nu(p));
  if (want_modes) out.modes = eig.eigenvectors();
  return out;
}

double fermion_block_entropy(const CorrelationMatrix& corr, const BlockMask& block, int renyi_n) {
  if (block.n_sites() != corr.n_sites) throw std::invalid_argument("mask size mismatch");
  if (block.is_trivial()) {
    throw std::invalid_argument("block must be a nonempty proper subset");
  }
  const auto spec = restricted_spectrum(corr, block, false);
  double s = 0.0;
  for (Eigen::Index p = 0; p < spec.nu.size(); ++p) s += mode_entropy(spec.nu(p), renyi_n);
  return s;
}

}  // namespace eam
