#include "eam/spin.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "eam/error.hpp"

namespace eam {
namespace {

std::vector<std::pair<int, int>> ring_bonds(int n) {
  std::vector<std::pair<int, int>> bonds;
  for (int i = 0; i + 1 < n; ++i) bonds.emplace_back(i, i + 1);
  if (n > 2) bonds.emplace_back(n - 1, 0);
  return bonds;
}

/// deposit[a] scatters the bits of a onto the listed sites.
std::vector<std::uint64_t> deposit_table(const std::vector<int>& sites) {
  const std::size_t count = std::size_t{1} << sites.size();
  std::vector<std::uint64_t> out(count, 0);
  for (std::size_t a = 1; a < count; ++a) {
    const int low = std::countr_zero(a);
    out[a] = out[a & (a - 1)] | (std::uint64_t{1} << sites[static_cast<std::size_t>(low)]);
  }
  return out;
}

void check_state(const PureStateVector& psi) {
  if (psi.n_sites < 1 || psi.n_sites > 24 ||
      psi.amplitudes.size() != (Eigen::Index{1} << psi.n_sites)) {
    throw std::invalid_argument("state vector length is not 2^n_sites");
  }
}

}  // namespace

PureStateVector product_state(int n_sites, std::uint64_t bits) {
  BlockMask check(n_sites, bits);
  PureStateVector psi{n_sites, Eigen::VectorXcd::Zero(Eigen::Index{1} << n_sites)};
  psi.amplitudes(static_cast<Eigen::Index>(check.bits())) = 1.0;
  return psi;
}

PureStateVector ghz_state(int n_sites) {
  PureStateVector psi = product_state(n_sites, 0);
  psi.amplitudes(0) = M_SQRT1_2;
  psi.amplitudes(static_cast<Eigen::Index>(BlockMask::full_bits(n_sites))) = M_SQRT1_2;
  return psi;
}

PureStateVector singlet_product(int n_sites, std::span<const std::pair<int, int>> pairs) {
  PureStateVector psi = product_state(n_sites, 0);
  psi.amplitudes.setZero();
  std::uint64_t used = 0;
  for (auto [i, j] : pairs) {
    const std::uint64_t pm = (std::uint64_t{1} << i) | (std::uint64_t{1} << j);
    if (i == j || (used & pm) != 0) throw std::invalid_argument("pairs must be disjoint");
    used |= pm;
  }
  const std::uint64_t count = std::uint64_t{1} << pairs.size();
  for (std::uint64_t choice = 0; choice < count; ++choice) {
    std::uint64_t s = 0;
    double sign = 1.0;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const auto [i, j] = pairs[k];
      if ((choice >> k) & 1U) {
        s |= std::uint64_t{1} << i;  // |10>
        sign = -sign;
      } else {
        s |= std::uint64_t{1} << j;  // |01>
      }
    }
    psi.amplitudes(static_cast<Eigen::Index>(s)) = sign * std::pow(M_SQRT1_2, static_cast<double>(pairs.size()));
  }
  return psi;
}

Eigen::VectorXd xxz_diagonal(const SpinHamiltonian& ham) {
  const auto bonds = ring_bonds(ham.n_sites);
  const Eigen::Index dim = Eigen::Index{1} << ham.n_sites;
  Eigen::VectorXd diag(dim);
#pragma omp parallel for schedule(static)
  for (Eigen::Index s = 0; s < dim; ++s) {
    double acc = 0.0;
    for (auto [i, j] : bonds) {
      const bool same = ((s >> i) & 1) == ((s >> j) & 1);
      acc += same ? 0.25 * ham.delta : -0.25 * ham.delta;
    }
    diag(s) = acc;
  }
  return diag;
}

void apply_xxz(const SpinHamiltonian& ham, std::span<const double> in, std::span<double> out) {
  const auto bonds = ring_bonds(ham.n_sites);
  const auto dim = static_cast<std::int64_t>(std::size_t{1} << ham.n_sites);
  if (static_cast<std::int64_t>(in.size()) != dim || static_cast<std::int64_t>(out.size()) != dim) {
    throw std::invalid_argument("apply_xxz: vector length mismatch");
  }
  // Row-wise gather: every output entry is owned by exactly one iteration.
#pragma omp parallel for schedule(static)
  for (std::int64_t s = 0; s < dim; ++s) {
    const double x = in[static_cast<std::size_t>(s)];
    double acc = 0.0;
    for (auto [i, j] : bonds) {
      const auto bi = (s >> i) & 1;
      const auto bj = (s >> j) & 1;
      if (bi == bj) {
        acc += 0.25 * ham.delta * x;
      } else {
        acc -= 0.25 * ham.delta * x;
        acc += 0.5 * in[static_cast<std::size_t>(s ^ ((std::int64_t{1} << i) | (std::int64_t{1} << j)))];
      }
    }
    out[static_cast<std::size_t>(s)] = acc;
  }
}

GroundState ground_state_vector(const SpinHamiltonian& ham, const LanczosOptions& opts) {
  if (ham.n_sites < 2) throw std::invalid_argument("XXZ ring needs at least 2 sites");
  if (ham.n_sites > ham.max_sites) {
    throw std::invalid_argument("n_sites " + std::to_string(ham.n_sites) +
                                " exceeds exact-diagonalisation cap " + std::to_string(ham.max_sites));
  }
  const Eigen::Index dim = Eigen::Index{1} << ham.n_sites;
  const MatVec op = [&ham](std::span<const double> in, std::span<double> out) { apply_xxz(ham, in, out); };

  const auto lowest = lanczos_lowest(op, dim, opts);
  if (!lowest.converged) {
    throw ConvergenceError("Lanczos did not converge (residual " + std::to_string(lowest.residual) +
                           " after " + std::to_string(lowest.matvecs) + " matvecs)");
  }

  GroundState gs;
  gs.energy = lowest.eigenvalue;
  gs.residual = lowest.residual;
  gs.matvecs = lowest.matvecs;

  // Next level from a run deflated against the ground state; a loose tolerance
  // suffices because only the gap size matters here.
  if (dim > 1) {
    LanczosOptions second = opts;
    second.tolerance = std::max(opts.tolerance, 1e-7);
    const Eigen::VectorXd gs_vec = lowest.eigenvector;
    const auto next = lanczos_lowest(op, dim, second, std::span<const Eigen::VectorXd>(&gs_vec, 1));
    gs.matvecs += next.matvecs;
    gs.gap = next.eigenvalue - lowest.eigenvalue;
    if (gs.gap < 1e-10) {
      gs.warnings.push_back("ground-state degeneracy detected (gap " + std::to_string(gs.gap) +
                            "); returning the vector selected by the fixed Lanczos start");
    }
  }

  Eigen::VectorXd v = lowest.eigenvector;
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  if (v(imax) < 0) v = -v;
  gs.state = PureStateVector{ham.n_sites, v.cast<std::complex<double>>()};
  return gs;
}

double spin_block_entropy(const PureStateVector& psi, const BlockMask& block, int renyi_n) {
  check_state(psi);
  if (block.n_sites() != psi.n_sites) throw std::invalid_argument("mask size mismatch");
  if (block.is_trivial()) throw std::invalid_argument("block must be a nonempty proper subset");
  if (renyi_n < 1) throw std::invalid_argument("Renyi order must be >= 1");

  // S_A = S_Abar for pure states: diagonalise on the smaller side.
  const BlockMask rows = (2 * block.size() <= psi.n_sites) ? block : block.complement();
  const auto row_dep = deposit_table(rows.sites());
  const auto col_dep = deposit_table(rows.complement().sites());

  Eigen::MatrixXcd m(static_cast<Eigen::Index>(row_dep.size()), static_cast<Eigen::Index>(col_dep.size()));
  for (std::size_t b = 0; b < col_dep.size(); ++b) {
    for (std::size_t a = 0; a < row_dep.size(); ++a) {
      m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
          psi.amplitudes(static_cast<Eigen::Index>(row_dep[a] | col_dep[b]));
    }
  }
  const Eigen::MatrixXcd gram = m * m.adjoint();
  const double trace = gram.trace().real();
  if (std::abs(trace - 1.0) > 1e-12) {
    throw std::invalid_argument("state is not normalised (norm^2 = " + std::to_string(trace) + ")");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw Error("reduced density matrix diagonalisation failed");

  double s = 0.0;
  if (renyi_n == 1) {
    for (Eigen::Index k = 0; k < eig.eigenvalues().size(); ++k) {
      const double p = eig.eigenvalues()(k);
      if (p > 1e-300) s -= p * std::log(p);
    }
  } else {
    double sum = 0.0;
    for (Eigen::Index k = 0; k < eig.eigenvalues().size(); ++k) {
      sum += std::pow(std::max(eig.eigenvalues()(k), 0.0), renyi_n);
    }
    s = std::log(sum) / (1.0 - renyi_n);
  }
  return std::max(s, 0.0);
}

}  // namespace eam
