#include "eam/reference.hpp"

#include <algorithm>
#include <stdexcept>

namespace eam::reference {
namespace {

Eigen::VectorXd design_row(std::uint64_t mask, int n, bool with_s0) {
  const int np = link_count(n);
  Eigen::VectorXd row = Eigen::VectorXd::Zero(np + (with_s0 ? 1 : 0));
  if (mask == 0 || mask == BlockMask::full_bits(n)) return row;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (((mask >> i) & 1U) != ((mask >> j) & 1U)) row(link_index(i, j, n)) = 1.0;
    }
  }
  if (with_s0) row(np) = 1.0;
  return row;
}

}  // namespace

EntropyTable build_table(const EntropyFn& entropy, int n_sites, const SampleSpec& spec, TableMeta meta) {
  meta.sampling = spec.describe();
  meta.complement_mirrored = false;
  std::vector<TableEntry> entries;
  if (spec.mode == SampleSpec::Mode::exhaustive) {
    const std::uint64_t total = std::uint64_t{1} << n_sites;
    for (std::uint64_t m = 0; m < total; ++m) {
      const BlockMask mask(n_sites, m);
      entries.push_back({m, mask.is_trivial() ? 0.0 : entropy(mask)});
    }
  } else {
    for (auto m : sample_masks(n_sites, spec.count, spec.seed)) entries.push_back({m, entropy(BlockMask(n_sites, m))});
  }
  return EntropyTable(n_sites, std::move(entries), std::move(meta));
}

Eigen::VectorXd design_rhs(const EntropyTable& table, bool with_s0) {
  const int n = table.n_sites();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(link_count(n) + (with_s0 ? 1 : 0));
  for (const auto& e : table.entries()) b += e.entropy * design_row(e.mask, n, with_s0);
  return b;
}

Eigen::MatrixXd normal_matrix_brute(int n_sites, bool with_s0) {
  const int p = link_count(n_sites) + (with_s0 ? 1 : 0);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(p, p);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n_sites); ++mask) {
    const Eigen::VectorXd row = design_row(mask, n_sites, with_s0);
    m += row * row.transpose();
  }
  return m;
}

void apply_xxz(const SpinHamiltonian& ham, std::span<const double> in, std::span<double> out) {
  const int n = ham.n_sites;
  const std::size_t dim = std::size_t{1} << n;
  if (in.size() != dim || out.size() != dim) throw std::invalid_argument("apply_xxz: vector length mismatch");
  std::vector<std::pair<int, int>> bonds;
  for (int i = 0; i + 1 < n; ++i) bonds.emplace_back(i, i + 1);
  if (n > 2) bonds.emplace_back(n - 1, 0);
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t s = 0; s < dim; ++s) {
    for (auto [i, j] : bonds) {
      const bool same = ((s >> i) & 1U) == ((s >> j) & 1U);
      out[s] += (same ? 0.25 : -0.25) * ham.delta * in[s];
      if (!same) out[s ^ ((std::size_t{1} << i) | (std::size_t{1} << j))] += 0.5 * in[s];
    }
  }
}

ShortestPaths shortest_paths(const Eigen::MatrixXd& weights) {
  const auto n = weights.rows();
  ShortestPaths sp{weights, Eigen::MatrixXi::Constant(n, n, -1)};
  for (Eigen::Index i = 0; i < n; ++i) {
    sp.d(i, i) = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (std::isfinite(sp.d(i, j))) sp.next(i, j) = static_cast<int>(j);
    }
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        if (sp.d(i, k) + sp.d(k, j) < sp.d(i, j)) {
          sp.d(i, j) = sp.d(i, k) + sp.d(k, j);
          sp.next(i, j) = sp.next(i, k);
        }
      }
    }
  }
  return sp;
}

}  // namespace eam::reference
