#include "eam/solver.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "eam/parallel.hpp"
#include "eam/summation.hpp"

namespace eam {
namespace {

constexpr std::int64_t kChunk = 4096;
constexpr double kConditionWarn = 1e8;
constexpr double kRankTolerance = 1e-10;

int param_count(int n, bool with_s0) { return link_count(n) + (with_s0 ? 1 : 0); }

/// Calls f(column) for every link cut by `mask`.
template <class F>
void for_cut_links(std::uint64_t mask, int n, F&& f) {
  for (int i = 0; i < n; ++i) {
    const bool in_i = (mask >> i) & 1U;
    for (int j = i + 1; j < n; ++j) {
      if (in_i != static_cast<bool>((mask >> j) & 1U)) f(link_index(i, j, n));
    }
  }
}

double predict_bits(const Eam& eam, std::uint64_t mask) {
  const int n = eam.n_sites();
  const std::uint64_t full = BlockMask::full_bits(n);
  if (mask == 0 || mask == full) return 0.0;
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    if (!((mask >> i) & 1U)) continue;
    for (int j = 0; j < n; ++j) {
      if (!((mask >> j) & 1U)) s += eam(i, j);
    }
  }
  return s + eam.s0().value_or(0.0);
}

double residual_norm(const Eam& eam, std::span<const TableEntry> rows) {
  const double sq = deterministic_sum(static_cast<std::int64_t>(rows.size()), [&](std::int64_t k) {
    const auto& e = rows[static_cast<std::size_t>(k)];
    const double r = e.entropy - predict_bits(eam, e.mask);
    return r * r;
  });
  return std::sqrt(sq);
}

Eam make_eam(int n, const Eigen::VectorXd& x, bool with_s0) {
  const int np = link_count(n);
  std::optional<double> s0;
  if (with_s0) s0 = x(np);
  return Eam(n, x.head(np), s0);
}

void note_condition(FitDiagnostics& d) {
  if (d.rank_deficient) {
    d.warnings.push_back("rank-deficient system (rank " + std::to_string(d.rank) + " of " +
                         std::to_string(d.n_params) + "); minimum-norm solution");
  } else if (d.condition > kConditionWarn) {
    d.warnings.push_back("ill-conditioned design (condition " + std::to_string(d.condition) + ")");
  }
}

}  // namespace

std::pair<int, int> link_sites(int index, int n_sites) {
  if (index < 0 || index >= link_count(n_sites)) throw std::out_of_range("link index out of range");
  int i = 0;
  while (index >= n_sites - 1 - i) {
    index -= n_sites - 1 - i;
    ++i;
  }
  return {i, i + 1 + index};
}

EntanglementAdjacencyMatrix::EntanglementAdjacencyMatrix(int n_sites, const Eigen::VectorXd& links,
                                                         std::optional<double> s0)
    : n_sites_(n_sites), j_(Eigen::MatrixXd::Zero(n_sites, n_sites)), s0_(s0) {
  if (n_sites < 2 || n_sites > kMaxSites) throw std::invalid_argument("EAM needs 2..30 sites");
  if (links.size() != link_count(n_sites)) throw std::invalid_argument("link vector has wrong length");
  int k = 0;
  for (int i = 0; i < n_sites; ++i) {
    for (int j = i + 1; j < n_sites; ++j, ++k) {
      j_(i, j) = links(k);
      j_(j, i) = links(k);
    }
  }
}

EntanglementAdjacencyMatrix EntanglementAdjacencyMatrix::from_matrix(const Eigen::MatrixXd& j,
                                                                     std::optional<double> s0) {
  if (j.rows() != j.cols()) throw std::invalid_argument("EAM matrix must be square");
  const int n = static_cast<int>(j.rows());
  Eigen::VectorXd links(link_count(n));
  int k = 0;
  for (int a = 0; a < n; ++a) {
    if (j(a, a) != 0.0) throw std::invalid_argument("EAM diagonal must be zero");
    for (int b = a + 1; b < n; ++b, ++k) {
      if (std::abs(j(a, b) - j(b, a)) > 1e-12) throw std::invalid_argument("EAM matrix must be symmetric");
      links(k) = j(a, b);
    }
  }
  return EntanglementAdjacencyMatrix(n, links, s0);
}

Eigen::VectorXd EntanglementAdjacencyMatrix::links() const {
  Eigen::VectorXd v(link_count(n_sites_));
  int k = 0;
  for (int i = 0; i < n_sites_; ++i) {
    for (int j = i + 1; j < n_sites_; ++j) v(k++) = j_(i, j);
  }
  return v;
}

double predict_entropy(const Eam& eam, const BlockMask& mask) {
  if (mask.n_sites() != eam.n_sites()) throw std::invalid_argument("mask and EAM sizes differ");
  return predict_bits(eam, mask.bits());
}

Eigen::MatrixXd normal_matrix_full(int n_sites, bool with_s0) {
  if (n_sites < 2 || n_sites > kMaxSites) throw std::invalid_argument("n_sites out of range");
  const int np = link_count(n_sites);
  const double quarter = std::ldexp(1.0, n_sites - 2);
  Eigen::MatrixXd m = Eigen::MatrixXd::Constant(param_count(n_sites, with_s0), param_count(n_sites, with_s0), quarter);
  m.topLeftCorner(np, np).diagonal().array() += quarter;
  if (with_s0) {
    m.col(np).head(np).setConstant(2.0 * quarter);
    m.row(np).head(np).setConstant(2.0 * quarter);
    m(np, np) = std::ldexp(1.0, n_sites) - 2.0;
  }
  return m;
}

Eigen::MatrixXd normal_inverse_closed_form(int n_sites) {
  if (n_sites < 2 || n_sites > kMaxSites) throw std::invalid_argument("n_sites out of range");
  const int np = link_count(n_sites);
  Eigen::MatrixXd inv = Eigen::MatrixXd::Constant(np, np, -1.0 / (np + 1));
  inv.diagonal().array() += 1.0;
  return inv * std::ldexp(1.0, -(n_sites - 2));
}

Eigen::VectorXd design_rhs(const EntropyTable& table, bool with_s0) {
  const int n = table.n_sites();
  const int np = link_count(n);
  const int p = param_count(n, with_s0);
  const auto rows = table.entries();
  const std::uint64_t full = BlockMask::full_bits(n);
  const auto count = static_cast<std::int64_t>(rows.size());
  const std::int64_t n_chunks = (count + kChunk - 1) / kChunk;
  std::vector<std::vector<CompensatedSum>> partial(static_cast<std::size_t>(n_chunks),
                                                   std::vector<CompensatedSum>(static_cast<std::size_t>(p)));
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t c = 0; c < n_chunks; ++c) {
    auto& acc = partial[static_cast<std::size_t>(c)];
    const std::int64_t end = std::min(count, (c + 1) * kChunk);
    for (std::int64_t k = c * kChunk; k < end; ++k) {
      const auto& e = rows[static_cast<std::size_t>(k)];
      if (e.mask == 0 || e.mask == full) continue;
      for_cut_links(e.mask, n, [&](int col) { acc[static_cast<std::size_t>(col)].add(e.entropy); });
      if (with_s0) acc[static_cast<std::size_t>(np)].add(e.entropy);
    }
  }
  Eigen::VectorXd b(p);
  for (int col = 0; col < p; ++col) {
    CompensatedSum total;
    for (const auto& chunk : partial) total.add(chunk[static_cast<std::size_t>(col)]);
    b(col) = total.value();
  }
  return b;
}

Eam fit_full(const EntropyTable& table, bool with_s0) {
  if (!table.exhaustive()) {
    throw std::invalid_argument("fit_full needs an exhaustive table; use fit_sampled");
  }
  const int n = table.n_sites();
  const int np = link_count(n);
  const Eigen::VectorXd b = design_rhs(table, with_s0);
  FitDiagnostics d;
  d.rows_used = table.size();
  d.n_params = param_count(n, with_s0);
  Eigen::VectorXd x;
  if (!with_s0) {
    x = std::ldexp(1.0, -(n - 2)) * (b.array() - b.sum() / (np + 1)).matrix();
    d.method = "closed-form";
    d.rank = np;
    d.condition = std::sqrt(static_cast<double>(np + 1));
  } else {
    const Eigen::MatrixXd m = normal_matrix_full(n, true);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
    const Eigen::VectorXd lam = eig.eigenvalues();
    const double lmax = lam.maxCoeff();
    const double cut = lmax * 1e-12;
    Eigen::VectorXd inv_lam = Eigen::VectorXd::Zero(lam.size());
    double lmin = lmax;
    d.rank = 0;
    for (Eigen::Index k = 0; k < lam.size(); ++k) {
      if (lam(k) > cut) {
        inv_lam(k) = 1.0 / lam(k);
        lmin = std::min(lmin, lam(k));
        ++d.rank;
      }
    }
    const Eigen::MatrixXd& v = eig.eigenvectors();
    x = v * inv_lam.asDiagonal() * (v.transpose() * b);
    d.method = "normal-pseudoinverse";
    d.rank_deficient = d.rank < d.n_params;
    d.condition = d.rank_deficient ? std::numeric_limits<double>::infinity() : std::sqrt(lmax / lmin);
  }
  Eam eam = make_eam(n, x, with_s0);
  d.residual_norm = residual_norm(eam, table.entries());
  note_condition(d);
  eam.diagnostics = std::move(d);
  return eam;
}

Eam fit_sampled(const EntropyTable& table, bool with_s0) {
  const int n = table.n_sites();
  const int np = link_count(n);
  const int p = param_count(n, with_s0);
  const std::uint64_t full = BlockMask::full_bits(n);
  std::vector<TableEntry> rows;
  for (const auto& e : table.entries()) {
    if (e.mask != 0 && e.mask != full) rows.push_back(e);
  }
  if (static_cast<int>(rows.size()) < p) {
    throw std::invalid_argument("fit_sampled needs at least " + std::to_string(p) +
                                " nontrivial masks, table has " + std::to_string(rows.size()));
  }
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()), p);
  Eigen::VectorXd s(static_cast<Eigen::Index>(rows.size()));
#pragma omp parallel for schedule(static)
  for (std::int64_t r = 0; r < static_cast<std::int64_t>(rows.size()); ++r) {
    const auto& e = rows[static_cast<std::size_t>(r)];
    for_cut_links(e.mask, n, [&](int col) { a(r, col) = 1.0; });
    if (with_s0) a(r, np) = 1.0;
    s(r) = e.entropy;
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(kRankTolerance);
  FitDiagnostics d;
  d.method = "svd";
  d.rows_used = rows.size();
  d.n_params = p;
  d.rank = static_cast<int>(svd.rank());
  d.rank_deficient = d.rank < p;
  const auto& sv = svd.singularValues();
  d.condition = d.rank_deficient ? std::numeric_limits<double>::infinity() : sv(0) / sv(p - 1);
  const Eigen::VectorXd x = svd.solve(s);
  Eam eam = make_eam(n, x, with_s0);
  d.residual_norm = residual_norm(eam, rows);
  note_condition(d);
  eam.diagnostics = std::move(d);
  return eam;
}

MeanError error_mean(const Eam& eam, const EntropyTable& table) {
  if (eam.n_sites() != table.n_sites()) throw std::invalid_argument("EAM and table sizes differ");
  const auto rows = table.entries();
  const double total = deterministic_sum(static_cast<std::int64_t>(rows.size()), [&](std::int64_t k) {
    const auto& e = rows[static_cast<std::size_t>(k)];
    return std::abs(e.entropy - predict_bits(eam, e.mask));
  });
  MeanError out;
  out.masks = rows.size();
  out.exhaustive = table.exhaustive();
  out.value = rows.empty() ? 0.0 : total / static_cast<double>(rows.size());
  return out;
}

std::vector<BoundaryGroupError> error_by_boundary(const Eam& eam, const EntropyTable& table,
                                                  Boundary boundary) {
  if (eam.n_sites() != table.n_sites()) throw std::invalid_argument("EAM and table sizes differ");
  const int n = table.n_sites();
  struct Acc {
    std::size_t count = 0, zero = 0, rel_count = 0;
    CompensatedSum abs, rel;
  };
  std::vector<Acc> acc(static_cast<std::size_t>(n + 1));
  for (const auto& e : table.entries()) {
    const BlockMask m(n, e.mask);
    if (m.is_trivial()) continue;
    auto& g = acc[static_cast<std::size_t>(boundary_count(m, boundary))];
    const double err = std::abs(e.entropy - predict_bits(eam, e.mask));
    ++g.count;
    g.abs.add(err);
    if (e.entropy > 0.0) {
      g.rel.add(err / e.entropy);
      ++g.rel_count;
    } else {
      ++g.zero;
    }
  }
  std::vector<BoundaryGroupError> out;
  for (int nb = 0; nb <= n; ++nb) {
    const auto& g = acc[static_cast<std::size_t>(nb)];
    if (g.count == 0) continue;
    BoundaryGroupError r;
    r.n_boundaries = nb;
    r.count = g.count;
    r.mean_abs = g.abs.value() / static_cast<double>(g.count);
    r.mean_rel = g.rel_count ? g.rel.value() / static_cast<double>(g.rel_count) : 0.0;
    r.zero_entropy = g.zero;
    out.push_back(r);
  }
  return out;
}

std::vector<NegativeEntry> negative_entries(const Eam& eam, double threshold) {
  std::vector<NegativeEntry> out;
  for (int i = 0; i < eam.n_sites(); ++i) {
    for (int j = i + 1; j < eam.n_sites(); ++j) {
      if (eam(i, j) < threshold) out.push_back({i, j, eam(i, j)});
    }
  }
  return out;
}

}  // namespace eam
