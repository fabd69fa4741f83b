#include "eam/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "eam/parallel.hpp"

namespace eam {
namespace {

constexpr double kNegativeSlack = -1e-10;
constexpr std::size_t kMaxListed = 100;

double cut_weight(const Eam& eam, std::uint64_t u, std::uint64_t v) {
  double s = 0.0;
  for (int i = 0; i < eam.n_sites(); ++i) {
    if (!((u >> i) & 1U)) continue;
    for (int j = 0; j < eam.n_sites(); ++j) {
      if ((v >> j) & 1U) s += eam(i, j);
    }
  }
  return s;
}

void check_triple(const Triple& t) {
  if (t.a.empty() || t.b.empty() || t.c.empty()) throw std::invalid_argument("triple blocks must be nonempty");
  if (!disjoint(t.a, t.b) || !disjoint(t.b, t.c) || !disjoint(t.a, t.c)) {
    throw std::invalid_argument("triple blocks must be disjoint");
  }
}

struct Slacks {
  double ssa, wm, deviation;
};

SsaReport aggregate(std::span<const Triple> triples, const std::vector<Slacks>& slacks, double tol,
                    std::string source) {
  SsaReport r;
  r.source = std::move(source);
  r.triples = triples.size();
  r.min_ssa_slack = std::numeric_limits<double>::infinity();
  r.min_wm_slack = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < triples.size(); ++k) {
    const auto& s = slacks[k];
    r.min_ssa_slack = std::min(r.min_ssa_slack, s.ssa);
    r.min_wm_slack = std::min(r.min_wm_slack, s.wm);
    r.max_formula_deviation = std::max(r.max_formula_deviation, s.deviation);
    if (s.ssa < -tol) {
      ++r.ssa_violations;
      if (r.violations.size() < kMaxListed) r.violations.push_back({triples[k], "ssa", s.ssa});
    }
    if (s.wm < -tol) {
      ++r.wm_violations;
      if (r.violations.size() < kMaxListed) r.violations.push_back({triples[k], "weak-monotonicity", s.wm});
    }
  }
  if (triples.empty()) r.min_ssa_slack = r.min_wm_slack = 0.0;
  return r;
}

template <class Entropy>
std::vector<Slacks> compute_slacks(std::span<const Triple> triples, Entropy&& s, const Eam* eam) {
  std::vector<Slacks> out(triples.size());
  ExceptionCollector errors;
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(triples.size()); ++k) {
    errors.run([&] {
      const auto& t = triples[static_cast<std::size_t>(k)];
      check_triple(t);
      const std::uint64_t a = t.a.bits(), b = t.b.bits(), c = t.c.bits();
      const double s_ab = s(a | b), s_bc = s(b | c), s_abc = s(a | b | c), s_b = s(b);
      const double s_a = s(a), s_c = s(c);
      Slacks sl{s_ab + s_bc - s_abc - s_b, s_ab + s_bc - s_a - s_c, 0.0};
      if (eam) {
        const std::uint64_t full = BlockMask::full_bits(eam->n_sites());
        const std::uint64_t rest = full & ~(a | b | c);
        double ssa_expected = 2.0 * cut_weight(*eam, a, c);
        if (rest == 0) ssa_expected += eam->s0().value_or(0.0);
        const double wm_expected = 2.0 * cut_weight(*eam, b, rest);
        sl.deviation = std::max(std::abs(sl.ssa - ssa_expected), std::abs(sl.wm - wm_expected));
      }
      out[static_cast<std::size_t>(k)] = sl;
    });
  }
  errors.rethrow();
  return out;
}

}  // namespace

Eigen::MatrixXd pair_mutual_information(const EntropyTable& table) {
  const int n = table.n_sites();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const double sa = table.at(BlockMask(n, std::uint64_t{1} << a));
      const double sb = table.at(BlockMask(n, std::uint64_t{1} << b));
      const double sab = table.at(BlockMask(n, (std::uint64_t{1} << a) | (std::uint64_t{1} << b)));
      m(a, b) = m(b, a) = 0.5 * (sa + sb - sab);
    }
  }
  return m;
}

double block_mutual_information(const EntropyTable& table, const BlockMask& a, const BlockMask& b) {
  if (!disjoint(a, b)) throw std::invalid_argument("mutual information needs disjoint blocks");
  return table.at(a) + table.at(b) - table.at(a | b);
}

void validate_partition(const Partition& p) {
  if (p.empty()) throw std::invalid_argument("empty partition");
  const int n = p.front().n_sites();
  std::uint64_t seen = 0;
  for (const auto& blk : p) {
    if (blk.n_sites() != n) throw std::invalid_argument("partition blocks disagree on N");
    if (blk.empty()) throw std::invalid_argument("partition block is empty");
    if (seen & blk.bits()) throw std::invalid_argument("partition blocks overlap");
    seen |= blk.bits();
  }
  if (seen != BlockMask::full_bits(n)) throw std::invalid_argument("partition does not cover all sites");
}

Eam coarse_grain(const Eam& eam, const Partition& partition) {
  validate_partition(partition);
  if (partition.front().n_sites() != eam.n_sites()) throw std::invalid_argument("partition and EAM sizes differ");
  const int k = static_cast<int>(partition.size());
  if (k < 2) throw std::invalid_argument("coarse graining needs at least two blocks");
  Eigen::MatrixXd jb = Eigen::MatrixXd::Zero(k, k);
  for (int p = 0; p < k; ++p) {
    for (int q = p + 1; q < k; ++q) {
      jb(p, q) = jb(q, p) = cut_weight(eam, partition[p].bits(), partition[q].bits());
    }
  }
  return Eam::from_matrix(jb, eam.s0());
}

std::vector<double> directed_profile(const Eam& eam, int ref) {
  const int n = eam.n_sites();
  if (ref < 0 || ref >= n) throw std::out_of_range("reference site out of range");
  std::vector<double> out;
  for (int r = 1; r < n; ++r) out.push_back(eam(ref, (ref + r) % n));
  return out;
}

std::vector<double> chord_profile(const Eam& eam, int ref) {
  const int n = eam.n_sites();
  if (ref < 0 || ref >= n) throw std::out_of_range("reference site out of range");
  std::vector<double> out;
  for (int d = 1; d <= n / 2; ++d) out.push_back(0.5 * (eam(ref, (ref + d) % n) + eam(ref, (ref - d + n) % n)));
  return out;
}

std::vector<double> translation_averaged_profile(const Eam& eam) {
  const int n = eam.n_sites();
  std::vector<double> out(static_cast<std::size_t>(n / 2), 0.0);
  for (int ref = 0; ref < n; ++ref) {
    const auto p = chord_profile(eam, ref);
    for (std::size_t d = 0; d < p.size(); ++d) out[d] += p[d] / n;
  }
  return out;
}

std::vector<double> recursion_J(std::span<const double> s) {
  if (s.size() < 3) throw std::invalid_argument("recursion_J needs S_0..S_L with L >= 2");
  std::vector<double> j;
  for (std::size_t l = 1; l + 1 < s.size(); ++l) j.push_back(s[l] - 0.5 * s[l - 1] - 0.5 * s[l + 1]);
  return j;
}

double ContourVector::sum() const {
  CompensatedSum acc;
  for (const auto& [site, v] : values) acc.add(v);
  return acc.value();
}

double ContourVector::at(int site) const {
  for (const auto& [s, v] : values) {
    if (s == site) return v;
  }
  throw std::out_of_range("site " + std::to_string(site) + " is not in the contour block");
}

ContourVector contour_from_eam(const Eam& eam, const BlockMask& a) {
  if (a.n_sites() != eam.n_sites()) throw std::invalid_argument("block and EAM sizes differ");
  if (a.is_trivial()) throw std::invalid_argument("contour needs a nonempty proper block");
  ContourVector out;
  out.block = a;
  for (int i : a.sites()) {
    double s = 0.0;
    for (int j = 0; j < eam.n_sites(); ++j) {
      if (!a.contains(j)) s += eam(i, j);
    }
    if (s < kNegativeSlack) ++out.negative_count;
    out.values.emplace_back(i, s);
  }
  return out;
}

ContourVector fermion_contour(const CorrelationMatrix& corr, const BlockMask& a) {
  if (a.n_sites() != corr.n_sites) throw std::invalid_argument("block and correlation sizes differ");
  if (a.is_trivial()) throw std::invalid_argument("contour needs a nonempty proper block");
  const auto spec = restricted_spectrum(corr, a, true);
  const auto sites = a.sites();
  ContourVector out;
  out.block = a;
  for (std::size_t r = 0; r < sites.size(); ++r) {
    double s = 0.0;
    for (Eigen::Index p = 0; p < spec.nu.size(); ++p) {
      s += std::norm(spec.modes(static_cast<Eigen::Index>(r), p)) * binary_entropy(spec.nu(p));
    }
    if (s < kNegativeSlack) ++out.negative_count;
    out.values.emplace_back(sites[r], s);
  }
  return out;
}

std::vector<Triple> default_triples(int n, std::uint64_t seed, std::size_t count) {
  if (n < 3) throw std::invalid_argument("triples need at least 3 sites");
  std::vector<Triple> out;
  auto site = [n](int i) { return BlockMask(n, std::uint64_t{1} << i); };
  if (n <= 12) {
    for (int a = 0; a < n; ++a) {
      for (int c = a + 1; c < n; ++c) {
        for (int b = 0; b < n; ++b) {
          if (b != a && b != c) out.push_back({site(a), site(b), site(c)});
        }
      }
    }
    return out;
  }
  SplitMix64 rng(seed);
  while (out.size() < count) {
    std::uint64_t m[3] = {0, 0, 0};
    for (int i = 0; i < n; ++i) {
      const auto label = rng.below(4);
      if (label < 3) m[label] |= std::uint64_t{1} << i;
    }
    if (m[0] && m[1] && m[2]) out.push_back({BlockMask(n, m[0]), BlockMask(n, m[1]), BlockMask(n, m[2])});
  }
  return out;
}

SsaReport ssa_audit(const EntropyTable& table, std::span<const Triple> triples, double tolerance) {
  const int n = table.n_sites();
  auto s = [&](std::uint64_t m) { return table.at(BlockMask(n, m)); };
  return aggregate(triples, compute_slacks(triples, s, nullptr), tolerance, "table");
}

SsaReport ssa_audit(const Eam& eam, std::span<const Triple> triples, double tolerance) {
  const int n = eam.n_sites();
  auto s = [&](std::uint64_t m) { return predict_entropy(eam, BlockMask(n, m)); };
  return aggregate(triples, compute_slacks(triples, s, &eam), tolerance, "eam");
}

std::string ssa_report_json(const SsaReport& r) {
  nlohmann::json j;
  j["source"] = r.source;
  j["triples"] = r.triples;
  j["ssa_violations"] = r.ssa_violations;
  j["weak_monotonicity_violations"] = r.wm_violations;
  j["min_ssa_slack"] = r.min_ssa_slack;
  j["min_weak_monotonicity_slack"] = r.min_wm_slack;
  if (r.source == "eam") j["max_slack_formula_deviation"] = r.max_formula_deviation;
  auto& v = j["violations"] = nlohmann::json::array();
  for (const auto& x : r.violations) {
    v.push_back({{"kind", x.kind},
                 {"A", x.triple.a.sites()},
                 {"B", x.triple.b.sites()},
                 {"C", x.triple.c.sites()},
                 {"slack", x.slack}});
  }
  return j.dump(1);
}

}  // namespace eam
