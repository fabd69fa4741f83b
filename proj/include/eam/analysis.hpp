#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "eam/bitmask.hpp"
#include "eam/entropy_table.hpp"
#include "eam/fermion.hpp"
#include "eam/solver.hpp"

namespace eam {

/// M_ab = (S_a + S_b - S_ab)/2, zero diagonal. Needs all one- and two-site masks.
Eigen::MatrixXd pair_mutual_information(const EntropyTable& table);

/// I(A:B) = S_A + S_B - S_{A u B} for disjoint A, B.
double block_mutual_information(const EntropyTable& table, const BlockMask& a, const BlockMask& b);

/// Disjoint blocks covering every site.
using Partition = std::vector<BlockMask>;
void validate_partition(const Partition& p);

/// Block-level EAM J^B_kl = sum_{a in B_k, b in B_l} J_ab; s0 is carried over.
Eam coarse_grain(const Eam& eam, const Partition& partition);

/// J(ref, ref+r mod N) for r = 1..N-1.
std::vector<double> directed_profile(const Eam& eam, int reference_site);
/// (J(ref, ref+d) + J(ref, ref-d))/2 for chord distances d = 1..N/2.
std::vector<double> chord_profile(const Eam& eam, int reference_site);
/// chord_profile averaged over all reference sites.
std::vector<double> translation_averaged_profile(const Eam& eam);

/// J_l = S_l - (S_{l-1} + S_{l+1})/2 for l = 1..L-1, given S_0..S_L.
/// Element l-1 of the result holds J_l.
std::vector<double> recursion_J(std::span<const double> s);

struct ContourVector {
  BlockMask block{1, 0};
  std::vector<std::pair<int, double>> values;  // (site, nats), ascending sites
  int negative_count = 0;                      // entries below -1e-10
  double sum() const;
  double at(int site) const;
};

/// s_A(i) = sum_{j not in A} J_ij. Raw values, no clamping.
ContourVector contour_from_eam(const Eam& eam, const BlockMask& a);
/// s_A(i) = sum_p |phi_p(i)|^2 H(nu_p) over the eigenmodes of C restricted to A.
ContourVector fermion_contour(const CorrelationMatrix& corr, const BlockMask& a);

struct Triple {
  BlockMask a, b, c;
};

/// N <= 12: every (a, b, c) of distinct single sites with a < c.
/// Otherwise `count` random triples of disjoint nonempty masks (seeded).
std::vector<Triple> default_triples(int n_sites, std::uint64_t seed = 1, std::size_t count = 1000);

struct SsaViolation {
  Triple triple;
  std::string kind;  // "ssa" or "weak-monotonicity"
  double slack;
};

struct SsaReport {
  std::size_t triples = 0;
  std::size_t ssa_violations = 0;
  std::size_t wm_violations = 0;
  double min_ssa_slack = 0.0;  // S_AB + S_BC - S_ABC - S_B
  double min_wm_slack = 0.0;   // 2 S_B - I(A:B) - I(B:C)
  /// EAM audits only: max deviation of the slacks from 2 J^B_AC (+ s0 when
  /// A u B u C is everything) and 2 J^B_{B,D} with D the rest.
  double max_formula_deviation = 0.0;
  std::vector<SsaViolation> violations;  // first 100
  std::string source;
};

SsaReport ssa_audit(const EntropyTable& table, std::span<const Triple> triples, double tolerance = 1e-9);
SsaReport ssa_audit(const Eam& eam, std::span<const Triple> triples, double tolerance = 1e-9);
std::string ssa_report_json(const SsaReport& report);

}  // namespace eam
