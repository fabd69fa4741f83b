#include <doctest.h>

#include <cmath>
#include <numbers>

#include "eam/analysis.hpp"
#include "eam/analytic.hpp"
#include "eam/cft.hpp"
#include "eam/entropy_table.hpp"
#include "eam/fermion.hpp"
#include "eam/spin.hpp"

using eam::BlockMask;
using eam::EntropyTable;
using eam::SampleSpec;
using std::numbers::ln2;

namespace {

EntropyTable analytic_table(eam::AnalyticKind kind, int n) {
  const auto st = eam::make_analytic_state(kind, n);
  return eam::build_table([st](const BlockMask& m) { return eam::analytic_entropy(st, m); }, n,
                          SampleSpec::exhaustive());
}

BlockMask sites(int n, std::initializer_list<int> s) { return BlockMask::from_sites(n, std::vector<int>(s)); }

eam::Eam random_nonnegative_eam(int n, unsigned seed) {
  eam::SplitMix64 rng(seed);
  Eigen::VectorXd links(eam::link_count(n));
  for (auto& x : links) x = static_cast<double>(rng.below(1000)) / 1000.0;
  return eam::Eam(n, links);
}

}  // namespace

TEST_CASE("pair mutual information") {
  const auto ghz = eam::pair_mutual_information(analytic_table(eam::AnalyticKind::ghz, 5));
  for (int a = 0; a < 5; ++a) {
    CHECK(ghz(a, a) == 0.0);
    for (int b = a + 1; b < 5; ++b) CHECK(ghz(a, b) == doctest::Approx(ln2 / 2));
  }
  const auto t = analytic_table(eam::AnalyticKind::dimer, 6);
  const auto m = eam::pair_mutual_information(t);
  CHECK((m - eam::fit_full(t).matrix()).cwiseAbs().maxCoeff() < 1e-9);
  const EntropyTable partial(3, {{1, 0.1}, {2, 0.1}});
  CHECK_THROWS(eam::pair_mutual_information(partial));
}

TEST_CASE("block mutual information") {
  const auto ghz = analytic_table(eam::AnalyticKind::ghz, 6);
  CHECK(eam::block_mutual_information(ghz, sites(6, {0, 1}), sites(6, {3})) == doctest::Approx(ln2));
  const auto dimer = analytic_table(eam::AnalyticKind::dimer, 4);
  CHECK(eam::block_mutual_information(dimer, sites(4, {0, 1}), sites(4, {2, 3})) == doctest::Approx(0.0));
  const auto rainbow = analytic_table(eam::AnalyticKind::rainbow, 4);
  CHECK(eam::block_mutual_information(rainbow, sites(4, {0}), sites(4, {3})) == doctest::Approx(2 * ln2));
  CHECK_THROWS_AS(eam::block_mutual_information(rainbow, sites(4, {0, 1}), sites(4, {1})), std::invalid_argument);
}

TEST_CASE("coarse graining") {
  const auto rainbow = eam::fit_full(analytic_table(eam::AnalyticKind::rainbow, 4));
  const auto cg = eam::coarse_grain(rainbow, {sites(4, {0, 1}), sites(4, {2, 3})});
  CHECK(cg(0, 1) == doctest::Approx(2 * ln2));

  const auto e = random_nonnegative_eam(8, 3);
  const eam::Partition p{sites(8, {0, 1, 2}), sites(8, {3}), sites(8, {4, 6}), sites(8, {5, 7})};
  const auto b = eam::coarse_grain(e, p);
  for (std::uint64_t sel = 1; sel < 15; ++sel) {
    std::uint64_t fine = 0;
    for (int k = 0; k < 4; ++k) {
      if ((sel >> k) & 1U) fine |= p[static_cast<std::size_t>(k)].bits();
    }
    CHECK(eam::predict_entropy(b, BlockMask(4, sel)) == doctest::Approx(eam::predict_entropy(e, BlockMask(8, fine))).epsilon(1e-12));
  }
  // Two blocks: the link is the predicted entropy of either block.
  const auto two = eam::coarse_grain(e, {sites(8, {0, 2, 4}), sites(8, {1, 3, 5, 6, 7})});
  CHECK(two(0, 1) == doctest::Approx(eam::predict_entropy(e, sites(8, {0, 2, 4}))));
  // Singletons: identity.
  eam::Partition singles;
  for (int i = 0; i < 8; ++i) singles.push_back(sites(8, {i}));
  CHECK(eam::coarse_grain(e, singles).matrix() == e.matrix());
  CHECK_THROWS(eam::coarse_grain(e, {sites(8, {0, 1}), sites(8, {1, 2, 3, 4, 5, 6, 7})}));
  CHECK_THROWS(eam::coarse_grain(e, {sites(8, {0, 1}), sites(8, {2, 3, 4, 5, 6})}));
}

TEST_CASE("radial profiles") {
  const auto dimer = eam::fit_full(analytic_table(eam::AnalyticKind::dimer, 8));
  // Site 1 pairs with site 0, at r = -1: the directed profile J(1, 1+r) vanishes except at r = N-1.
  const auto directed = eam::directed_profile(dimer, 1);
  for (std::size_t r = 0; r + 1 < directed.size(); ++r) CHECK(std::abs(directed[r]) < 1e-12);
  CHECK(directed.back() == doctest::Approx(ln2));
  const auto chord = eam::chord_profile(dimer, 1);
  CHECK(chord.size() == 4);
  CHECK(chord[0] == doctest::Approx(ln2 / 2));

  const auto rainbow = eam::fit_full(analytic_table(eam::AnalyticKind::rainbow, 8));
  const auto rp = eam::directed_profile(rainbow, 1);
  for (std::size_t r = 0; r < rp.size(); ++r) {
    if (r + 1 == 5) {
      CHECK(rp[r] == doctest::Approx(ln2));  // site 1 pairs with site 6
    } else {
      CHECK(std::abs(rp[r]) < 1e-12);
    }
  }

  // Translation-invariant EAM: profile independent of the reference site.
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(10, 10);
  for (int a = 0; a < 10; ++a) {
    for (int b = 0; b < 10; ++b) {
      const int d = std::min(std::abs(a - b), 10 - std::abs(a - b));
      if (d > 0) j(a, b) = 1.0 / (d * d);
    }
  }
  const auto ti = eam::Eam::from_matrix(j);
  CHECK(eam::directed_profile(ti, 0) == eam::directed_profile(ti, 7));
  const auto avg = eam::translation_averaged_profile(ti);
  for (std::size_t d = 0; d < avg.size(); ++d) CHECK(avg[d] == doctest::Approx(1.0 / double((d + 1) * (d + 1))));
}

TEST_CASE("contiguous-block recursion") {
  std::vector<double> linear;
  for (int l = 0; l <= 8; ++l) linear.push_back(0.7 * l);
  for (double x : eam::recursion_J(linear)) CHECK(std::abs(x) < 1e-14);

  std::vector<double> aklt{0.0};
  for (int l = 1; l <= 12; ++l) aklt.push_back(eam::aklt_block_entropy(l));
  const auto ja = eam::recursion_J(aklt);
  CHECK(ja[8] / ja[7] == doctest::Approx(1.0 / 9.0).epsilon(0.01));

  // Second difference of the CFT lattice entropy vs the conformal J curve.
  const int n = 200;
  const double pi = std::numbers::pi;
  std::vector<double> s;
  for (int l = 0; l <= n; ++l) s.push_back(l == 0 || l == n ? 0.0 : std::log(n / pi * std::sin(pi * l / n)) / 3.0);
  const auto jc = eam::recursion_J(s);
  for (int l : {20, 50, 100}) {
    CHECK(jc[static_cast<std::size_t>(l - 1)] == doctest::Approx(eam::cft::lattice_conformal_J(n, l)).epsilon(1e-3));
  }
  CHECK_THROWS(eam::recursion_J(std::vector<double>{0.0, 1.0}));
}

TEST_CASE("EAM contour") {
  const auto dimer = eam::fit_full(analytic_table(eam::AnalyticKind::dimer, 4));
  const auto c1 = eam::contour_from_eam(dimer, sites(4, {1, 2}));
  CHECK(c1.at(1) == doctest::Approx(ln2));
  CHECK(c1.at(2) == doctest::Approx(ln2));
  const auto c2 = eam::contour_from_eam(dimer, sites(4, {0, 1}));
  CHECK(std::abs(c2.at(0)) < 1e-12);
  CHECK(std::abs(c2.at(1)) < 1e-12);
  CHECK_THROWS(c2.at(3));

  // Sum equals the predicted entropy minus s0, also for non-contiguous blocks.
  const auto e = random_nonnegative_eam(9, 11);
  for (std::uint64_t m : {0b1ULL, 0b101010101ULL, 0b11100011ULL}) {
    const BlockMask a(9, m);
    CHECK(eam::contour_from_eam(e, a).sum() == doctest::Approx(eam::predict_entropy(e, a)).epsilon(1e-13));
  }
  CHECK_THROWS(eam::contour_from_eam(e, BlockMask(9, 0)));
}

TEST_CASE("contour bounds on predicted entropies with nonnegative J") {
  const auto e = random_nonnegative_eam(8, 5);
  const BlockMask a(8, 0b01111110);
  const auto contour = eam::contour_from_eam(e, a);
  auto contour_sum = [&](std::uint64_t sub) {
    double s = 0.0;
    for (int i = 0; i < 8; ++i) {
      if ((sub >> i) & 1U) s += contour.at(i);
    }
    return s;
  };
  CHECK(contour.negative_count == 0);
  for (std::uint64_t a1 : {0b00000110ULL, 0b01100000ULL, 0b00111100ULL}) {
    const double s1 = contour_sum(a1);
    CHECK(s1 >= 0.0);
    CHECK(s1 <= eam::predict_entropy(e, BlockMask(8, a1)) + 1e-12);
    CHECK(s1 <= eam::predict_entropy(e, a) + 1e-12);
    for (std::uint64_t a11 = a1; a11; a11 = (a11 - 1) & a1) CHECK(contour_sum(a11) <= s1 + 1e-12);
  }
}

TEST_CASE("fermion contour") {
  const auto corr = eam::ground_state_correlation(eam::build_hopping({}, 10, eam::Boundary::periodic));
  eam::SplitMix64 rng(9);
  for (int k = 0; k < 20; ++k) {
    const BlockMask a(10, 1 + rng.below(1022));
    const auto c = eam::fermion_contour(corr, a);
    CHECK(std::abs(c.sum() - eam::fermion_block_entropy(corr, a)) < 1e-10);
    CHECK(c.negative_count == 0);
  }
  const auto single = eam::fermion_contour(corr, BlockMask(10, 0b1000));
  CHECK(single.at(3) == doctest::Approx(eam::fermion_block_entropy(corr, BlockMask(10, 0b1000))).epsilon(1e-12));
  // Half chain, mirror i -> 4 - i.
  const auto half = eam::fermion_contour(corr, BlockMask::contiguous(10, 0, 5));
  for (int i = 0; i < 5; ++i) CHECK(std::abs(half.at(i) - half.at(4 - i)) < 1e-9);
}

TEST_CASE("default triple sampler") {
  CHECK(eam::default_triples(5).size() == 30);
  const auto big = eam::default_triples(14, 3, 200);
  CHECK(big.size() == 200);
  for (const auto& t : big) {
    CHECK(eam::disjoint(t.a, t.b));
    CHECK(eam::disjoint(t.b, t.c));
    CHECK(eam::disjoint(t.a, t.c));
    CHECK_FALSE(t.a.empty());
  }
}

TEST_CASE("SSA audit of physical tables") {
  const auto gs = eam::ground_state_vector({8, 1.0});
  const auto t = eam::build_table([&](const BlockMask& m) { return eam::spin_block_entropy(gs.state, m); }, 8,
                                  SampleSpec::exhaustive());
  const auto triples = eam::default_triples(8);
  const auto r = eam::ssa_audit(t, triples);
  CHECK(r.triples == triples.size());
  CHECK(r.ssa_violations == 0);
  CHECK(r.wm_violations == 0);
  CHECK(r.min_ssa_slack >= -1e-9);
}

TEST_CASE("SSA slack of an EAM is 2 J_AC") {
  const auto e = random_nonnegative_eam(7, 21);
  std::vector<eam::Triple> triples = eam::default_triples(7);
  triples.push_back({sites(7, {0, 1}), sites(7, {2, 3}), sites(7, {4, 5, 6})});  // covers everything
  const auto r = eam::ssa_audit(e, triples);
  CHECK(r.ssa_violations == 0);
  CHECK(r.wm_violations == 0);
  CHECK(r.max_formula_deviation < 1e-12);

  eam::Eam with_s0(7, e.links(), 0.4);
  CHECK(eam::ssa_audit(with_s0, triples).max_formula_deviation < 1e-12);
}

TEST_CASE("a negative link is localised by the audit") {
  Eigen::VectorXd links = Eigen::VectorXd::Constant(eam::link_count(6), 0.1);
  links(eam::link_index(1, 4, 6)) = -0.3;
  const eam::Eam e(6, links);
  const auto triples = eam::default_triples(6);
  const auto r = eam::ssa_audit(e, triples);
  CHECK(r.ssa_violations > 0);
  for (const auto& v : r.violations) {
    if (v.kind != "ssa") continue;
    const auto a = v.triple.a.bits() | v.triple.c.bits();
    CHECK(a == ((1ULL << 1) | (1ULL << 4)));
    CHECK(v.slack == doctest::Approx(2 * -0.3));
  }
  const auto json = eam::ssa_report_json(r);
  CHECK(json.find("\"violations\"") != std::string::npos);
}
