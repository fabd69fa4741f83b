// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "eam/analysis.hpp"
#include "eam/analytic.hpp"
#include "eam/cft.hpp"
#include "eam/fermion.hpp"
#include "eam/metric.hpp"
#include "eam/solver.hpp"
#include "eam/spin.hpp"
#include "eam/states.hpp"

using eam::BlockMask;
using eam::EntropyTable;
using eam::SampleSpec;
using std::numbers::ln2;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [fail]");
  }
};

std::string fmt(double x, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

// Physical tables from criteria 1-4, kept for the SSA audit in criterion 11.
std::vector<std::pair<std::string, EntropyTable>> g_tables;
// Fitted EAMs kept for the metric audit.
std::vector<std::pair<std::string, eam::Eam>> g_eams;

EntropyTable exhaustive_table(const eam::StateSpec& spec) {
  const auto st = eam::prepare_state(spec);
  eam::TableMeta meta;
  meta.state_desc = spec.describe();
  return eam::build_table(st.entropy, spec.n_sites, SampleSpec::exhaustive(), meta);
}

eam::StateSpec analytic_spec(eam::StateKind kind, int n) {
  eam::StateSpec s;
  s.kind = kind;
  s.n_sites = n;
  return s;
}

eam::StateSpec fermion_spec(int n, eam::HoppingProfile profile, double delta) {
  eam::StateSpec s;
  s.kind = eam::StateKind::free_fermion;
  s.n_sites = n;
  s.hopping.profile = profile;
  s.hopping.delta = delta;
  s.boundary = eam::Boundary::periodic;
  return s;
}

eam::StateSpec xxz_spec(int n, double delta) {
  eam::StateSpec s;
  s.kind = eam::StateKind::xxz;
  s.n_sites = n;
  s.delta = delta;
  return s;
}

Outcome criterion1() {
  Outcome o;
  for (auto kind : {eam::StateKind::dimer, eam::StateKind::rainbow}) {
    for (int n : {8, 10}) {
      const auto spec = analytic_spec(kind, n);
      const auto table = exhaustive_table(spec);
      const auto e = eam::fit_full(table);
      const auto pairs = eam::make_analytic_state(kind == eam::StateKind::dimer ? eam::AnalyticKind::dimer
                                                                                 : eam::AnalyticKind::rainbow,
                                                  n)
                             .pairs;
      Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(n, n);
      for (auto [a, b] : pairs) expected(a, b) = expected(b, a) = ln2;
      const double dev = (e.matrix() - expected).cwiseAbs().maxCoeff();
      const double err = eam::error_mean(e, table).value;
      o.require(dev < 1e-9 && err < 1e-12,
                spec.describe() + " max|J-J*|=" + fmt(dev) + " E=" + fmt(err));
      g_tables.emplace_back(spec.describe(), table);
    }
  }
  return o;
}

Outcome criterion2() {
  Outcome o;
  for (int n : {4, 6, 8}) {
    const auto spec = analytic_spec(eam::StateKind::ghz, n);
    const auto table = exhaustive_table(spec);
    const auto e = eam::fit_full(table, true);
    const double jmax = e.matrix().cwiseAbs().maxCoeff();
    const double s0dev = std::abs(*e.s0() - ln2);
    o.require(jmax < 1e-9 && s0dev < 1e-9, "ghz n=" + std::to_string(n) + " max|J|=" + fmt(jmax) +
                                               " |s0-log2|=" + fmt(s0dev));
    g_tables.emplace_back(spec.describe(), table);
  }
  const auto t3 = exhaustive_table(analytic_spec(eam::StateKind::ghz, 3));
  const auto e3 = eam::fit_full(t3);
  double dev = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) dev = std::max(dev, std::abs(e3(i, j) - ln2 / 2));
  }
  o.require(dev < 1e-12 && e3.diagnostics.residual_norm < 1e-12,
            "ghz n=3 no s0 max|J-log2/2|=" + fmt(dev) + " residual=" + fmt(e3.diagnostics.residual_norm));
  return o;
}

double oscillation(const std::vector<double>& jbar) {
  double amp = 0.0;
  // jbar[d - 1] holds d = 1..N/2; the second difference runs over 3 <= d <= N/2 - 1.
  for (std::size_t d = 3; d + 1 <= jbar.size(); ++d) {
    amp = std::max(amp, std::abs(jbar[d - 1] - 0.5 * (jbar[d - 2] + jbar[d])));
  }
  return amp;
}

Outcome criterion3() {
  Outcome o;
  for (int n : {10, 12, 14}) {
    std::vector<double> amps;
    for (double delta : {0.1, 0.5, 0.9}) {
      const auto spec = fermion_spec(n, eam::HoppingProfile::dimerized, delta);
      const auto table = exhaustive_table(spec);
      const auto e = eam::fit_full(table);
      const double err = eam::error_mean(e, table).value;
      const auto jbar = eam::chord_profile(e, 1);
      bool decays = true;
      for (std::size_t k = 2; k < jbar.size(); ++k) {
        if (jbar[k] > jbar[k - 2] + 1e-3) decays = false;
      }
      for (std::size_t k = 1; k < jbar.size(); ++k) {
        if (jbar[k] > jbar[0]) decays = false;
      }
      amps.push_back(oscillation(jbar));
      o.require(err < 4e-2 && decays, spec.describe() + " E=" + fmt(err) + (decays ? " decays" : " no-decay") +
                                          " osc=" + fmt(amps.back()));
      g_tables.emplace_back(spec.describe(), table);
      g_eams.emplace_back(spec.describe(), e);
    }
    o.require(amps[0] > amps[1] && amps[1] > amps[2], "n=" + std::to_string(n) + " oscillation shrinks");
  }
  return o;
}

std::map<double, eam::Eam> g_xxz_fits;

Outcome criterion4() {
  Outcome o;
  double worst = 0.0;
  for (double delta : {0.0, 0.5, 1.0, 3.0, 5.0}) {
    const auto spec = xxz_spec(12, delta);
    const auto table = exhaustive_table(spec);
    const auto e = eam::fit_full(table);
    const double err = eam::error_mean(e, table).value;
    worst = std::max(worst, err);
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("delta=") + fmt(delta) + " E=" + fmt(err);
    g_tables.emplace_back(spec.describe(), table);
    g_eams.emplace_back(spec.describe(), e);
    g_xxz_fits.emplace(delta, e);
  }
  o.require(worst <= 8e-2, "max E=" + fmt(worst));
  const auto profile = eam::translation_averaged_profile(g_xxz_fits.at(0.0));
  double worst_rel = 0.0;
  for (int r = 2; r <= 6; ++r) {
    const double ref = eam::cft::lattice_conformal_J(12, r);
    worst_rel = std::max(worst_rel, std::abs(profile[static_cast<std::size_t>(r - 1)] - ref) / ref);
  }
  o.require(worst_rel < 0.30, "delta=0 max rel dev from conformal J (r=2..6)=" + fmt(worst_rel));
  return o;
}

Outcome criterion5() {
  Outcome o;
  const auto spec = xxz_spec(12, 0.5);
  const auto st = eam::prepare_state(spec);
  const auto full = eam::translation_averaged_profile(g_xxz_fits.at(0.5));
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto table = eam::build_table(st.entropy, 12, SampleSpec::random(500, seed));
    const auto e = eam::fit_sampled(table);
    const auto prof = eam::translation_averaged_profile(e);
    double worst = 0.0;
    int worst_r = 0;
    for (std::size_t r = 0; r < full.size(); ++r) {
      const double rel = std::abs(prof[r] - full[r]) / std::abs(full[r]);
      if (rel > worst) {
        worst = rel;
        worst_r = static_cast<int>(r + 1);
      }
    }
    o.require(worst < 0.15, "seed " + std::to_string(seed) + " max rel dev=" + fmt(worst) + " at r=" +
                                std::to_string(worst_r));
  }
  return o;
}

Outcome criterion6() {
  Outcome o;
  const auto spec = fermion_spec(14, eam::HoppingProfile::uniform, 0.0);
  const auto table = exhaustive_table(spec);
  const auto e = eam::fit_full(table);
  const auto groups = eam::error_by_boundary(e, table, eam::Boundary::periodic);
  bool increasing = true;
  double rel_min = INFINITY, rel_max = 0.0;
  std::string list;
  for (std::size_t k = 0; k < groups.size(); ++k) {
    if (k > 0 && !(groups[k].mean_abs > groups[k - 1].mean_abs)) increasing = false;
    rel_min = std::min(rel_min, groups[k].mean_rel);
    rel_max = std::max(rel_max, groups[k].mean_rel);
    list += (k ? " " : "") + std::to_string(groups[k].n_boundaries) + ":" + fmt(groups[k].mean_abs) + "/" +
            fmt(groups[k].mean_rel);
  }
  o.require(increasing, "abs error by n_A increasing (n_A:abs/rel " + list + ")");
  o.require(rel_max < 3 * rel_min, "rel spread " + fmt(rel_max / rel_min));
  return o;
}

Outcome criterion7() {
  Outcome o;
  const auto spec = fermion_spec(14, eam::HoppingProfile::uniform, 0.0);
  const auto st = eam::prepare_state(spec);
  const auto table = eam::build_table(st.entropy, 14, SampleSpec::exhaustive());
  const auto e = eam::fit_full(table);
  const auto a = BlockMask::contiguous(14, 0, 7);
  const auto ce = eam::contour_from_eam(e, a);
  const auto cf = eam::fermion_contour(*st.correlation, a);
  const double sum_e = std::abs(ce.sum() - eam::predict_entropy(e, a));
  const double sum_f = std::abs(cf.sum() - table.at(a));
  o.require(sum_e < 1e-10 && sum_f < 1e-10, "sum dev eam=" + fmt(sum_e) + " fermion=" + fmt(sum_f));
  double sym = 0.0, rel = 0.0;
  for (int i = 0; i < 7; ++i) {
    sym = std::max(sym, std::abs(ce.at(i) - ce.at(6 - i)));
    sym = std::max(sym, std::abs(cf.at(i) - cf.at(6 - i)));
    rel = std::max(rel, std::abs(ce.at(i) - cf.at(i)) / std::abs(cf.at(i)));
  }
  o.require(sym < 1e-9, "reflection asymmetry=" + fmt(sym));
  o.require(rel < 0.20, "max pointwise rel dev=" + fmt(rel));
  return o;
}

Outcome criterion8() {
  Outcome o;
  std::vector<double> s{0.0};
  for (int l = 1; l <= 12; ++l) s.push_back(eam::aklt_block_entropy(l));
  const auto j = eam::recursion_J(s);
  const double ratio = j[8] / j[7];  // J_9 / J_8
  o.require(std::abs(ratio * 9.0 - 1.0) < 0.01, "J9/J8=" + fmt(ratio, 6));
  const double s10 = std::abs(s[10] - 2 * ln2);
  o.require(s10 < 1e-3, "|S10-2log2|=" + fmt(s10));
  return o;
}

Outcome criterion9() {
  namespace cft = eam::cft;
  using cft::Geometry;
  Outcome o;
  const double eps = 1e-3;
  for (const auto& g : {Geometry::plane(-0.5, 1.5, eps), Geometry::circle(10.0, 2.0, eps),
                        Geometry::thermal(3.0, 1.5, eps), Geometry::half_line(2.0, eps),
                        Geometry::strip(4.0, 1.0, eps), Geometry::thermal_half_line(3.0, 1.0, eps)}) {
    const auto [lo, hi] = g.a_eps();
    double worst = 0.0;
    for (int k = 1; k <= 5; ++k) {
      worst = std::max(worst, cft::check_kernel_consistency(g, lo + (hi - lo) * k / 6.0).residual);
    }
    o.require(worst < 1e-6, cft::to_string(g.kind) + " residual=" + fmt(worst));
  }
  const auto plane = Geometry::plane(-1.0, 1.0, eps);
  const auto circle = Geometry::circle(1e5, 1.0, eps);
  const auto thermal = Geometry::thermal(1e5, 1.0, eps);
  const auto half = Geometry::half_line(1.0, eps);
  const auto thermal_half = Geometry::thermal_half_line(1e5, 1.0, eps);
  double d21 = 0.0, d31 = 0.0, d64 = 0.0;
  for (double y : {1.5, 2.0, 3.0}) {
    d21 = std::max(d21, std::abs(cft::kernel_g(circle, 0.3, y) - cft::kernel_g(plane, 0.3, y)));
    d31 = std::max(d31, std::abs(cft::kernel_g(thermal, 0.3, y) - cft::kernel_g(plane, 0.3, y)));
    d64 = std::max(d64, std::abs(cft::kernel_g(thermal_half, 0.4, y) - cft::kernel_g(half, 0.4, y)));
  }
  o.require(d21 < 1e-8 && d31 < 1e-8 && d64 < 1e-8,
            "limits II->I " + fmt(d21) + " III->I " + fmt(d31) + " VI->IV " + fmt(d64));
  return o;
}

Outcome criterion10() {
  Outcome o;
  const double s = eam::cft::two_interval_entropy(0, 1, 2, 3, 1.0);
  const double target = std::log(1.5) / 3.0;
  o.require(std::abs(s - target) < 1e-12, "S((0,1)u(2,3))=" + fmt(s, 12) + " expected " + fmt(target, 12));
  const double far = eam::cft::two_interval_entropy(0, 1.5, 1e7, 1e7 + 2.0, 1.0);
  const double singles = (std::log(1.5) + std::log(2.0)) / 3.0;
  o.require(std::abs(far - singles) < 1e-6, "far-separation dev=" + fmt(std::abs(far - singles)));
  return o;
}

Outcome criterion11() {
  Outcome o;
  std::size_t violations = 0, triples = 0;
  for (const auto& [name, table] : g_tables) {
    const auto t = eam::default_triples(table.n_sites());
    const auto r = eam::ssa_audit(table, t);
    violations += r.ssa_violations + r.wm_violations;
    triples += r.triples;
    if (r.ssa_violations + r.wm_violations > 0) o.detail += name + " has violations; ";
  }
  o.require(violations == 0, "SSA/WM violations " + std::to_string(violations) + " over " + std::to_string(triples) +
                                 " triples in " + std::to_string(g_tables.size()) + " tables");

  eam::SplitMix64 rng(2024);
  double formula = 0.0;
  std::size_t eam_violations = 0;
  for (int n : {6, 9, 12}) {
    Eigen::VectorXd links(eam::link_count(n));
    for (auto& x : links) x = static_cast<double>(rng.below(10000)) / 10000.0;
    const auto r = eam::ssa_audit(eam::Eam(n, links), eam::default_triples(n));
    formula = std::max(formula, r.max_formula_deviation);
    eam_violations += r.ssa_violations + r.wm_violations;
  }
  o.require(eam_violations == 0 && formula < 1e-12,
            "nonnegative EAM slack=2J_AC max dev " + fmt(formula) + ", violations " + std::to_string(eam_violations));

  std::size_t tri = 0;
  for (const auto& [name, e] : g_eams) {
    tri += eam::triangle_audit(eam::geodesic_distances(e, eam::MetricConfig{}).paths.d).violations;
  }
  o.require(tri == 0, "triangle violations " + std::to_string(tri) + " over " + std::to_string(g_eams.size()) + " EAMs");

  double inv = 0.0;
  for (int n = 2; n <= 8; ++n) {
    const Eigen::MatrixXd m = eam::normal_matrix_full(n, false);
    inv = std::max(inv, (eam::normal_inverse_closed_form(n) - m.inverse()).cwiseAbs().maxCoeff());
  }
  o.require(inv < 1e-10, "closed-form inverse dev " + fmt(inv));

  double jw = 0.0;
  for (int n : {4, 6, 8, 10}) {
    const auto gs = eam::ground_state_vector({n, 0.0});
    const auto boundary = (n / 2) % 2 == 1 ? eam::Boundary::periodic : eam::Boundary::antiperiodic;
    const auto corr = eam::ground_state_correlation(eam::build_hopping({}, n, boundary));
    for (int first = 0; first < n; ++first) {
      for (int len = 1; len < n; ++len) {
        const auto a = BlockMask::contiguous(n, first, len);
        jw = std::max(jw, std::abs(eam::spin_block_entropy(gs.state, a) - eam::fermion_block_entropy(corr, a)));
      }
    }
  }
  o.require(jw < 1e-8, "spin vs fermion contiguous blocks dev " + fmt(jw));
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"valence-bond recovery", criterion1},    {"GHZ offset", criterion2},
      {"dimerized free fermions", criterion3},  {"XXZ ring", criterion4},
      {"random sampling", criterion5},          {"error by boundary count", criterion6},
      {"contour overlay", criterion7},          {"AKLT recursion", criterion8},
      {"CFT kernel theorem", criterion9},       {"two intervals", criterion10},
      {"property suites", criterion11},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail += std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("[%s] criterion %zu: %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", k + 1,
                criteria[k].first.c_str(), secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
