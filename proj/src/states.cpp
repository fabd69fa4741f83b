#include "eam/states.hpp"

#include <memory>
#include <stdexcept>

#include "eam/error.hpp"
#include "eam/text.hpp"

namespace eam {

std::string to_string(StateKind k) {
  switch (k) {
    case StateKind::dimer: return "dimer";
    case StateKind::rainbow: return "rainbow";
    case StateKind::ghz: return "ghz";
    case StateKind::aklt: return "aklt";
    case StateKind::free_fermion: return "free-fermion";
    case StateKind::xxz: return "xxz";
  }
  return "?";
}

StateKind parse_state_kind(std::string_view s) {
  for (auto k : {StateKind::dimer, StateKind::rainbow, StateKind::ghz, StateKind::aklt, StateKind::free_fermion,
                 StateKind::xxz}) {
    if (to_string(k) == s) return k;
  }
  throw std::invalid_argument("unknown state '" + std::string(s) + "'");
}

std::string to_string(HoppingProfile p) {
  switch (p) {
    case HoppingProfile::uniform: return "uniform";
    case HoppingProfile::dimerized: return "dimerized";
    case HoppingProfile::rainbow: return "rainbow";
  }
  return "?";
}

HoppingProfile parse_profile(std::string_view s) {
  for (auto p : {HoppingProfile::uniform, HoppingProfile::dimerized, HoppingProfile::rainbow}) {
    if (to_string(p) == s) return p;
  }
  throw std::invalid_argument("unknown hopping profile '" + std::string(s) + "'");
}

std::string StateSpec::describe() const {
  std::string out = to_string(kind) + "(n=" + std::to_string(n_sites);
  if (kind == StateKind::free_fermion) {
    out += ";profile=" + to_string(hopping.profile) + ";boundary=" + to_string(boundary);
    if (hopping.profile == HoppingProfile::dimerized) out += ";delta=" + format_double(hopping.delta);
    if (hopping.profile == HoppingProfile::rainbow) out += ";h=" + format_double(hopping.h);
    if (hopping.flip_sign) out += ";flip=true";
  }
  if (kind == StateKind::xxz) out += ";delta=" + format_double(delta);
  if (renyi_n != 1) out += ";renyi=" + std::to_string(renyi_n);
  return out + ")";
}

PreparedState prepare_state(const StateSpec& spec) {
  if (spec.renyi_n < 1) throw std::invalid_argument("Renyi index must be >= 1");
  PreparedState out;
  out.spec = spec;
  const int renyi = spec.renyi_n;
  switch (spec.kind) {
    case StateKind::dimer:
    case StateKind::rainbow:
    case StateKind::ghz:
    case StateKind::aklt: {
      const auto kind = spec.kind == StateKind::dimer     ? AnalyticKind::dimer
                        : spec.kind == StateKind::rainbow ? AnalyticKind::rainbow
                        : spec.kind == StateKind::ghz     ? AnalyticKind::ghz
                                                          : AnalyticKind::aklt;
      if (kind == AnalyticKind::aklt && renyi != 1) throw UnsupportedCase("AKLT entropies are von Neumann only");
      auto state = std::make_shared<AnalyticState>(make_analytic_state(kind, spec.n_sites));
      out.analytic = *state;
      // Flat Schmidt spectra: every Renyi entropy equals the von Neumann one.
      out.entropy = [state](const BlockMask& m) { return analytic_entropy(*state, m); };
      break;
    }
    case StateKind::free_fermion: {
      auto corr = std::make_shared<CorrelationMatrix>(
          ground_state_correlation(build_hopping(spec.hopping, spec.n_sites, spec.boundary)));
      out.correlation = *corr;
      out.warnings = corr->warnings;
      out.entropy = [corr, renyi](const BlockMask& m) { return fermion_block_entropy(*corr, m, renyi); };
      break;
    }
    case StateKind::xxz: {
      auto gs = std::make_shared<GroundState>(ground_state_vector(SpinHamiltonian{spec.n_sites, spec.delta}));
      out.ground_state = *gs;
      out.warnings = gs->warnings;
      out.entropy = [gs, renyi](const BlockMask& m) { return spin_block_entropy(gs->state, m, renyi); };
      break;
    }
  }
  return out;
}

}  // namespace eam
