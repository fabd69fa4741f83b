#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eam/analytic.hpp"
#include "eam/entropy_table.hpp"
#include "eam/fermion.hpp"
#include "eam/spin.hpp"

namespace eam {

enum class StateKind { dimer, rainbow, ghz, aklt, free_fermion, xxz };

std::string to_string(StateKind k);
StateKind parse_state_kind(std::string_view s);
HoppingProfile parse_profile(std::string_view s);
std::string to_string(HoppingProfile p);

struct StateSpec {
  StateKind kind = StateKind::dimer;
  int n_sites = 8;
  HoppingSpec hopping;                     // free-fermion only
  Boundary boundary = Boundary::periodic;  // free-fermion only; XXZ is always a ring
  double delta = 1.0;                      // XXZ anisotropy
  int renyi_n = 1;

  /// Comma-free description, e.g. "xxz(n=12;delta=0.5)".
  std::string describe() const;
};

/// A state ready for entropy evaluation. `entropy` is safe to call concurrently.
struct PreparedState {
  StateSpec spec;
  EntropyFn entropy;
  std::optional<AnalyticState> analytic;
  std::optional<CorrelationMatrix> correlation;
  std::optional<GroundState> ground_state;
  std::vector<std::string> warnings;
};

PreparedState prepare_state(const StateSpec& spec);

}  // namespace eam
