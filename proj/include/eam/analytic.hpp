#pragma once

#include <string>
#include <utility>
#include <vector>

#include "eam/bitmask.hpp"

namespace eam {

enum class AnalyticKind { dimer, rainbow, ghz, aklt };

std::string to_string(AnalyticKind k);

struct AnalyticState {
  AnalyticKind kind = AnalyticKind::dimer;
  int n_sites = 0;
  std::vector<std::pair<int, int>> pairs;  // Bell pairs for dimer / rainbow
};

/// dimer: (0,1),(2,3),...; rainbow: (k, N-1-k).
AnalyticState make_analytic_state(AnalyticKind kind, int n_sites);

inline constexpr double kAkltP = -1.0 / 3.0;

/// Contiguous-block entropy of the AKLT chain in the N >> 1 limit:
/// log 4 - 3/4 (1-p^l) log(1-p^l) - 1/4 (1+3p^l) log(1+3p^l), p = -1/3.
double aklt_block_entropy(int l);

/// Valence-bond states: (# Bell pairs cut) log 2. GHZ: log 2. AKLT: contiguous
/// blocks only, with l = min(|A|, N-|A|).
double analytic_entropy(const AnalyticState& state, const BlockMask& block);

}  // namespace eam
