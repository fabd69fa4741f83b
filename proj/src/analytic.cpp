#include "eam/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "eam/error.hpp"

namespace eam {

std::string to_string(AnalyticKind k) {
  switch (k) {
    case AnalyticKind::dimer: return "dimer";
    case AnalyticKind::rainbow: return "rainbow";
    case AnalyticKind::ghz: return "ghz";
    case AnalyticKind::aklt: return "aklt";
  }
  return "?";
}

AnalyticState make_analytic_state(AnalyticKind kind, int n_sites) {
  if (n_sites < 2) throw std::invalid_argument("analytic state needs at least 2 sites");
  AnalyticState s{kind, n_sites, {}};
  if (kind == AnalyticKind::dimer || kind == AnalyticKind::rainbow) {
    if (n_sites % 2 != 0) throw std::invalid_argument(to_string(kind) + " state requires even n_sites");
    for (int k = 0; k < n_sites / 2; ++k) {
      if (kind == AnalyticKind::dimer) {
        s.pairs.emplace_back(2 * k, 2 * k + 1);
      } else {
        s.pairs.emplace_back(k, n_sites - 1 - k);
      }
    }
  }
  return s;
}

double aklt_block_entropy(int l) {
  if (l < 0) throw std::invalid_argument("block length must be >= 0");
  if (l == 0) return 0.0;
  const auto xlogx = [](double x) { return x > 0.0 ? x * std::log(x) : 0.0; };
  const double q = std::pow(kAkltP, l);
  return std::log(4.0) - 0.75 * xlogx(1.0 - q) - 0.25 * xlogx(1.0 + 3.0 * q);
}

double analytic_entropy(const AnalyticState& state, const BlockMask& block) {
  if (block.n_sites() != state.n_sites) throw std::invalid_argument("mask size mismatch");
  if (block.is_trivial()) throw std::invalid_argument("block must be a nonempty proper subset");
  switch (state.kind) {
    case AnalyticKind::dimer:
    case AnalyticKind::rainbow: {
      int cut = 0;
      for (auto [i, j] : state.pairs) cut += block.contains(i) != block.contains(j) ? 1 : 0;
      return cut * std::numbers::ln2;
    }
    case AnalyticKind::ghz:
      return std::numbers::ln2;
    case AnalyticKind::aklt: {
      if (!is_contiguous_periodic(block)) {
        throw UnsupportedCase("AKLT entropy is only known for contiguous blocks");
      }
      const int l = std::min(block.size(), state.n_sites - block.size());
      return aklt_block_entropy(l);
    }
  }
  return 0.0;
}

}  // namespace eam
