#include "eam/entropy_table.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "eam/parallel.hpp"

namespace eam {

int worker_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("empty range");
  // reject the top partial bucket so every residue is equally likely
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  while (true) {
    const std::uint64_t x = next();
    if (x < limit) return x % bound;
  }
}

std::string SampleSpec::describe() const {
  if (mode == Mode::exhaustive) return "exhaustive";
  return "random(count=" + std::to_string(count) + ";seed=" + std::to_string(seed) + ")";
}

EntropyTable::EntropyTable(int n_sites, std::vector<TableEntry> entries, TableMeta meta)
    : n_sites_(n_sites), entries_(std::move(entries)), meta_(std::move(meta)) {
  if (n_sites < 1 || n_sites > kMaxSites) throw std::invalid_argument("n_sites out of range");
  std::sort(entries_.begin(), entries_.end(),
            [](const TableEntry& a, const TableEntry& b) { return a.mask < b.mask; });
  const auto full = BlockMask::full_bits(n_sites);
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    if (entries_[k].mask > full) {
      throw std::invalid_argument("mask " + std::to_string(entries_[k].mask) + " out of range");
    }
    if (k > 0 && entries_[k].mask == entries_[k - 1].mask) {
      throw std::invalid_argument("duplicate mask " + std::to_string(entries_[k].mask));
    }
  }
}

std::optional<double> EntropyTable::find(const BlockMask& mask) const {
  if (mask.n_sites() != n_sites_) throw std::invalid_argument("mask size mismatch");
  if (exhaustive()) return entries_[mask.bits()].entropy;
  const auto it = std::lower_bound(entries_.begin(), entries_.end(), mask.bits(),
                                   [](const TableEntry& e, std::uint64_t m) { return e.mask < m; });
  if (it == entries_.end() || it->mask != mask.bits()) return std::nullopt;
  return it->entropy;
}

double EntropyTable::at(const BlockMask& mask) const {
  if (auto v = find(mask)) return *v;
  throw std::out_of_range("mask " + std::to_string(mask.bits()) + " not in entropy table");
}

std::vector<std::uint64_t> sample_masks(int n_sites, std::size_t count, std::uint64_t seed) {
  const std::uint64_t available = BlockMask::full_bits(n_sites) - 1;  // 2^N - 2
  if (count > available) {
    throw std::invalid_argument("sample count " + std::to_string(count) + " exceeds the " +
                                std::to_string(available) + " nontrivial bipartitions");
  }
  SplitMix64 rng(seed);
  std::unordered_set<std::uint64_t> seen;
  std::vector<std::uint64_t> out;
  out.reserve(count);
  while (out.size() < count) {
    const std::uint64_t m = 1 + rng.below(available);
    if (seen.insert(m).second) out.push_back(m);
  }
  return out;
}

EntropyTable build_table(const EntropyFn& entropy, int n_sites, const SampleSpec& spec, TableMeta meta,
                         const BuildOptions& opts) {
  if (n_sites < 2 || n_sites > kMaxSites) throw std::invalid_argument("n_sites out of range");
  meta.sampling = spec.describe();
  std::vector<TableEntry> entries;

  if (spec.mode == SampleSpec::Mode::exhaustive) {
    const std::uint64_t total = std::uint64_t{1} << n_sites;
    const std::uint64_t full = total - 1;
    entries.resize(total);
    for (std::uint64_t m = 0; m < total; ++m) entries[m].mask = m;
    const std::uint64_t evaluate = opts.mirror_complements ? total / 2 : total;
    const auto count = static_cast<std::int64_t>(evaluate);
    ExceptionCollector errors;
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t k = 0; k < count; ++k) {
      errors.run([&] {
        const auto m = static_cast<std::uint64_t>(k);
        entries[m].entropy = (m == 0 || m == full) ? 0.0 : entropy(BlockMask(n_sites, m));
      });
    }
    errors.rethrow();
    if (opts.mirror_complements) {
      for (std::uint64_t m = 0; m < evaluate; ++m) entries[full ^ m].entropy = entries[m].entropy;
    }
    meta.complement_mirrored = opts.mirror_complements;
  } else {
    const auto masks = sample_masks(n_sites, spec.count, spec.seed);
    entries.resize(masks.size());
    const auto count = static_cast<std::int64_t>(masks.size());
    ExceptionCollector errors;
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t k = 0; k < count; ++k) {
      errors.run([&] {
        const auto idx = static_cast<std::size_t>(k);
        entries[idx] = {masks[idx], entropy(BlockMask(n_sites, masks[idx]))};
      });
    }
    errors.rethrow();
    meta.complement_mirrored = false;
  }
  return EntropyTable(n_sites, std::move(entries), std::move(meta));
}

}  // namespace eam
