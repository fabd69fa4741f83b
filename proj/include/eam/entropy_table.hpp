#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "eam/bitmask.hpp"

namespace eam {

/// 64-bit SplitMix generator; integer-only so samples agree across platforms.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform integer in [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

struct SampleSpec {
  enum class Mode { exhaustive, random };
  Mode mode = Mode::exhaustive;
  std::size_t count = 0;
  std::uint64_t seed = 0;

  static SampleSpec exhaustive() { return {}; }
  static SampleSpec random(std::size_t count, std::uint64_t seed) { return {Mode::random, count, seed}; }
  std::string describe() const;
};

struct TableMeta {
  std::string state_desc;
  int renyi_n = 1;
  std::string generated;  // UTC timestamp
  std::string sampling;
  bool complement_mirrored = false;
  std::string config_json;  // RunConfig of the producing run, verbatim
};

struct TableEntry {
  std::uint64_t mask;
  double entropy;
};

/// Block entropies S_I in nats keyed by mask, sorted by mask.
class EntropyTable {
 public:
  /// Sorts the entries; throws on duplicates or out-of-range masks.
  EntropyTable(int n_sites, std::vector<TableEntry> entries, TableMeta meta = {});

  int n_sites() const { return n_sites_; }
  std::size_t size() const { return entries_.size(); }
  bool exhaustive() const { return entries_.size() == (std::size_t{1} << n_sites_); }
  std::span<const TableEntry> entries() const { return entries_; }
  const TableMeta& meta() const { return meta_; }
  TableMeta& meta() { return meta_; }

  std::optional<double> find(const BlockMask& mask) const;
  /// Like find, but throws when the mask is absent.
  double at(const BlockMask& mask) const;

 private:
  int n_sites_;
  std::vector<TableEntry> entries_;
  TableMeta meta_;
};

using EntropyFn = std::function<double(const BlockMask&)>;

struct BuildOptions {
  /// Exhaustive mode evaluates only masks with site N-1 absent and mirrors
  /// S_A = S_Abar (valid for pure states).
  bool mirror_complements = true;
};

/// Distinct masks drawn uniformly from [1, 2^N - 2].
std::vector<std::uint64_t> sample_masks(int n_sites, std::size_t count, std::uint64_t seed);

/// Evaluates `entropy` (which must be safe to call concurrently) over the masks
/// selected by `spec`, in parallel. Empty and full masks are stored as 0.
EntropyTable build_table(const EntropyFn& entropy, int n_sites, const SampleSpec& spec,
                         TableMeta meta = {}, const BuildOptions& opts = {});

enum class TableFormat { csv, json };
TableFormat format_from_path(const std::string& path);

void save_table(const EntropyTable& table, const std::string& path, TableFormat format);
/// `expected_n_sites`, when given, must match the file header.
EntropyTable load_table(const std::string& path, TableFormat format,
                        std::optional<int> expected_n_sites = std::nullopt);

}  // namespace eam
