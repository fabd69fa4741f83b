#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace eam {

enum class Boundary { open, periodic, antiperiodic };

std::string to_string(Boundary b);
Boundary parse_boundary(std::string_view s);

inline constexpr int kMaxSites = 30;

/// Subset I of an N-site system. Bit k set means site k belongs to the block
/// (sites are 0-based throughout).
class BlockMask {
 public:
  BlockMask(int n_sites, std::uint64_t bits);

  static BlockMask from_sites(int n_sites, std::span<const int> sites);
  /// `length` consecutive sites starting at `first`, wrapping around the end.
  static BlockMask contiguous(int n_sites, int first, int length);
  static BlockMask full(int n_sites) { return {n_sites, full_bits(n_sites)}; }

  static constexpr std::uint64_t full_bits(int n_sites) {
    return (std::uint64_t{1} << n_sites) - 1;
  }

  int n_sites() const { return n_sites_; }
  std::uint64_t bits() const { return bits_; }
  int size() const;
  bool empty() const { return bits_ == 0; }
  bool is_full() const { return bits_ == full_bits(n_sites_); }
  bool is_trivial() const { return empty() || is_full(); }
  bool contains(int site) const { return (bits_ >> site) & 1U; }
  BlockMask complement() const { return {n_sites_, ~bits_ & full_bits(n_sites_)}; }
  std::vector<int> sites() const;

  friend bool operator==(const BlockMask&, const BlockMask&) = default;

 private:
  int n_sites_;
  std::uint64_t bits_;
};

BlockMask operator|(const BlockMask& a, const BlockMask& b);
bool disjoint(const BlockMask& a, const BlockMask& b);

/// Number of domain walls x_j != x_{j+1}; the wrap-around pair counts unless
/// the boundary is open.
int boundary_count(const BlockMask& mask, Boundary boundary);

/// True when the set bits form one arc of the ring (wrap-around allowed).
bool is_contiguous_periodic(const BlockMask& mask);

/// Parses "2-5" (inclusive range), "0,3,4", or "mask:37".
BlockMask parse_block(int n_sites, std::string_view text);

}  // namespace eam
