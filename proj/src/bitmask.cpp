#include "eam/bitmask.hpp"

#include <bit>
#include <stdexcept>

#include "eam/text.hpp"

namespace eam {

std::string to_string(Boundary b) {
  switch (b) {
    case Boundary::open: return "open";
    case Boundary::periodic: return "periodic";
    case Boundary::antiperiodic: return "antiperiodic";
  }
  return "?";
}

Boundary parse_boundary(std::string_view s) {
  if (s == "open") return Boundary::open;
  if (s == "periodic") return Boundary::periodic;
  if (s == "antiperiodic") return Boundary::antiperiodic;
  throw std::invalid_argument("unknown boundary '" + std::string(s) + "'");
}

BlockMask::BlockMask(int n_sites, std::uint64_t bits) : n_sites_(n_sites), bits_(bits) {
  if (n_sites < 1 || n_sites > kMaxSites) {
    throw std::invalid_argument("n_sites must be in [1, " + std::to_string(kMaxSites) + "]");
  }
  if (bits > full_bits(n_sites)) {
    throw std::invalid_argument("mask " + std::to_string(bits) + " out of range for " +
                                std::to_string(n_sites) + " sites");
  }
}

BlockMask BlockMask::from_sites(int n_sites, std::span<const int> sites) {
  std::uint64_t bits = 0;
  for (int s : sites) {
    if (s < 0 || s >= n_sites) {
      throw std::invalid_argument("site " + std::to_string(s) + " out of range");
    }
    bits |= std::uint64_t{1} << s;
  }
  return {n_sites, bits};
}

BlockMask BlockMask::contiguous(int n_sites, int first, int length) {
  if (length < 0 || length > n_sites) throw std::invalid_argument("bad block length");
  std::uint64_t bits = 0;
  for (int k = 0; k < length; ++k) {
    bits |= std::uint64_t{1} << ((first + k) % n_sites);
  }
  return {n_sites, bits};
}

int BlockMask::size() const { return std::popcount(bits_); }

std::vector<int> BlockMask::sites() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (int k = 0; k < n_sites_; ++k) {
    if (contains(k)) out.push_back(k);
  }
  return out;
}

BlockMask operator|(const BlockMask& a, const BlockMask& b) {
  if (a.n_sites() != b.n_sites()) throw std::invalid_argument("mask size mismatch");
  return {a.n_sites(), a.bits() | b.bits()};
}

bool disjoint(const BlockMask& a, const BlockMask& b) { return (a.bits() & b.bits()) == 0; }

int boundary_count(const BlockMask& mask, Boundary boundary) {
  const int n = mask.n_sites();
  const std::uint64_t x = mask.bits();
  // bit j of (x ^ rotate(x)) marks x_j != x_{j+1}
  std::uint64_t walls = (x ^ (x >> 1)) & BlockMask::full_bits(n - 1);
  int count = std::popcount(walls);
  if (boundary != Boundary::open && n > 1) {
    count += static_cast<int>(((x >> (n - 1)) ^ x) & 1U);
  }
  return count;
}

bool is_contiguous_periodic(const BlockMask& mask) {
  return mask.is_trivial() || boundary_count(mask, Boundary::periodic) == 2;
}

BlockMask parse_block(int n_sites, std::string_view text) {
  text = trim(text);
  if (text.starts_with("mask:")) {
    const long long v = parse_int(text.substr(5));
    if (v < 0) throw std::invalid_argument("negative mask");
    return {n_sites, static_cast<std::uint64_t>(v)};
  }
  std::vector<int> sites;
  for (auto part : split(text, ',')) {
    part = trim(part);
    if (part.empty()) continue;
    const auto dash = part.find('-');
    if (dash != std::string_view::npos && dash > 0) {
      const auto lo = parse_int(part.substr(0, dash));
      const auto hi = parse_int(part.substr(dash + 1));
      if (hi < lo) throw std::invalid_argument("empty site range '" + std::string(part) + "'");
      for (auto s = lo; s <= hi; ++s) sites.push_back(static_cast<int>(s));
    } else {
      sites.push_back(static_cast<int>(parse_int(part)));
    }
  }
  return BlockMask::from_sites(n_sites, sites);
}

}  // namespace eam
