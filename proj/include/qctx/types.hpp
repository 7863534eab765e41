#pragma once

#include <bit>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

namespace qctx {

/// Subset of a context's atoms, bit i = atom i. Identifies an element of the
/// projector lattice of that context and, equivalently, a subset of its
/// spectrum.
using AtomMask = std::uint64_t;

inline constexpr std::size_t kMaxAtoms = 64;

inline AtomMask full_mask(std::size_t atoms) {
  return atoms >= 64 ? ~AtomMask{0} : ((AtomMask{1} << atoms) - 1);
}

inline bool mask_has(AtomMask m, std::size_t i) { return ((m >> i) & 1U) != 0; }

inline std::size_t mask_size(AtomMask m) { return static_cast<std::size_t>(std::popcount(m)); }

inline std::vector<std::size_t> mask_indices(AtomMask m) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; m != 0; ++i, m >>= 1) {
    if (m & 1U) out.push_back(i);
  }
  return out;
}

/// 64-bit FNV-1a, rendered as 16 hex digits.
inline std::string stable_hash_hex(std::string_view text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace qctx
