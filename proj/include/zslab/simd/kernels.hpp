#pragma once

// Word-level kernels behind IndicatorSet. Each kernel has a portable scalar
// reference and, where the build and the CPU allow it, an AVX2 variant. The
// active table is chosen once at first use; ZSLAB_SIMD=scalar|avx2|auto
// overrides the choice.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace zslab::simd {

using Word = std::uint64_t;

enum class Backend { Scalar, Avx2 };

struct KernelTable {
  Backend backend;
  std::string_view name;
  /// dst |= src
  void (*or_into)(std::span<Word> dst, std::span<const Word> src);
  /// popcount(a)
  std::size_t (*popcount)(std::span<const Word> a);
  /// popcount(a & ~b)
  std::size_t (*andnot_popcount)(std::span<const Word> a, std::span<const Word> b);
  /// (a & b) != 0
  bool (*intersects)(std::span<const Word> a, std::span<const Word> b);
  /// (a & ~b) == 0
  bool (*is_subset)(std::span<const Word> a, std::span<const Word> b);
};

const KernelTable& scalar_kernels() noexcept;
/// nullptr when the build has no AVX2 variant or the CPU lacks AVX2.
const KernelTable* avx2_kernels() noexcept;

const KernelTable& active() noexcept;
/// Pins the active table; returns false (and changes nothing) if unavailable.
bool select(Backend backend) noexcept;

// Bit-level helpers; scalar only, they sit outside the hot OR/count loops.

/// dst |= (src << shift), truncated to dst.size() words.
void shl_or(std::span<Word> dst, std::span<const Word> src, std::size_t shift) noexcept;
/// dst |= (src >> shift)
void shr_or(std::span<Word> dst, std::span<const Word> src, std::size_t shift) noexcept;

}  // namespace zslab::simd
