#include <bit>

#include "zslab/simd/kernels.hpp"

namespace zslab::simd {

namespace {

void or_into_scalar(std::span<Word> dst, std::span<const Word> src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] |= src[i];
}

std::size_t popcount_scalar(std::span<const Word> a) {
  std::size_t n = 0;
  for (Word w : a) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::size_t andnot_popcount_scalar(std::span<const Word> a, std::span<const Word> b) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n += static_cast<std::size_t>(std::popcount(a[i] & ~b[i]));
  return n;
}

bool intersects_scalar(std::span<const Word> a, std::span<const Word> b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] & b[i]) return true;
  }
  return false;
}

bool is_subset_scalar(std::span<const Word> a, std::span<const Word> b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] & ~b[i]) return false;
  }
  return true;
}

constexpr KernelTable kScalar{
    Backend::Scalar, "scalar", or_into_scalar, popcount_scalar, andnot_popcount_scalar,
    intersects_scalar, is_subset_scalar,
};

}  // namespace

const KernelTable& scalar_kernels() noexcept { return kScalar; }

void shl_or(std::span<Word> dst, std::span<const Word> src, std::size_t shift) noexcept {
  const std::size_t ws = shift / 64, bs = shift % 64;
  for (std::size_t i = dst.size(); i-- > ws;) {
    std::size_t j = i - ws;
    if (j >= src.size()) continue;
    Word v = src[j] << bs;
    if (bs && j > 0) v |= src[j - 1] >> (64 - bs);
    dst[i] |= v;
  }
}

void shr_or(std::span<Word> dst, std::span<const Word> src, std::size_t shift) noexcept {
  const std::size_t ws = shift / 64, bs = shift % 64;
  for (std::size_t i = 0; i < dst.size(); ++i) {
    std::size_t j = i + ws;
    if (j >= src.size()) break;
    Word v = src[j] >> bs;
    if (bs && j + 1 < src.size()) v |= src[j + 1] << (64 - bs);
    dst[i] |= v;
  }
}

}  // namespace zslab::simd
