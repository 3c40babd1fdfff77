// Compiled with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include <bit>

#include "zslab/simd/kernels.hpp"

namespace zslab::simd {

namespace {

// Nibble-lookup popcount (Mula), 4 words per step.
inline __m256i popcount_bytes(__m256i v) {
  const __m256i lookup = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                          0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low = _mm256_set1_epi8(0x0f);
  __m256i lo = _mm256_and_si256(v, low);
  __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low);
  return _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo), _mm256_shuffle_epi8(lookup, hi));
}

inline std::size_t horizontal_sum(__m256i acc) {
  return static_cast<std::size_t>(_mm256_extract_epi64(acc, 0) + _mm256_extract_epi64(acc, 1) +
                                  _mm256_extract_epi64(acc, 2) + _mm256_extract_epi64(acc, 3));
}

inline __m256i load(const Word* p) { return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p)); }

void or_into_avx2(std::span<Word> dst, std::span<const Word> src) {
  const std::size_t n = dst.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i v = _mm256_or_si256(load(dst.data() + i), load(src.data() + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst.data() + i), v);
  }
  for (; i < n; ++i) dst[i] |= src[i];
}

std::size_t popcount_avx2(std::span<const Word> a) {
  const std::size_t n = a.size();
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(popcount_bytes(load(a.data() + i)), _mm256_setzero_si256()));
  }
  std::size_t total = horizontal_sum(acc);
  for (; i < n; ++i) total += static_cast<std::size_t>(std::popcount(a[i]));
  return total;
}

std::size_t andnot_popcount_avx2(std::span<const Word> a, std::span<const Word> b) {
  const std::size_t n = a.size();
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i v = _mm256_andnot_si256(load(b.data() + i), load(a.data() + i));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(popcount_bytes(v), _mm256_setzero_si256()));
  }
  std::size_t total = horizontal_sum(acc);
  for (; i < n; ++i) total += static_cast<std::size_t>(std::popcount(a[i] & ~b[i]));
  return total;
}

bool intersects_avx2(std::span<const Word> a, std::span<const Word> b) {
  const std::size_t n = a.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i v = _mm256_and_si256(load(a.data() + i), load(b.data() + i));
    if (!_mm256_testz_si256(v, v)) return true;
  }
  for (; i < n; ++i) {
    if (a[i] & b[i]) return true;
  }
  return false;
}

bool is_subset_avx2(std::span<const Word> a, std::span<const Word> b) {
  const std::size_t n = a.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    // testc(b, a) is 1 iff (~b & a) == 0
    if (!_mm256_testc_si256(load(b.data() + i), load(a.data() + i))) return false;
  }
  for (; i < n; ++i) {
    if (a[i] & ~b[i]) return false;
  }
  return true;
}

}  // namespace

extern const KernelTable kAvx2Table;
const KernelTable kAvx2Table{
    Backend::Avx2, "avx2", or_into_avx2, popcount_avx2, andnot_popcount_avx2,
    intersects_avx2, is_subset_avx2,
};

}  // namespace zslab::simd
