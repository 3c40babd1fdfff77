#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "zslab/group.hpp"
#include "zslab/simd/kernels.hpp"

namespace zslab {

/// Dense membership over the p^d cells of F_p^d.
///
/// Storage is row-major over the first coordinate: row r = index / p holds the
/// p cells with that tail, padded to a whole number of 64-bit words. Adding a
/// vector v then splits into a cyclic bit rotation of every row by v_0 and a
/// permutation of whole rows by the tail of v, so the bulk of every translate
/// is a contiguous word OR handled by the SIMD kernels.
///
/// Padding bits are always zero and size() always equals the number of set cells.
class IndicatorSet {
 public:
  using Word = simd::Word;

  explicit IndicatorSet(GroupSpec spec);
  static IndicatorSet full(const GroupSpec& spec);
  static IndicatorSet singleton(const GroupSpec& spec, Element x);
  static IndicatorSet from_elements(const GroupSpec& spec, std::span<const Element> xs);

  const GroupSpec& spec() const noexcept { return spec_; }
  std::size_t size() const noexcept { return card_; }
  bool empty() const noexcept { return card_ == 0; }
  bool is_full() const noexcept { return card_ == spec_.order(); }

  bool contains(Element x) const noexcept;
  void insert(Element x);
  void erase(Element x);
  void clear() noexcept;

  std::vector<Element> elements() const;
  template <class F>
  void for_each(F&& f) const;

  /// this |= src + v. src may alias this.
  void or_translated(const IndicatorSet& src, Element v);
  IndicatorSet translated(Element v) const;
  /// |(v + this) \ this|
  std::size_t translate_gain(Element v) const;

  IndicatorSet& operator|=(const IndicatorSet& other);
  IndicatorSet& operator&=(const IndicatorSet& other);
  /// |this \ other|
  std::size_t count_minus(const IndicatorSet& other) const;
  bool is_subset_of(const IndicatorSet& other) const;
  bool intersects(const IndicatorSet& other) const;

  std::span<const Word> words() const noexcept { return bits_; }
  std::size_t row_words() const noexcept { return stride_; }

  friend bool operator==(const IndicatorSet& a, const IndicatorSet& b) noexcept {
    return a.spec_ == b.spec_ && a.card_ == b.card_ && a.bits_ == b.bits_;
  }

 private:
  friend IndicatorSet sumset(const IndicatorSet&, const IndicatorSet&);

  std::size_t word_of(Element x) const noexcept { return (x.index / spec_.p()) * stride_ + (x.index % spec_.p()) / 64; }
  Word bit_of(Element x) const noexcept { return Word{1} << ((x.index % spec_.p()) % 64); }
  void recount() noexcept;
  void check_spec(const IndicatorSet& other) const;

  // Rotates every row of src cyclically by shift into out (sized like bits_).
  void rotate_rows(std::span<const Word> src, std::uint32_t shift, std::span<Word> out) const noexcept;
  // dst |= src with whole rows permuted by the tail translation row_shift.
  void or_rows_shifted(std::span<Word> dst, std::span<const Word> src, std::uint32_t row_shift) const noexcept;

  GroupSpec spec_;
  std::uint32_t stride_ = 1;  // words per row
  std::uint32_t rows_ = 1;
  std::vector<Word> bits_;
  std::size_t card_ = 0;
};

template <class F>
void IndicatorSet::for_each(F&& f) const {
  const std::uint32_t p = spec_.p();
  for (std::uint32_t r = 0; r < rows_; ++r) {
    for (std::uint32_t w = 0; w < stride_; ++w) {
      Word bits = bits_[std::size_t{r} * stride_ + w];
      while (bits) {
        std::uint32_t b = static_cast<std::uint32_t>(__builtin_ctzll(bits));
        f(Element{r * p + w * 64 + b});
        bits &= bits - 1;
      }
    }
  }
}

}  // namespace zslab
