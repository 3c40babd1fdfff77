#include "zslab/indicator_set.hpp"

#include <algorithm>

#include "zslab/error.hpp"

namespace zslab {

namespace {

// 16 MiB of words per set, the same budget as 2^27 unpadded bits.
constexpr std::size_t kMaxWords = kDefaultMaxCells / 64;

std::vector<IndicatorSet::Word>& scratch(std::size_t n) {
  thread_local std::vector<IndicatorSet::Word> buf;
  if (buf.size() < n) buf.resize(n);
  return buf;
}

std::vector<IndicatorSet::Word>& scratch2(std::size_t n) {
  thread_local std::vector<IndicatorSet::Word> buf;
  if (buf.size() < n) buf.resize(n);
  return buf;
}

}  // namespace

IndicatorSet::IndicatorSet(GroupSpec spec) : spec_(std::move(spec)) {
  stride_ = (spec_.p() + 63) / 64;
  rows_ = spec_.order() / spec_.p();
  std::size_t words = std::size_t{stride_} * rows_;
  if (words > kMaxWords) {
    throw InputError(spec_.describe() + " needs " + std::to_string(words * 8) +
                     " bytes per indicator set, above the 16 MiB cap");
  }
  bits_.assign(words, 0);
}

IndicatorSet IndicatorSet::full(const GroupSpec& spec) {
  IndicatorSet s(spec);
  const std::uint32_t p = spec.p();
  for (std::uint32_t r = 0; r < s.rows_; ++r) {
    for (std::uint32_t w = 0; w < s.stride_; ++w) {
      std::uint32_t bits_here = std::min<std::uint32_t>(64, p - w * 64);
      s.bits_[std::size_t{r} * s.stride_ + w] = bits_here == 64 ? ~Word{0} : ((Word{1} << bits_here) - 1);
    }
  }
  s.card_ = spec.order();
  return s;
}

IndicatorSet IndicatorSet::singleton(const GroupSpec& spec, Element x) {
  IndicatorSet s(spec);
  s.insert(x);
  return s;
}

IndicatorSet IndicatorSet::from_elements(const GroupSpec& spec, std::span<const Element> xs) {
  IndicatorSet s(spec);
  for (Element x : xs) s.insert(x);
  return s;
}

bool IndicatorSet::contains(Element x) const noexcept {
  return x.index < spec_.order() && (bits_[word_of(x)] & bit_of(x)) != 0;
}

void IndicatorSet::insert(Element x) {
  if (!spec_.contains(x)) throw InputError("element index out of range");
  Word& w = bits_[word_of(x)];
  if (!(w & bit_of(x))) {
    w |= bit_of(x);
    ++card_;
  }
}

void IndicatorSet::erase(Element x) {
  if (!spec_.contains(x)) return;
  Word& w = bits_[word_of(x)];
  if (w & bit_of(x)) {
    w &= ~bit_of(x);
    --card_;
  }
}

void IndicatorSet::clear() noexcept {
  std::fill(bits_.begin(), bits_.end(), 0);
  card_ = 0;
}

std::vector<Element> IndicatorSet::elements() const {
  std::vector<Element> out;
  out.reserve(card_);
  for_each([&](Element x) { out.push_back(x); });
  return out;
}

void IndicatorSet::recount() noexcept { card_ = simd::active().popcount(bits_); }

void IndicatorSet::check_spec(const IndicatorSet& other) const {
  if (!(other.spec_ == spec_)) throw InputError("indicator sets live in different groups");
}

void IndicatorSet::rotate_rows(std::span<const Word> src, std::uint32_t shift, std::span<Word> out) const noexcept {
  const std::uint32_t p = spec_.p();
  const Word tail_mask = (p % 64) ? ((Word{1} << (p % 64)) - 1) : ~Word{0};
  std::fill(out.begin(), out.begin() + bits_.size(), 0);
  for (std::uint32_t r = 0; r < rows_; ++r) {
    auto in = src.subspan(std::size_t{r} * stride_, stride_);
    auto o = out.subspan(std::size_t{r} * stride_, stride_);
    simd::shl_or(o, in, shift);
    o[stride_ - 1] &= tail_mask;
    simd::shr_or(o, in, p - shift);
  }
}

void IndicatorSet::or_rows_shifted(std::span<Word> dst, std::span<const Word> src, std::uint32_t row_shift) const noexcept {
  const auto& k = simd::active();
  if (spec_.d() == 1) {
    k.or_into(dst.first(stride_), src.first(stride_));
    return;
  }
  const std::uint32_t p = spec_.p();
  const std::size_t block = std::size_t{p} * stride_;
  const std::uint32_t v1 = row_shift % p;
  const std::uint32_t outer_shift = row_shift / p;
  const std::uint32_t outer_count = rows_ / p;
  const std::uint32_t outer_dims = spec_.d() - 2;
  // Mixed-radix digits of the outer (coordinates 2..d-1) translation.
  std::vector<std::uint32_t> shift_digits(outer_dims), cur(outer_dims, 0);
  for (std::uint32_t i = 0, v = outer_shift; i < outer_dims; ++i, v /= p) shift_digits[i] = v % p;
  for (std::uint32_t o = 0; o < outer_count; ++o) {
    std::uint32_t target = 0;
    for (std::uint32_t i = outer_dims; i-- > 0;) {
      std::uint32_t digit = cur[i] + shift_digits[i];
      if (digit >= p) digit -= p;
      target = target * p + digit;
    }
    const std::size_t sbase = std::size_t{o} * block, dbase = std::size_t{target} * block;
    const std::size_t upper = std::size_t{p - v1} * stride_;
    k.or_into(dst.subspan(dbase + std::size_t{v1} * stride_, upper), src.subspan(sbase, upper));
    if (v1) {
      k.or_into(dst.subspan(dbase, std::size_t{v1} * stride_), src.subspan(sbase + upper, std::size_t{v1} * stride_));
    }
    for (std::uint32_t i = 0; i < outer_dims && ++cur[i] == p; ++i) cur[i] = 0;
  }
}

void IndicatorSet::or_translated(const IndicatorSet& src, Element v) {
  check_spec(src);
  const std::uint32_t p = spec_.p();
  const std::uint32_t v0 = v.index % p;
  const std::size_t n = bits_.size();
  std::span<const Word> rows = src.bits_;
  if (v0 != 0) {
    auto& buf = scratch(n);
    rotate_rows(src.bits_, v0, buf);
    rows = std::span<const Word>(buf.data(), n);
  } else if (&src == this) {
    auto& buf = scratch(n);
    std::copy(bits_.begin(), bits_.end(), buf.begin());
    rows = std::span<const Word>(buf.data(), n);
  }
  or_rows_shifted(bits_, rows, v.index / p);
  recount();
}

IndicatorSet IndicatorSet::translated(Element v) const {
  IndicatorSet out(spec_);
  out.or_translated(*this, v);
  return out;
}

std::size_t IndicatorSet::translate_gain(Element v) const {
  const std::size_t n = bits_.size();
  auto& shifted = scratch2(n);
  std::fill(shifted.begin(), shifted.begin() + n, 0);
  const std::uint32_t p = spec_.p();
  std::span<const Word> rows = bits_;
  if (v.index % p != 0) {
    auto& buf = scratch(n);
    rotate_rows(bits_, v.index % p, buf);
    rows = std::span<const Word>(buf.data(), n);
  }
  std::span<Word> out(shifted.data(), n);
  or_rows_shifted(out, rows, v.index / p);
  return simd::active().andnot_popcount(out, bits_);
}

IndicatorSet& IndicatorSet::operator|=(const IndicatorSet& other) {
  check_spec(other);
  simd::active().or_into(bits_, other.bits_);
  recount();
  return *this;
}

IndicatorSet& IndicatorSet::operator&=(const IndicatorSet& other) {
  check_spec(other);
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] &= other.bits_[i];
  recount();
  return *this;
}

std::size_t IndicatorSet::count_minus(const IndicatorSet& other) const {
  check_spec(other);
  return simd::active().andnot_popcount(bits_, other.bits_);
}

bool IndicatorSet::is_subset_of(const IndicatorSet& other) const {
  check_spec(other);
  return simd::active().is_subset(bits_, other.bits_);
}

bool IndicatorSet::intersects(const IndicatorSet& other) const {
  check_spec(other);
  return simd::active().intersects(bits_, other.bits_);
}

IndicatorSet sumset(const IndicatorSet& x, const IndicatorSet& y) {
  x.check_spec(y);
  const GroupSpec& spec = x.spec();
  IndicatorSet out(spec);
  if (x.empty() || y.empty()) return out;
  const IndicatorSet& small = x.size() <= y.size() ? x : y;
  const IndicatorSet& large = x.size() <= y.size() ? y : x;
  const std::uint32_t p = spec.p();
  // Group the shifts by first coordinate so each row rotation of `large` is done once.
  std::vector<Element> shifts = small.elements();
  std::stable_sort(shifts.begin(), shifts.end(),
                   [p](Element a, Element b) { return a.index % p < b.index % p; });
  const std::size_t n = out.bits_.size();
  std::vector<IndicatorSet::Word> rotated(n);
  std::uint32_t current = p;  // sentinel: nothing rotated yet
  std::size_t since_check = 0;
  for (Element v : shifts) {
    std::uint32_t v0 = v.index % p;
    if (v0 != current) {
      if (v0 == 0) {
        std::copy(large.bits_.begin(), large.bits_.end(), rotated.begin());
      } else {
        large.rotate_rows(large.bits_, v0, rotated);
      }
      current = v0;
    }
    out.or_rows_shifted(out.bits_, rotated, v.index / p);
    if (++since_check == 16) {
      since_check = 0;
      out.recount();
      if (out.is_full()) return out;
    }
  }
  out.recount();
  return out;
}

}  // namespace zslab
