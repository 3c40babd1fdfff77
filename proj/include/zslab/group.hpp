#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace zslab {

/// Residue vector of length d, entries in [0, p).
using Coords = std::vector<std::uint32_t>;

/// An element of F_p^d, identified by its mixed-radix index sum_i coords[i] * p^i.
struct Element {
  std::uint32_t index = 0;
  friend constexpr auto operator<=>(Element, Element) = default;
};

/// Default universe cap: 2^27 cells, i.e. 16 MiB per indicator set.
inline constexpr std::uint64_t kDefaultMaxCells = std::uint64_t{1} << 27;

struct Limits {
  std::uint64_t max_cells = kDefaultMaxCells;
};

/// Deterministic Miller-Rabin; exact for every 64-bit input.
bool is_prime(std::uint64_t n) noexcept;

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p);

/// The ambient group F_p^d. Immutable after construction.
class GroupSpec {
 public:
  /// Throws InputError for a non-prime p, d == 0 or an order above the cap.
  static GroupSpec make(std::uint64_t p, std::uint32_t d, const Limits& limits = {});

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t d() const noexcept { return d_; }
  std::uint32_t order() const noexcept { return order_; }
  /// p^i for i in [0, d].
  std::uint32_t power(std::uint32_t i) const noexcept { return powers_[i]; }

  Element encode(std::span<const std::uint32_t> coords) const;
  Coords decode(Element x) const;
  std::uint32_t coord(Element x, std::uint32_t i) const noexcept {
    return (x.index / powers_[i]) % p_;
  }

  Element zero() const noexcept { return Element{0}; }
  Element add(Element a, Element b) const noexcept;
  Element sub(Element a, Element b) const noexcept;
  Element neg(Element a) const noexcept;
  Element scale(std::uint64_t k, Element a) const noexcept;
  /// Standard dot product <n, x> mod p.
  std::uint32_t dot(std::span<const std::uint32_t> n, Element x) const noexcept;

  bool contains(Element x) const noexcept { return x.index < order_; }
  std::string describe() const;

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) noexcept {
    return a.p_ == b.p_ && a.d_ == b.d_;
  }

 private:
  GroupSpec(std::uint32_t p, std::uint32_t d);

  std::uint32_t p_ = 2;
  std::uint32_t d_ = 1;
  std::uint32_t order_ = 2;
  std::vector<std::uint32_t> powers_;
};

/// Circular distance from x to 0 in F_p. Requires d == 1.
std::uint32_t norm(const GroupSpec& spec, Element x);

}  // namespace zslab
