#include "zslab/group.hpp"

#include <algorithm>

#include "zslab/error.hpp"

namespace zslab {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Input: return "input";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Budget: return "budget";
    case ErrorKind::Internal: return "internal";
  }
  return "internal";
}

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mul_mod64(r, b, m);
    b = mul_mod64(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This witness set is exact below 3.3e24.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = pow_mod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  if (a % p == 0) throw DomainError("zero has no inverse mod " + std::to_string(p));
  return static_cast<std::uint32_t>(pow_mod64(a % p, p - 2, p));
}

GroupSpec::GroupSpec(std::uint32_t p, std::uint32_t d) : p_(p), d_(d), powers_(d + 1) {
  powers_[0] = 1;
  for (std::uint32_t i = 1; i <= d; ++i) powers_[i] = powers_[i - 1] * p;
  order_ = powers_[d];
}

GroupSpec GroupSpec::make(std::uint64_t p, std::uint32_t d, const Limits& limits) {
  if (!is_prime(p)) throw InputError("modulus " + std::to_string(p) + " is not prime");
  if (d == 0) throw InputError("dimension must be at least 1");
  std::uint64_t cap = std::min<std::uint64_t>(limits.max_cells, std::uint64_t{1} << 31);
  std::uint64_t order = 1;
  for (std::uint32_t i = 0; i < d; ++i) {
    order *= p;
    if (order > cap) {
      throw InputError("F_" + std::to_string(p) + "^" + std::to_string(d) +
                       " exceeds the universe cap of " + std::to_string(cap) +
                       " cells (one bit per cell per set); choose a smaller p or d");
    }
  }
  return GroupSpec(static_cast<std::uint32_t>(p), d);
}

Element GroupSpec::encode(std::span<const std::uint32_t> coords) const {
  if (coords.size() != d_) {
    throw InputError("expected " + std::to_string(d_) + " coordinates, got " +
                     std::to_string(coords.size()));
  }
  std::uint32_t idx = 0;
  for (std::uint32_t i = 0; i < d_; ++i) {
    if (coords[i] >= p_) {
      throw InputError("coordinate " + std::to_string(coords[i]) + " is not a residue mod " +
                       std::to_string(p_));
    }
    idx += coords[i] * powers_[i];
  }
  return Element{idx};
}

Coords GroupSpec::decode(Element x) const {
  Coords c(d_);
  std::uint32_t v = x.index;
  for (std::uint32_t i = 0; i < d_; ++i) {
    c[i] = v % p_;
    v /= p_;
  }
  return c;
}

Element GroupSpec::add(Element a, Element b) const noexcept {
  std::uint32_t x = a.index, y = b.index, out = 0;
  for (std::uint32_t i = 0; i < d_; ++i) {
    std::uint32_t s = x % p_ + y % p_;
    if (s >= p_) s -= p_;
    out += s * powers_[i];
    x /= p_;
    y /= p_;
  }
  return Element{out};
}

Element GroupSpec::neg(Element a) const noexcept {
  std::uint32_t x = a.index, out = 0;
  for (std::uint32_t i = 0; i < d_; ++i) {
    std::uint32_t c = x % p_;
    out += (c == 0 ? 0 : p_ - c) * powers_[i];
    x /= p_;
  }
  return Element{out};
}

Element GroupSpec::sub(Element a, Element b) const noexcept { return add(a, neg(b)); }

Element GroupSpec::scale(std::uint64_t k, Element a) const noexcept {
  k %= p_;
  std::uint32_t x = a.index, out = 0;
  for (std::uint32_t i = 0; i < d_; ++i) {
    out += static_cast<std::uint32_t>((x % p_) * k % p_) * powers_[i];
    x /= p_;
  }
  return Element{out};
}

std::uint32_t GroupSpec::dot(std::span<const std::uint32_t> n, Element x) const noexcept {
  std::uint64_t s = 0;
  std::uint32_t v = x.index;
  for (std::uint32_t i = 0; i < d_; ++i) {
    s += std::uint64_t{n[i]} * (v % p_);
    v /= p_;
  }
  return static_cast<std::uint32_t>(s % p_);
}

std::string GroupSpec::describe() const {
  return "F_" + std::to_string(p_) + "^" + std::to_string(d_);
}

std::uint32_t norm(const GroupSpec& spec, Element x) {
  if (spec.d() != 1) throw DomainError("norm is defined on F_p only (d = 1)");
  std::uint32_t v = x.index % spec.p();
  return std::min(v, spec.p() - v);
}

}  // namespace zslab
