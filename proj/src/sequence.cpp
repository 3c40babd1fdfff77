#include "zslab/sequence.hpp"

#include <algorithm>

#include "zslab/error.hpp"

namespace zslab {

ElementSequence ElementSequence::from_elements(const GroupSpec& spec, std::span<const Element> xs) {
  ElementSequence s(spec);
  for (Element x : xs) s.add(x);
  return s;
}

ElementSequence ElementSequence::from_coords(const GroupSpec& spec,
                                             const std::vector<Coords>& points) {
  ElementSequence s(spec);
  for (const auto& c : points) s.add(spec.encode(c));
  return s;
}

void ElementSequence::add(Element x, std::uint32_t k) {
  if (!spec_.contains(x)) throw InputError("element index out of range");
  if (k == 0) return;
  auto it = std::lower_bound(entries_.begin(), entries_.end(), x,
                             [](const Entry& e, Element v) { return e.element < v; });
  if (it != entries_.end() && it->element == x) {
    it->multiplicity += k;
  } else {
    entries_.insert(it, Entry{x, k});
  }
  length_ += k;
}

void ElementSequence::remove(Element x, std::uint32_t k) {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), x,
                             [](const Entry& e, Element v) { return e.element < v; });
  if (it == entries_.end() || it->element != x || it->multiplicity < k) {
    throw InputError("cannot remove " + std::to_string(k) + " copies of element " +
                     std::to_string(x.index));
  }
  it->multiplicity -= k;
  if (it->multiplicity == 0) entries_.erase(it);
  length_ -= k;
}

std::uint32_t ElementSequence::multiplicity(Element x) const noexcept {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), x,
                             [](const Entry& e, Element v) { return e.element < v; });
  return (it != entries_.end() && it->element == x) ? it->multiplicity : 0;
}

std::vector<Element> ElementSequence::expanded() const {
  std::vector<Element> out;
  out.reserve(length_);
  for (const auto& e : entries_) out.insert(out.end(), e.multiplicity, e.element);
  return out;
}

Element ElementSequence::total() const noexcept {
  Element s = spec_.zero();
  for (const auto& e : entries_) s = spec_.add(s, spec_.scale(e.multiplicity, e.element));
  return s;
}

ElementSequence& ElementSequence::operator+=(const ElementSequence& other) {
  if (!(other.spec_ == spec_)) throw InputError("sequence spec mismatch");
  for (const auto& e : other.entries_) add(e.element, e.multiplicity);
  return *this;
}

ElementSequence operator+(ElementSequence a, const ElementSequence& b) {
  a += b;
  return a;
}

ElementSequence ElementSequence::minus(const ElementSequence& other) const {
  ElementSequence out = *this;
  for (const auto& e : other.entries_) out.remove(e.element, e.multiplicity);
  return out;
}

bool ElementSequence::includes(const ElementSequence& other) const noexcept {
  if (!(other.spec_ == spec_)) return false;
  for (const auto& e : other.entries_) {
    if (multiplicity(e.element) < e.multiplicity) return false;
  }
  return true;
}

ElementSequence dilate(std::uint32_t b, const ElementSequence& a) {
  const auto& spec = a.spec();
  if (spec.d() != 1) throw DomainError("dilation is defined for d = 1");
  if (b % spec.p() == 0) throw InputError("dilation factor must be a nonzero residue");
  ElementSequence out(spec);
  for (const auto& e : a.entries()) out.add(spec.scale(b, e.element), e.multiplicity);
  return out;
}

ElementSequence translate(const ElementSequence& a, Element v) {
  ElementSequence out(a.spec());
  for (const auto& e : a.entries()) out.add(a.spec().add(e.element, v), e.multiplicity);
  return out;
}

}  // namespace zslab
