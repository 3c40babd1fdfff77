#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "zslab/group.hpp"

namespace zslab {

/// A finite multiset of group elements, kept sorted by canonical index with
/// multiplicities merged. Equality is multiset equality.
class ElementSequence {
 public:
  struct Entry {
    Element element;
    std::uint32_t multiplicity = 0;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  explicit ElementSequence(GroupSpec spec) : spec_(std::move(spec)) {}
  static ElementSequence from_elements(const GroupSpec& spec, std::span<const Element> xs);
  static ElementSequence from_coords(const GroupSpec& spec,
                                     const std::vector<Coords>& points);

  void add(Element x, std::uint32_t k = 1);
  /// Removes k copies of x; throws InputError if fewer are present.
  void remove(Element x, std::uint32_t k = 1);

  const GroupSpec& spec() const noexcept { return spec_; }
  std::span<const Entry> entries() const noexcept { return entries_; }
  std::size_t distinct() const noexcept { return entries_.size(); }
  std::uint64_t length() const noexcept { return length_; }
  bool empty() const noexcept { return length_ == 0; }
  std::uint32_t multiplicity(Element x) const noexcept;

  /// Canonical order with repeats.
  std::vector<Element> expanded() const;
  Element total() const noexcept;

  ElementSequence& operator+=(const ElementSequence& other);
  /// Multiset difference; throws InputError unless other is a sub-multiset.
  ElementSequence minus(const ElementSequence& other) const;
  bool includes(const ElementSequence& other) const noexcept;

  friend bool operator==(const ElementSequence& a, const ElementSequence& b) noexcept {
    return a.spec_ == b.spec_ && a.entries_ == b.entries_;
  }

 private:
  GroupSpec spec_;
  std::vector<Entry> entries_;
  std::uint64_t length_ = 0;
};

ElementSequence operator+(ElementSequence a, const ElementSequence& b);

/// b * A for d = 1; b must be a nonzero residue.
ElementSequence dilate(std::uint32_t b, const ElementSequence& a);
/// A + v, each element shifted.
ElementSequence translate(const ElementSequence& a, Element v);

}  // namespace zslab
