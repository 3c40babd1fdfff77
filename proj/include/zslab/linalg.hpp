#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "zslab/group.hpp"
#include "zslab/sequence.hpp"

namespace zslab {

/// Reduced row-echelon form over F_p. Rows are reduced in place; returns the
/// pivot column of each surviving row. Zero rows are dropped.
std::vector<std::uint32_t> row_reduce(std::uint32_t p, std::vector<Coords>& rows);

std::uint32_t rank(std::uint32_t p, std::vector<Coords> rows);

/// A linear subspace of F_p^d held as its unique reduced row-echelon basis.
class Subspace {
 public:
  static Subspace zero(const GroupSpec& spec);
  static Subspace full(const GroupSpec& spec);
  static Subspace span(const GroupSpec& spec, std::vector<Coords> vectors);
  static Subspace span(const GroupSpec& spec, std::span<const Element> vectors);
  /// {x : <row, x> = 0 for every row}.
  static Subspace kernel(const GroupSpec& spec, std::span<const Coords> rows);

  const GroupSpec& spec() const noexcept { return spec_; }
  std::uint32_t dim() const noexcept { return static_cast<std::uint32_t>(basis_.size()); }
  const std::vector<Coords>& basis() const noexcept { return basis_; }
  const std::vector<std::uint32_t>& pivots() const noexcept { return pivots_; }
  std::uint64_t size() const noexcept;

  bool contains(Element x) const;
  bool contains(const Coords& x) const;
  bool is_subspace_of(const Subspace& other) const;

  /// Unique representative of the coset x + H: x with every pivot column cleared.
  Element coset_rep(Element x) const;
  /// Coefficients of x in the echelon basis; x must lie in the subspace.
  Coords coordinates(Element x) const;
  Element combine(std::span<const std::uint32_t> coeffs) const;
  std::vector<Element> elements() const;

  /// Span of the unit vectors at the non-pivot columns; a complement of this space.
  Subspace complement() const;
  Subspace operator+(const Subspace& other) const;

  friend bool operator==(const Subspace& a, const Subspace& b) noexcept {
    return a.spec_ == b.spec_ && a.basis_ == b.basis_;
  }

 private:
  explicit Subspace(GroupSpec spec) : spec_(std::move(spec)) {}

  GroupSpec spec_;
  std::vector<Coords> basis_;
  std::vector<std::uint32_t> pivots_;
};

/// A linear hyperplane {x : <normal, x> = 0}; the normal's first nonzero entry is 1.
struct Hyperplane {
  Coords normal;
  Subspace space;
};

/// All canonical normals (first nonzero coordinate 1), lexicographic order.
std::vector<Coords> canonical_normals(const GroupSpec& spec);
/// All (p^d - 1)/(p - 1) linear hyperplanes; requires d >= 2.
std::vector<Hyperplane> enumerate_hyperplanes(const GroupSpec& spec);

/// translate + space.
struct AffineFlat {
  Element translate;
  Subspace space;

  bool contains(Element x) const { return space.contains(space.spec().sub(x, translate)); }
  Element canonical_translate() const { return space.coset_rep(translate); }
  std::vector<Element> elements() const;
  friend bool operator==(const AffineFlat& a, const AffineFlat& b) {
    return a.space == b.space && a.space.contains(a.space.spec().sub(a.translate, b.translate));
  }
};

struct Projection {
  Element onto_first;
  Element onto_second;
};

/// Unique a = a_H + a_H2 with a_H in h and a_H2 in h2; throws DomainError
/// unless h and h2 are complementary.
Projection project(Element a, const Subspace& h, const Subspace& h2);

/// True iff the d difference vectors v_i - v_0 are linearly independent.
bool is_affine_basis(const GroupSpec& spec, std::span<const Element> vectors);

/// A d x d matrix over F_p acting on column vectors.
class LinearMap {
 public:
  static LinearMap identity(const GroupSpec& spec);
  static LinearMap from_rows(const GroupSpec& spec, std::vector<Coords> rows);

  const GroupSpec& spec() const noexcept { return spec_; }
  const std::vector<Coords>& rows() const noexcept { return rows_; }
  bool invertible() const noexcept { return invertible_; }
  Element apply(Element x) const;
  LinearMap compose(const LinearMap& inner) const;  // this o inner

 private:
  LinearMap(GroupSpec spec, std::vector<Coords> rows);

  GroupSpec spec_;
  std::vector<Coords> rows_;
  bool invertible_ = false;
};

/// Pointwise image. Throws DomainError for a singular map when invertibility is required.
ElementSequence apply_map(const LinearMap& map, const ElementSequence& a,
                          bool require_invertible = true);

/// {x : <normal, x> = offset}, normal canonical.
struct AffineHyperplane {
  Coords normal;
  std::uint32_t offset = 0;

  bool contains(const GroupSpec& spec, Element x) const { return spec.dot(normal, x) == offset; }
  AffineFlat flat(const GroupSpec& spec) const;
  friend bool operator==(const AffineHyperplane&, const AffineHyperplane&) = default;
};

struct HyperplaneCount {
  AffineHyperplane hyperplane;
  std::uint64_t count = 0;  // with multiplicity
};

/// The affine hyperplane holding the most elements of a (with multiplicity).
/// Ties go to the lexicographically first normal, then the smallest offset.
/// When `through` is given only hyperplanes containing that point compete.
/// For d = 1 the affine hyperplanes are the single points.
HyperplaneCount richest_affine_hyperplane(const ElementSequence& a,
                                          std::optional<Element> through = std::nullopt);

/// Every invertible map of F_p^d; refuses groups with more than 10^7 candidate matrices.
std::vector<LinearMap> enumerate_general_linear(const GroupSpec& spec);

}  // namespace zslab
