#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "zslab/indicator_set.hpp"
#include "zslab/linalg.hpp"
#include "zslab/sequence.hpp"

namespace zslab {

/// {x + y : x in X, y in Y}; empty when either operand is empty.
IndicatorSet sumset(const IndicatorSet& x, const IndicatorSet& y);

/// S_A: sums over all nonempty subsequences, multiplicities respected.
/// Copies of a repeated element are folded in one at a time.
IndicatorSet subsums_all(const ElementSequence& a);

/// m*A: sums over subsequences of exactly m elements; 1 <= m <= |A|.
IndicatorSet subsums_exact(const ElementSequence& a, std::uint64_t m);

/// Layers 0..max_m of the (count, sum) table: layer t is t*A, layer 0 is {0}.
/// Layers with t > |A| are empty.
std::vector<IndicatorSet> subsums_layers(const ElementSequence& a, std::uint64_t max_m);

/// Smallest m in [1, max_m] with m*A = F_p^d.
std::optional<std::uint64_t> first_complete_layer(const ElementSequence& a, std::uint64_t max_m);

bool is_zero_sum_free(const ElementSequence& a);
bool is_incomplete(const ElementSequence& a);
bool is_m_incomplete(const ElementSequence& a, std::uint64_t m);

/// Some v with v + H contained in s, if any. The returned v is the canonical
/// coset representative of the first (lowest representative) such coset.
std::optional<Element> find_contained_coset(const IndicatorSet& s, const Subspace& h);

struct GrowthWitness {
  Element a;
  std::size_t gain = 0;  // |(a + Y) \ (a_prev + Y)|
};

struct ConcentratedHyperplane {
  AffineHyperplane hyperplane;
  std::uint64_t count = 0;  // elements of A on it, with multiplicity
};

using GrowthOutcome = std::variant<GrowthWitness, ConcentratedHyperplane>;

/// One step of the translate-growth dichotomy. Scans every distinct a in A for
/// the largest gain |(a + Y) \ (a_prev + Y)| (ties: smallest index). A gain of
/// at least W|Y|/(16p) is returned as growth; otherwise an affine hyperplane
/// holding more than |A|/(4W) elements of A (counted with multiplicity) is
/// reported, preferring hyperplanes through a_prev.
///
/// Requires 0 < |Y| <= p^d/2 and a_prev in A. Failing both arms throws
/// InternalError.
GrowthOutcome growth_step(const ElementSequence& a, const IndicatorSet& y, Element a_prev, double w);

/// True when gain meets the growth threshold W|Y|/(16p).
bool meets_growth_threshold(std::size_t gain, std::size_t y_size, std::uint32_t p, double w) noexcept;

}  // namespace zslab
