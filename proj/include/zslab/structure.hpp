#pragma once

// Constructive versions of the incomplete-sequence structure results: rich
// hyperplanes, disjoint affine bases with half-space growth, the d = 1
// dilation split, dimension increment and the full decomposition with an
// exact verifier.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "zslab/indicator_set.hpp"
#include "zslab/linalg.hpp"
#include "zslab/sequence.hpp"
#include "zslab/sumset.hpp"

namespace zslab {

struct DecompositionParams {
  double alpha = 0.25;
  double beta = 0.5;
  double delta = 0.5;
  double w = 64.0;
  /// Unset: searched downward from alpha/2, halving while epsilon * p >= 2.
  std::optional<double> epsilon;
  /// Norm at or above which a dilated element counts as exceptional. Unset: 2/epsilon.
  std::optional<double> norm_cutoff;

  /// Throws InputError unless alpha, beta, delta, epsilon are in (0, 1],
  /// epsilon <= alpha and W >= 1.
  void validate() const;
  double epsilon_or_default() const { return epsilon.value_or(alpha / 2.0); }
};

/// floor(epsilon * p), robust to the rounding of epsilon = k/p.
std::uint64_t block_length(double epsilon, std::uint32_t p) noexcept;

struct AffineBasisExtraction {
  std::vector<std::vector<Element>> bases;
  ElementSequence remainder;
};

/// Greedy, canonical-order extraction of up to `count` pairwise disjoint affine bases.
AffineBasisExtraction extract_disjoint_affine_bases(const ElementSequence& a, std::size_t count);

enum class GrowthStop { HalfSpace, PoolExhausted, StepCap, Concentrated };
const char* to_string(GrowthStop stop) noexcept;

struct HalfSpaceGrowth {
  IndicatorSet grown;
  std::vector<Element> used;           // a'_0, a_0, a'_1, a_1, ...
  std::vector<std::size_t> sizes;      // |E_i| before each round, then the final size
  std::vector<std::size_t> gains;      // per round
  std::size_t rounds = 0;
  GrowthStop stop = GrowthStop::HalfSpace;
  std::optional<ConcentratedHyperplane> concentration;
};

/// E_{i+1} = (a'_i + E_i) u (a_i + E_i), each round consuming two pool
/// elements (a'_i is the canonically first remaining one), until |E| > p^d/2,
/// fewer than two pool elements remain, step_cap rounds have run, or a
/// concentrated hyperplane is reported.
HalfSpaceGrowth grow_to_half_space(IndicatorSet seed, const ElementSequence& pool, double w,
                                   std::size_t step_cap);

struct RichHyperplane {
  AffineHyperplane hyperplane;
  AffineFlat flat;
  std::uint64_t count = 0;
};

enum class CompletenessRoute { Growth, ExactScan };
const char* to_string(CompletenessRoute route) noexcept;

/// m*A = F_p^d, checked exactly.
struct CompletenessWitness {
  std::uint64_t m = 0;
  CompletenessRoute route = CompletenessRoute::ExactScan;
  std::size_t e_size = 0;  // growth route: final |E_k| and |F_l|
  std::size_t f_size = 0;
  std::size_t bases = 0;
  std::size_t rounds = 0;
};

struct Inconclusive {
  std::string stage;
  std::string reason;
  std::uint64_t best_hyperplane_count = 0;
  double best_growth_fraction = 0.0;  // largest |E|/p^d reached
  std::vector<std::string> notes;
};

using RichHyperplaneResult = std::variant<RichHyperplane, CompletenessWitness, Inconclusive>;

struct RichHyperplaneOptions {
  /// Skip both completeness routes; for callers that already know m*A != F_p^d for m <= beta*p.
  bool skip_completeness = false;
};

/// Either m*A = F_p^d for some m <= beta*p, or an affine hyperplane holds
/// ceil(epsilon*p) elements of A. Tries the two-sided growth construction,
/// then an exact scan of m*A for m <= beta*p, then the hyperplane scan.
/// Requires |A| >= delta*p.
RichHyperplaneResult find_rich_hyperplane(const ElementSequence& a, const DecompositionParams& params,
                                          const RichHyperplaneOptions& options = {});

struct DilationDecomposition {
  std::uint32_t b = 1;
  ElementSequence flat;   // the large-norm remainder of b*A
  ElementSequence sharp;  // sum of norms < p
  std::uint64_t sharp_norm_sum = 0;
  bool meets_theorem_bound = false;  // |flat| <= p^(12/13)
};

struct CompleteSequence {
  std::size_t subsum_count = 0;
};

using D1Classification = std::variant<DilationDecomposition, CompleteSequence>;

/// d = 1. For each b != 0, b*A is split greedily in increasing norm (ties:
/// smaller residue) while the norm sum stays below p. Picks the b with the
/// fewest leftover elements, then the smallest norm sum, then the orientation
/// whose sharp part has a nonnegative signed sum, then the smallest b.
D1Classification classify_d1(const ElementSequence& a);

/// Certifies v + (H1 + H2) inside m1*A1 + m2*A2 from m1*A1 containing a
/// translate of H1 and m2*pi_{H1c}(A2) containing a translate of H2 <= H1c.
/// Every precondition and the result are checked exactly; a failing clause
/// throws PreconditionError naming it.
AffineFlat dimension_increment(const ElementSequence& a1, std::uint64_t m1, const Subspace& h1,
                               const ElementSequence& a2, std::uint64_t m2, const Subspace& h1c,
                               const Subspace& h2);

struct Decomposition {
  ElementSequence a0;
  std::vector<ElementSequence> blocks;
  Subspace h;
  std::uint64_t m_witness = 0;
  Element translate_witness;
  double epsilon = 0.0;  // block length is floor(epsilon * p)
  std::string route;     // "hyperplane-cover", "recursive" or "line"
  std::vector<std::string> notes;
};

using DecomposeResult = std::variant<Decomposition, CompletenessWitness, Inconclusive>;

/// Either a verified m <= beta*p with m*A = F_p^d, or a verified partition
/// A = A_0 u A_1 u ... u A_l with |A_0| <= alpha*p, |A_i| = floor(epsilon*p),
/// every A_i inside a translate of H and m*A_0 containing a translate of H.
/// Returns Inconclusive with diagnostics when the construction does not go
/// through at this p; never returns an unverified decomposition.
DecomposeResult decompose(const ElementSequence& a, const DecompositionParams& params);

struct ClauseCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerificationReport {
  std::vector<ClauseCheck> clauses;
  bool passed() const;
  const ClauseCheck* failed_clause() const;
};

VerificationReport verify_decomposition(const ElementSequence& a, const Decomposition& d,
                                        const DecompositionParams& params);

}  // namespace zslab
