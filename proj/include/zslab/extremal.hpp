#pragma once

// Extremal zero-sum-free configurations in F_p^2 and F_p^3: the two
// line-stacking shapes for maximum sets in the plane, the stacked lower-bound
// construction, orbit classification at small p and the adding-lines check.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zslab/constants.hpp"
#include "zslab/sequence.hpp"

namespace zslab {

/// Coordinates are (x, y) = (coordinate 0, coordinate 1).
struct GrtConstruction {
  std::uint32_t p = 0;
  int variant = 1;
  ElementSequence set;
  std::uint64_t expected_size = 0;  // p + OL(F_p) - 2
  bool verified = false;            // zero-sum-free, checked exactly
  std::vector<Element> line_witness;  // y-values on x = 0
  // Variant 2: the two y-values missing on x = 1 and the extra point (2, y2).
  std::array<std::uint32_t, 2> omitted_y{};
  std::uint32_t extra_y = 0;
  std::uint64_t line_witnesses = 0;      // zero-sum-free sets of size OL(F_p) - 1 tried on x = 0
  std::uint64_t choices = 0;             // all (witness, omitted pair, y2)
  std::uint64_t side_condition_holds = 0;  // {line witness, y2 - r} zero-sum-free in F_p
  std::uint64_t shape_verifies = 0;        // the planar set itself zero-sum-free
  std::uint64_t shape_without_side_condition = 0;  // verifies although the side condition fails
};

/// Throws PreconditionError when ol_p is not OL(F_p) or the set fails to verify.
GrtConstruction construct_grt_config(std::uint32_t p, int variant, std::uint64_t ol_p);

struct StackedConstruction {
  ElementSequence set;
  std::uint64_t expected_size = 0;  // |lower witness| + p - 1
  bool verified = false;
};

/// Lower witness embedded in x_d = 0 plus the first p - 1 canonical points of x_d = 1.
StackedConstruction construct_stacked(std::uint32_t p, std::uint32_t d, const ElementSequence& lower_witness);

struct OrbitClass {
  std::vector<Element> representative;  // lexicographically least image
  std::uint64_t members = 0;            // enumerated sets in the orbit
  std::uint64_t orbit_size = 0;         // all images under GL(2, p)
  bool matches_variant1 = false;
  bool matches_variant2 = false;
};

struct Classification {
  std::uint32_t p = 0;
  std::uint64_t ol_p = 0;
  std::uint64_t max_size = 0;
  bool exhausted = false;
  bool restricted_to_e1 = false;  // only sets containing (1, 0) were enumerated
  std::uint64_t sets = 0;
  std::uint64_t nodes = 0;
  std::vector<OrbitClass> orbits;
  std::vector<std::string> deviations;
};

/// Maximum zero-sum-free subsets of F_p^2 up to invertible linear maps.
/// p = 2 is rejected (DomainError). For p >= 7 only sets through (1, 0)
/// are enumerated, which still meets every orbit.
Classification classify_max_zero_sum_free_F_p2(std::uint32_t p, std::uint64_t budget = 0);

/// Whether B1 + B2 covers the line x = 0, for B1 on x = b and B2 on x = p - b.
bool check_adding_lines(const ElementSequence& b1, const ElementSequence& b2, std::uint32_t b);

struct Olson3Report {
  std::uint32_t p = 0;
  double gamma = 0.0;
  ConstantValue ol1;
  ConstantValue ol2;
  ConstantValue ol3;
  std::uint64_t stacked_size = 0;  // certified zero-sum-free set size in F_p^3
  std::uint64_t lower_bound = 0;   // on OL(F_p^3)
  double linear_bound = 0.0;       // (2 + gamma) p
  std::uint64_t conjectured = 0;   // p + OL(F_p^2) - 1
};

Olson3Report olson3_experiment(std::uint32_t p, double gamma, std::uint64_t budget = 0);

}  // namespace zslab
