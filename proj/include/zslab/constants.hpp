#pragma once

// Exact Olson and Davenport constants of F_p^d by depth-first branch and
// bound over zero-sum-free sets / non-decreasing sequences.

#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zslab/checkpoint.hpp"
#include "zslab/group.hpp"
#include "zslab/sequence.hpp"

namespace zslab {

struct SearchOptions {
  std::uint64_t budget = 0;  // nodes for this invocation, 0 = unlimited
  /// Fix the smallest chosen element to e_1. Unset: on for d = 1, off otherwise.
  std::optional<bool> symmetry;
  unsigned threads = 1;
  std::uint32_t split_depth = 2;
  /// Explore candidates in a shuffled order instead of canonical index order.
  std::optional<std::uint64_t> order_seed;
  std::string checkpoint_path;  // empty: never written
  std::uint64_t checkpoint_every = std::uint64_t{1} << 20;
  const std::atomic<bool>* stop = nullptr;
};

struct SearchResult {
  GroupSpec spec;
  SearchMode mode = SearchMode::Olson;
  std::uint64_t best_size = 0;
  ElementSequence witness;
  bool exhausted = false;
  std::uint64_t nodes = 0;
  bool symmetry = false;
  std::optional<std::uint64_t> order_seed;
};

/// Largest zero-sum-free subset of F_p^d.
SearchResult max_zero_sum_free_set(const GroupSpec& spec, const SearchOptions& options = {});
/// Longest zero-sum-free sequence of F_p^d.
SearchResult longest_zero_sum_free_sequence(const GroupSpec& spec, const SearchOptions& options = {});
/// Continues a checkpointed search. The file must describe `spec` and `mode`.
SearchResult resume_search(const GroupSpec& spec, SearchMode mode, const std::string& path,
                           const SearchOptions& options = {});

struct ConstantValue {
  std::uint64_t value = 0;  // best_size + 1; a lower bound unless exact
  bool exact = false;
  SearchResult search;
};

ConstantValue olson_constant(const GroupSpec& spec, const SearchOptions& options = {});
ConstantValue davenport_constant(const GroupSpec& spec, const SearchOptions& options = {});

struct SetEnumeration {
  std::vector<std::vector<Element>> sets;  // sorted, each sorted
  bool exhausted = false;
  std::uint64_t nodes = 0;
};

/// All zero-sum-free subsets of exactly `size` elements, optionally only
/// those containing `must_contain`.
SetEnumeration enumerate_zero_sum_free_sets(const GroupSpec& spec, std::uint64_t size,
                                            std::optional<Element> must_contain = std::nullopt,
                                            std::uint64_t budget = 0);

/// min(p, m*n - m^2 + 1); requires 1 <= m <= n.
std::uint64_t eh_bound(std::uint64_t m, std::uint64_t n, std::uint64_t p);

}  // namespace zslab
