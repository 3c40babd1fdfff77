#pragma once

// Text checkpoint for the exhaustive searches:
//
//   ZSLAB-CKPT/1
//   <p> <d> <olson|davenport>
//   best_size <n>
//   witness <i1> <i2> ...
//   nodes <n>
//   symmetry <0|1>
//   order <identity|seed N>
//   open <base> <i1> ... ; next <position>     (one line per unfinished branch)
//
// Indices are canonical element indices. `next` is a position in the branch
// order; `base` is the depth above which siblings are not revisited.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "zslab/group.hpp"

namespace zslab {

enum class SearchMode { Olson, Davenport };
const char* to_string(SearchMode mode) noexcept;

struct OpenBranch {
  std::uint32_t base = 0;
  std::vector<Element> path;
  std::uint32_t next = 0;
  friend bool operator==(const OpenBranch&, const OpenBranch&) = default;
};

struct Checkpoint {
  std::uint32_t p = 2;
  std::uint32_t d = 1;
  SearchMode mode = SearchMode::Olson;
  std::uint64_t best_size = 0;
  std::vector<Element> witness;
  std::uint64_t nodes = 0;
  bool symmetry = false;
  std::optional<std::uint64_t> order_seed;
  std::vector<OpenBranch> open;
  friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

inline constexpr const char* kCheckpointMagic = "ZSLAB-CKPT/1";

void write_checkpoint(std::ostream& out, const Checkpoint& c);
/// Throws ParseError carrying the offending line number.
Checkpoint read_checkpoint(std::istream& in);

/// Writes to a sibling temporary file and renames it into place.
void save_checkpoint(const std::string& path, const Checkpoint& c);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace zslab
