#pragma once

// Sequence files: a header line "p d", then one point per line as d
// residues with an optional "xk" multiplicity. '#' starts a comment.

#include <iosfwd>
#include <string>

#include "zslab/group.hpp"
#include "zslab/sequence.hpp"

namespace zslab {

/// Throws ParseError with the 1-based line number.
ElementSequence parse_sequence(std::istream& in, const Limits& limits = {});
ElementSequence read_sequence_file(const std::string& path, const Limits& limits = {});

/// Canonical form: sorted by index, multiplicities merged.
void write_sequence(std::ostream& out, const ElementSequence& a);
std::string format_sequence(const ElementSequence& a);

}  // namespace zslab
