#include "zslab/seqfile.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include "zslab/error.hpp"

namespace zslab {

namespace {

std::vector<std::string_view> tokens(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<std::uint64_t> number(std::string_view s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

ElementSequence parse_sequence(std::istream& in, const Limits& limits) {
  std::optional<GroupSpec> spec;
  std::optional<ElementSequence> seq;
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    auto t = tokens(line);
    if (t.empty()) continue;
    if (!spec) {
      if (t.size() != 2) throw ParseError("header must be 'p d'", no);
      auto p = number(t[0]);
      auto d = number(t[1]);
      if (!p || !d) throw ParseError("header must hold two non-negative integers", no);
      if (*d > 64) throw ParseError("dimension " + std::to_string(*d) + " is too large", no);
      try {
        spec = GroupSpec::make(*p, static_cast<std::uint32_t>(*d), limits);
      } catch (const Error& e) {
        throw ParseError(e.what(), no);
      }
      seq.emplace(*spec);
      continue;
    }
    std::size_t n = t.size();
    std::uint64_t mult = 1;
    if (t.back().front() == 'x') {
      auto k = number(t.back().substr(1));
      if (!k || *k < 1 || *k > 0xffffffffu) throw ParseError("multiplicity must be 'xk' with k >= 1", no);
      mult = *k;
      --n;
    }
    if (n != spec->d()) {
      throw ParseError("expected " + std::to_string(spec->d()) + " coordinates, got " + std::to_string(n), no);
    }
    Coords c(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto v = number(t[i]);
      if (!v) throw ParseError("bad coordinate '" + std::string(t[i]) + "'", no);
      if (*v >= spec->p()) throw ParseError("coordinate " + std::to_string(*v) + " is not a residue mod " + std::to_string(spec->p()), no);
      c[i] = static_cast<std::uint32_t>(*v);
    }
    seq->add(spec->encode(c), static_cast<std::uint32_t>(mult));
  }
  if (!spec) throw ParseError("missing 'p d' header", no + 1);
  return std::move(*seq);
}

ElementSequence read_sequence_file(const std::string& path, const Limits& limits) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return parse_sequence(in, limits);
}

void write_sequence(std::ostream& out, const ElementSequence& a) {
  const GroupSpec& spec = a.spec();
  out << spec.p() << ' ' << spec.d() << '\n';
  for (const auto& e : a.entries()) {
    const Coords c = spec.decode(e.element);
    for (std::size_t i = 0; i < c.size(); ++i) out << (i ? " " : "") << c[i];
    if (e.multiplicity > 1) out << " x" << e.multiplicity;
    out << '\n';
  }
}

std::string format_sequence(const ElementSequence& a) {
  std::ostringstream ss;
  write_sequence(ss, a);
  return ss.str();
}

}  // namespace zslab
