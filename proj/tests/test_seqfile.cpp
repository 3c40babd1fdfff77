#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "zslab/error.hpp"
#include "zslab/seqfile.hpp"

using namespace zslab;

namespace {

ElementSequence parse(const std::string& text) {
  std::istringstream in(text);
  return parse_sequence(in);
}

int error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.line;
  }
  return -1;
}

}  // namespace

TEST_CASE("parse a file with comments, blanks and multiplicities") {
  const auto a = parse("# two lines\n5 2\n\n1 2   # a point\n0 3 x4\n1 2 x2\n");
  const auto& s = a.spec();
  CHECK(s.p() == 5);
  CHECK(s.d() == 2);
  CHECK(a.length() == 7);
  CHECK(a.multiplicity(s.encode(Coords{1, 2})) == 3);
  CHECK(a.multiplicity(s.encode(Coords{0, 3})) == 4);
}

TEST_CASE("writing is canonical and round-trips") {
  const std::string messy = "5 2\n4 4\n1 2\n0 3 x4\n1 2 x2\n";
  const auto a = parse(messy);
  const std::string canon = format_sequence(a);
  CHECK(canon == "5 2\n1 2 x3\n0 3 x4\n4 4\n");
  CHECK(parse(canon) == a);
  CHECK(format_sequence(parse(canon)) == canon);
  CHECK(format_sequence(parse("7 1\n")) == "7 1\n");
}

TEST_CASE("parse errors carry the offending line") {
  CHECK(error_line("5\n") == 1);
  CHECK(error_line("# c\n6 2\n") == 2);
  CHECK(error_line("5 2\n1 2\n1\n") == 3);
  CHECK(error_line("5 2\n1 5\n") == 2);
  CHECK(error_line("5 2\n1 2 x0\n") == 2);
  CHECK(error_line("5 2\n1 2 y3\n") == 2);
  CHECK(error_line("5 2\n1 -2\n") == 2);
  CHECK(error_line("# nothing\n\n") == 3);
  CHECK(error_line("5 2\n1 2 x3 4\n") == 2);
  try {
    parse("5 2\n1 2\n9 9\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).rfind("line 3:", 0) == 0);
  }
}

TEST_CASE("oversized groups are rejected at the header") {
  CHECK(error_line("131 4\n") == 1);
  std::istringstream in("131 4\n");
  CHECK_NOTHROW(parse_sequence(in, Limits{std::uint64_t{1} << 29}));
  CHECK_THROWS_AS(read_sequence_file("/nonexistent/zslab/file"), InputError);
}
