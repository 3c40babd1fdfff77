#include "zslab/checkpoint.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "zslab/error.hpp"

namespace zslab {

const char* to_string(SearchMode mode) noexcept {
  return mode == SearchMode::Olson ? "olson" : "davenport";
}

void write_checkpoint(std::ostream& out, const Checkpoint& c) {
  out << kCheckpointMagic << '\n';
  out << c.p << ' ' << c.d << ' ' << to_string(c.mode) << '\n';
  out << "best_size " << c.best_size << '\n';
  out << "witness";
  for (Element x : c.witness) out << ' ' << x.index;
  out << '\n';
  out << "nodes " << c.nodes << '\n';
  out << "symmetry " << (c.symmetry ? 1 : 0) << '\n';
  if (c.order_seed) {
    out << "order seed " << *c.order_seed << '\n';
  } else {
    out << "order identity\n";
  }
  for (const auto& b : c.open) {
    out << "open " << b.base;
    for (Element x : b.path) out << ' ' << x.index;
    out << " ; next " << b.next << '\n';
  }
}

namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::string& line) {
    if (!std::getline(in_, line)) return false;
    ++number_;
    return true;
  }
  std::string require(const char* what) {
    std::string line;
    if (!next(line)) throw ParseError(std::string("checkpoint truncated before ") + what, number_ + 1);
    return line;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, number_); }
  std::size_t number() const { return number_; }

 private:
  std::istream& in_;
  std::size_t number_ = 0;
};

template <class T>
T read_value(std::istringstream& ss, LineReader& r, const char* what) {
  T v{};
  if (!(ss >> v)) r.fail(std::string("expected ") + what);
  return v;
}

void expect_key(std::istringstream& ss, LineReader& r, const char* key) {
  std::string k;
  if (!(ss >> k) || k != key) r.fail(std::string("expected '") + key + "'");
}

void expect_end(std::istringstream& ss, LineReader& r) {
  std::string rest;
  if (ss >> rest) r.fail("unexpected token '" + rest + "'");
}

}  // namespace

Checkpoint read_checkpoint(std::istream& in) {
  LineReader r(in);
  Checkpoint c;
  if (r.require("magic") != kCheckpointMagic) r.fail("not a checkpoint (bad magic)");

  {
    std::istringstream ss(r.require("spec line"));
    c.p = read_value<std::uint32_t>(ss, r, "p");
    c.d = read_value<std::uint32_t>(ss, r, "d");
    std::string mode = read_value<std::string>(ss, r, "mode");
    if (mode == "olson") {
      c.mode = SearchMode::Olson;
    } else if (mode == "davenport") {
      c.mode = SearchMode::Davenport;
    } else {
      r.fail("unknown mode '" + mode + "'");
    }
    expect_end(ss, r);
  }
  {
    std::istringstream ss(r.require("best_size"));
    expect_key(ss, r, "best_size");
    c.best_size = read_value<std::uint64_t>(ss, r, "best size");
    expect_end(ss, r);
  }
  {
    std::istringstream ss(r.require("witness"));
    expect_key(ss, r, "witness");
    std::uint32_t i;
    while (ss >> i) c.witness.push_back(Element{i});
    if (!ss.eof()) r.fail("bad witness index");
    if (c.witness.size() != c.best_size) r.fail("witness length differs from best_size");
  }
  {
    std::istringstream ss(r.require("nodes"));
    expect_key(ss, r, "nodes");
    c.nodes = read_value<std::uint64_t>(ss, r, "node count");
    expect_end(ss, r);
  }
  {
    std::istringstream ss(r.require("symmetry"));
    expect_key(ss, r, "symmetry");
    int s = read_value<int>(ss, r, "0 or 1");
    if (s != 0 && s != 1) r.fail("symmetry must be 0 or 1");
    c.symmetry = s == 1;
    expect_end(ss, r);
  }
  {
    std::istringstream ss(r.require("order"));
    expect_key(ss, r, "order");
    std::string kind = read_value<std::string>(ss, r, "identity or seed");
    if (kind == "seed") {
      c.order_seed = read_value<std::uint64_t>(ss, r, "seed");
    } else if (kind != "identity") {
      r.fail("unknown order '" + kind + "'");
    }
    expect_end(ss, r);
  }
  std::string line;
  while (r.next(line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    expect_key(ss, r, "open");
    OpenBranch b;
    b.base = read_value<std::uint32_t>(ss, r, "base depth");
    std::string tok;
    for (;;) {
      if (!(ss >> tok)) r.fail("open branch lacks '; next'");
      if (tok == ";") break;
      try {
        std::size_t used = 0;
        unsigned long v = std::stoul(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        b.path.push_back(Element{static_cast<std::uint32_t>(v)});
      } catch (const std::logic_error&) {
        r.fail("bad path index '" + tok + "'");
      }
    }
    expect_key(ss, r, "next");
    b.next = read_value<std::uint32_t>(ss, r, "next position");
    expect_end(ss, r);
    if (b.base > b.path.size()) r.fail("base depth exceeds path length");
    c.open.push_back(std::move(b));
  }
  return c;
}

void save_checkpoint(const std::string& path, const Checkpoint& c) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw InputError("cannot write checkpoint " + tmp);
    write_checkpoint(out, c);
    out.flush();
    if (!out) throw InputError("failed writing checkpoint " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw InputError("cannot move checkpoint into " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open checkpoint " + path);
  return read_checkpoint(in);
}

}  // namespace zslab
