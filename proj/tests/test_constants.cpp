#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <thread>

#include "oracle.hpp"
#include "zslab/checkpoint.hpp"
#include "zslab/constants.hpp"
#include "zslab/error.hpp"
#include "zslab/sumset.hpp"

using namespace zslab;
namespace fs = std::filesystem;

namespace {

// Longest zero-sum-free sequence by plain recursion over non-decreasing index lists.
std::size_t naive_davenport_length(std::uint32_t p, std::uint32_t d) {
  std::uint32_t order = 1;
  for (std::uint32_t i = 0; i < d; ++i) order *= p;
  std::vector<oracle::Coords> cur;
  std::size_t best = 0;
  auto rec = [&](auto&& self, std::uint32_t from) -> void {
    best = std::max(best, cur.size());
    for (std::uint32_t x = from; x < order; ++x) {
      cur.push_back(oracle::coords_of(x, p, d));
      if (!oracle::subset_sums(cur, p).count(0)) self(self, x);
      cur.pop_back();
    }
  };
  rec(rec, 1);
  return best;
}

std::string temp_path(const std::string& name) {
  return (fs::temp_directory_path() / ("zslab_test_" + name + "_" + std::to_string(::getpid()))).string();
}

}  // namespace

TEST_CASE("Olson constants of F_p agree with a naive enumerator") {
  for (auto [p, want] : {std::pair{2u, 2u}, {3u, 2u}, {5u, 3u}, {7u, 4u}, {11u, 5u}}) {
    const auto spec = GroupSpec::make(p, 1);
    const auto c = olson_constant(spec);
    CHECK(c.exact);
    CHECK(c.value == want);
    CHECK(c.value == oracle::max_zero_sum_free_size(p, 1) + 1);
    CHECK(is_zero_sum_free(c.search.witness));
    CHECK(c.search.witness.length() == c.value - 1);
  }
  const auto s32 = GroupSpec::make(3, 2);
  CHECK(olson_constant(s32).value == oracle::max_zero_sum_free_size(3, 2) + 1);
}

TEST_CASE("Olson search witnesses") {
  auto r = max_zero_sum_free_set(GroupSpec::make(3, 1));
  CHECK(r.best_size == 1);
  CHECK(r.witness.expanded() == std::vector<Element>{Element{1}});
  r = max_zero_sum_free_set(GroupSpec::make(7, 1));
  CHECK(r.best_size == 3);
  CHECK(r.exhausted);
  CHECK(r.witness.distinct() == 3);
}

TEST_CASE("Davenport constants equal d(p-1)+1") {
  for (auto [p, d] : {std::pair{3u, 1u}, {5u, 1u}, {7u, 1u}, {11u, 1u}, {3u, 2u}, {5u, 2u}, {3u, 3u}}) {
    const auto c = davenport_constant(GroupSpec::make(p, d));
    CHECK(c.exact);
    CHECK(c.value == d * (p - 1) + 1);
    CHECK(is_zero_sum_free(c.search.witness));
  }
  CHECK(naive_davenport_length(3, 2) + 1 == davenport_constant(GroupSpec::make(3, 2)).value);
  CHECK(naive_davenport_length(5, 1) + 1 == davenport_constant(GroupSpec::make(5, 1)).value);
  const auto w = davenport_constant(GroupSpec::make(5, 1)).search.witness;
  CHECK(w.multiplicity(Element{1}) == 4);
}

TEST_CASE("shuffled branch order finds the same maximum") {
  for (auto [p, d] : {std::pair{7u, 1u}, {3u, 2u}, {5u, 2u}, {3u, 3u}}) {
    const auto spec = GroupSpec::make(p, d);
    const auto base = max_zero_sum_free_set(spec);
    for (std::uint64_t seed : {1ull, 2ull, 99ull}) {
      SearchOptions o;
      o.order_seed = seed;
      const auto r = max_zero_sum_free_set(spec, o);
      CHECK(r.exhausted);
      CHECK(r.best_size == base.best_size);
      CHECK_FALSE(r.symmetry);
      CHECK(is_zero_sum_free(r.witness));
    }
    SearchOptions sym;
    sym.symmetry = true;
    CHECK(max_zero_sum_free_set(spec, sym).best_size == base.best_size);
    SearchOptions dsh;
    dsh.order_seed = 5;
    if (d * (p - 1) <= 8) CHECK(longest_zero_sum_free_sequence(spec, dsh).best_size == d * (p - 1));
  }
}

TEST_CASE("threads give the same answer as the sequential search") {
  for (auto [p, d] : {std::pair{5u, 2u}, {3u, 3u}, {11u, 1u}}) {
    const auto spec = GroupSpec::make(p, d);
    const auto seq = max_zero_sum_free_set(spec);
    for (unsigned t : {2u, 4u}) {
      SearchOptions o;
      o.threads = t;
      const auto par = max_zero_sum_free_set(spec, o);
      CHECK(par.best_size == seq.best_size);
      CHECK(par.exhausted);
      CHECK(is_zero_sum_free(par.witness));
      CHECK(max_zero_sum_free_set(spec, o).witness == par.witness);
    }
    SearchOptions one;
    one.threads = 1;
    const auto again = max_zero_sum_free_set(spec, one);
    CHECK(again.witness == seq.witness);
    CHECK(again.nodes == seq.nodes);
  }
}

TEST_CASE("budget gives a certified lower bound") {
  SearchOptions o;
  o.budget = 50;
  const auto r = max_zero_sum_free_set(GroupSpec::make(5, 2), o);
  CHECK_FALSE(r.exhausted);
  CHECK(r.nodes <= 50);
  CHECK(is_zero_sum_free(r.witness));
  CHECK(r.witness.length() == r.best_size);
  const auto c = olson_constant(GroupSpec::make(5, 2), o);
  CHECK_FALSE(c.exact);
}

TEST_CASE("checkpoint text round trip") {
  Checkpoint c;
  c.p = 5;
  c.d = 2;
  c.mode = SearchMode::Davenport;
  c.best_size = 3;
  c.witness = {Element{1}, Element{1}, Element{7}};
  c.nodes = 12345;
  c.symmetry = true;
  c.order_seed = 77;
  c.open = {OpenBranch{0, {}, 4}, OpenBranch{1, {Element{2}, Element{9}}, 11}};
  std::stringstream ss;
  write_checkpoint(ss, c);
  CHECK(ss.str().rfind("ZSLAB-CKPT/1\n", 0) == 0);
  CHECK(read_checkpoint(ss) == c);

  const auto path = temp_path("ckpt");
  save_checkpoint(path, c);
  CHECK(load_checkpoint(path) == c);
  fs::remove(path);

  std::stringstream bad("ZSLAB-CKPT/1\n5 2 olson\nbest_size x\n");
  try {
    read_checkpoint(bad);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  std::stringstream magic("ZSLAB-CKPT/2\n");
  CHECK_THROWS_AS(read_checkpoint(magic), ParseError);
}

TEST_CASE("kill and resume reproduce size and node count") {
  const auto spec = GroupSpec::make(5, 2);
  for (SearchMode mode : {SearchMode::Olson, SearchMode::Davenport}) {
    auto run = [&](const SearchOptions& o) {
      return mode == SearchMode::Olson ? max_zero_sum_free_set(spec, o) : longest_zero_sum_free_sequence(spec, o);
    };
    const auto full = run({});
    for (std::uint64_t cut : {1ull, 37ull, 1000ull, 5000ull}) {
      const auto path = temp_path("resume");
      SearchOptions o;
      o.budget = cut;
      o.checkpoint_path = path;
      const auto part = run(o);
      REQUIRE_FALSE(part.exhausted);
      // a second interruption before finishing
      SearchOptions o2;
      o2.budget = cut;
      o2.checkpoint_path = path;
      auto mid = resume_search(spec, mode, path, o2);
      SearchOptions o3;
      o3.checkpoint_path = path;
      const auto done = mid.exhausted ? mid : resume_search(spec, mode, path, o3);
      CHECK(done.exhausted);
      CHECK(done.best_size == full.best_size);
      CHECK(done.nodes == full.nodes);
      CHECK(done.witness == full.witness);
      fs::remove(path);
    }
  }
}

TEST_CASE("stop flag interrupts and the resumed search finishes identically") {
  const auto spec = GroupSpec::make(3, 3);
  const auto full = longest_zero_sum_free_sequence(spec);
  for (int delay_us : {0, 200, 2000}) {
    const auto path = temp_path("stop");
    std::atomic<bool> stop{delay_us == 0};
    SearchOptions o;
    o.stop = &stop;
    o.checkpoint_path = path;
    std::thread killer([&] {
      std::this_thread::sleep_for(std::chrono::microseconds(delay_us));
      stop = true;
    });
    const auto part = longest_zero_sum_free_sequence(spec, o);
    killer.join();
    SearchResult done = part;
    if (!part.exhausted) done = resume_search(spec, SearchMode::Davenport, path);
    CHECK(done.best_size == full.best_size);
    CHECK(done.nodes == full.nodes);
    fs::remove(path);
  }
}

TEST_CASE("resume refuses a checkpoint for another group") {
  const auto path = temp_path("mismatch");
  SearchOptions o;
  o.budget = 10;
  o.checkpoint_path = path;
  max_zero_sum_free_set(GroupSpec::make(5, 2), o);
  CHECK_THROWS_AS(resume_search(GroupSpec::make(7, 2), SearchMode::Olson, path), PreconditionError);
  CHECK_THROWS_AS(resume_search(GroupSpec::make(5, 2), SearchMode::Davenport, path), PreconditionError);
  fs::remove(path);
}

TEST_CASE("enumeration of zero-sum-free sets") {
  const auto spec = GroupSpec::make(5, 1);
  const auto e = enumerate_zero_sum_free_sets(spec, 2);
  CHECK(e.exhausted);
  // pairs {a,b} of nonzero residues with a + b != 0
  CHECK(e.sets.size() == 4);
  for (const auto& s : e.sets) CHECK(is_zero_sum_free(ElementSequence::from_elements(spec, s)));
  const auto with1 = enumerate_zero_sum_free_sets(spec, 2, Element{1});
  for (const auto& s : with1.sets) CHECK(std::find(s.begin(), s.end(), Element{1}) != s.end());
}

TEST_CASE("Erdos-Heilbronn bound") {
  CHECK(eh_bound(2, 5, 11) == 7);
  CHECK(eh_bound(1, 6, 11) == 6);
  CHECK(eh_bound(1, 20, 11) == 11);
  CHECK(eh_bound(3, 10, 13) == 13);
  CHECK_THROWS_AS(eh_bound(0, 5, 11), InputError);
  CHECK_THROWS_AS(eh_bound(6, 5, 11), InputError);
}

TEST_CASE("restricted sumsets meet the Erdos-Heilbronn bound") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 200; ++t) {
    const std::uint32_t p = std::vector<std::uint32_t>{11, 13, 17, 19, 23, 29, 31}[rng() % 7];
    const auto spec = GroupSpec::make(p, 1);
    IndicatorSet s(spec);
    const std::size_t n = 1 + rng() % (p - 1);
    while (s.size() < n) s.insert(Element{static_cast<std::uint32_t>(rng() % p)});
    const auto a = ElementSequence::from_elements(spec, s.elements());
    for (std::uint64_t m = 1; m <= n; ++m) CHECK(subsums_exact(a, m).size() >= eh_bound(m, n, p));
  }
}
