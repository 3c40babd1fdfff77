#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "zslab/error.hpp"
#include "zslab/extremal.hpp"
#include "zslab/linalg.hpp"
#include "zslab/sumset.hpp"

using namespace zslab;

namespace {

std::uint64_t ol1(std::uint32_t p) { return olson_constant(GroupSpec::make(p, 1)).value; }

ElementSequence on_line(const GroupSpec& s, std::uint32_t x, const std::vector<std::uint32_t>& ys) {
  ElementSequence a(s);
  for (std::uint32_t y : ys) a.add(s.encode(Coords{x, y}));
  return a;
}

std::vector<std::uint32_t> random_subset(std::uint32_t p, std::size_t n, std::mt19937_64& rng) {
  std::vector<std::uint32_t> all(p);
  for (std::uint32_t i = 0; i < p; ++i) all[i] = i;
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(n);
  return all;
}

}  // namespace

TEST_CASE("first shape verifies at the stated size") {
  for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
    const auto g = construct_grt_config(p, 1, ol1(p));
    CHECK(g.verified);
    CHECK(g.set.length() == p + ol1(p) - 2);
    CHECK(is_zero_sum_free(g.set));
    const auto s = g.set.spec();
    std::uint64_t on0 = 0, on1 = 0;
    for (Element x : g.set.expanded()) (s.coord(x, 0) == 0 ? on0 : on1)++;
    CHECK(on0 == ol1(p) - 1);
    CHECK(on1 == p - 1);
  }
  CHECK_THROWS_AS(construct_grt_config(5, 1, 4), PreconditionError);
  CHECK_THROWS_AS(construct_grt_config(5, 3, 3), InputError);
}

TEST_CASE("second shape and its side condition") {
  for (std::uint32_t p : {5u, 13u}) {
    const auto g = construct_grt_config(p, 2, ol1(p));
    CHECK(g.verified);
    CHECK(g.set.length() == p + ol1(p) - 2);
    CHECK(is_zero_sum_free(g.set));
    CHECK(g.shape_without_side_condition == 0);
    CHECK(g.side_condition_holds == g.shape_verifies);
    const auto s = g.set.spec();
    std::uint64_t on2 = 0;
    for (Element x : g.set.expanded()) on2 += s.coord(x, 0) == 2;
    CHECK(on2 == 1);
  }
  // no planar set of this shape is zero-sum-free at p = 7 or 11
  for (std::uint32_t p : {7u, 11u}) CHECK_THROWS_AS(construct_grt_config(p, 2, ol1(p)), PreconditionError);
}

TEST_CASE("second shape counts agree with a direct oracle at p = 5") {
  const std::uint32_t p = 5;
  const auto g = construct_grt_config(p, 2, ol1(p));
  std::uint64_t ok = 0, total = 0;
  for (std::uint32_t a = 1; a < p; ++a) {
    for (std::uint32_t b = a + 1; b < p; ++b) {
      if (oracle::subset_sums({{a}, {b}}, p).count(0)) continue;
      for (std::uint32_t r1 = 0; r1 < p; ++r1) {
        for (std::uint32_t r2 = r1 + 1; r2 < p; ++r2) {
          for (std::uint32_t y2 = 0; y2 < p; ++y2) {
            std::vector<oracle::Coords> pts{{0, a}, {0, b}, {2, y2}};
            for (std::uint32_t y = 0; y < p; ++y)
              if (y != r1 && y != r2) pts.push_back({1, y});
            ++total;
            ok += !oracle::subset_sums(pts, p).count(0);
          }
        }
      }
    }
  }
  CHECK(g.choices == total);
  CHECK(g.shape_verifies == ok);
}

TEST_CASE("stacked construction") {
  const auto s1 = GroupSpec::make(3, 1);
  auto st = construct_stacked(3, 2, ElementSequence::from_elements(s1, std::vector<Element>{Element{1}}));
  CHECK(st.verified);
  CHECK(st.set.length() == 3);
  const auto s5 = GroupSpec::make(5, 1);
  st = construct_stacked(5, 2, ElementSequence::from_elements(s5, std::vector<Element>{Element{1}, Element{2}}));
  CHECK(st.verified);
  CHECK(st.set.length() == 6);
  const auto w32 = max_zero_sum_free_set(GroupSpec::make(3, 2));
  st = construct_stacked(3, 3, w32.witness);
  CHECK(st.verified);
  CHECK(st.set.length() == 3 + (w32.best_size + 1) - 2);
  CHECK(is_zero_sum_free(st.set));
  const auto bad = ElementSequence::from_elements(s5, std::vector<Element>{Element{1}, Element{4}});
  CHECK_THROWS_AS(construct_stacked(5, 2, bad), PreconditionError);
}

TEST_CASE("classification of maximum sets") {
  CHECK_THROWS_AS(classify_max_zero_sum_free_F_p2(2), DomainError);
  const auto c3 = classify_max_zero_sum_free_F_p2(3);
  CHECK(c3.exhausted);
  CHECK(c3.max_size == 3);
  CHECK(c3.orbits.size() == 1);

  const auto c5 = classify_max_zero_sum_free_F_p2(5);
  CHECK(c5.exhausted);
  CHECK(c5.max_size == 6);
  std::uint64_t members = 0;
  for (const auto& o : c5.orbits) {
    members += o.members;
    CHECK(o.members == o.orbit_size);  // all sets were enumerated
    CHECK(is_zero_sum_free(ElementSequence::from_elements(GroupSpec::make(5, 2), o.representative)));
  }
  CHECK(members == c5.sets);
  // every zero-sum-free 6-set of F_5^2, counted by the oracle
  std::uint64_t count = 0;
  std::vector<oracle::Coords> pts;
  for (std::uint32_t i = 1; i < 25; ++i) pts.push_back(oracle::coords_of(i, 5, 2));
  std::vector<int> pick(24, 0);
  std::fill(pick.end() - 6, pick.end(), 1);
  do {
    std::vector<oracle::Coords> s;
    for (int i = 0; i < 24; ++i)
      if (pick[i]) s.push_back(pts[i]);
    count += !oracle::subset_sums(s, 5).count(0);
  } while (std::next_permutation(pick.begin(), pick.end()));
  CHECK(count == c5.sets);
}

TEST_CASE("orbit buckets are closed under random maps") {
  const auto s = GroupSpec::make(5, 2);
  const auto c5 = classify_max_zero_sum_free_F_p2(5);
  const auto maps = enumerate_general_linear(s);
  std::mt19937_64 rng(51);
  auto key = [&](const std::vector<Element>& set) {
    std::vector<Element> best;
    for (const auto& m : maps) {
      auto img = apply_map(m, ElementSequence::from_elements(s, set)).expanded();
      if (best.empty() || img < best) best = img;
    }
    return best;
  };
  for (const auto& o : c5.orbits) {
    CHECK(key(o.representative) == o.representative);
    for (int t = 0; t < 5; ++t) {
      const auto& m1 = maps[rng() % maps.size()];
      const auto& m2 = maps[rng() % maps.size()];
      const auto img = apply_map(m1.compose(m2), ElementSequence::from_elements(s, o.representative)).expanded();
      CHECK(key(img) == o.representative);
    }
  }
}

TEST_CASE("adding lines") {
  const std::uint32_t p = 5;
  const auto s = GroupSpec::make(p, 2);
  CHECK(check_adding_lines(on_line(s, 2, {0, 1, 2, 3, 4}), on_line(s, 3, {1}), 2));
  CHECK_FALSE(check_adding_lines(on_line(s, 2, {0}), on_line(s, 3, {0}), 2));
  CHECK_FALSE(check_adding_lines(on_line(s, 1, {0, 1}), on_line(s, 4, {0, 1}), 1));
  CHECK_THROWS_AS(check_adding_lines(on_line(s, 1, {0}), on_line(s, 3, {0}), 1), InputError);
  CHECK_THROWS_AS(check_adding_lines(on_line(s, 0, {0}), on_line(s, 0, {0}), 0), InputError);
}

TEST_CASE("adding lines covers the axis whenever the sizes exceed p") {
  std::mt19937_64 rng(52);
  for (int t = 0; t < 300; ++t) {
    const std::uint32_t p = std::vector<std::uint32_t>{5, 7, 11}[rng() % 3];
    const auto s = GroupSpec::make(p, 2);
    const std::uint32_t b = 1 + static_cast<std::uint32_t>(rng() % (p - 1));
    const std::size_t n1 = 1 + rng() % p;
    const std::size_t n2 = p + 1 - n1 + rng() % (n1);
    if (n2 > p || n2 == 0) continue;
    CHECK(check_adding_lines(on_line(s, b, random_subset(p, n1, rng)), on_line(s, p - b, random_subset(p, n2, rng)), b));
  }
}

TEST_CASE("olson3 at p = 3") {
  const auto r = olson3_experiment(3, 1.0);
  CHECK(r.ol1.exact);
  CHECK(r.ol2.exact);
  CHECK(r.ol3.exact);
  CHECK(r.ol1.value == 2);
  CHECK(r.ol3.value == oracle::max_zero_sum_free_size(3, 3) + 1);
  CHECK(r.conjectured == 3 + r.ol2.value - 1);
  CHECK(r.linear_bound == doctest::Approx(9.0));
  CHECK(r.stacked_size + 1 <= r.ol3.value);
}
